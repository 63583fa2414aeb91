#pragma once

#include <optional>

namespace cheb {

/// Optional exceptional zero. Stored through 1 - beta1 so that zeros
/// extremely close to 1 stay representable.
struct SiegelData {
    std::optional<double> one_minus_beta;
    int theta1 = 0;  // in {-1, 0, 1}; 0 exactly when no zero is supplied

    bool present() const { return one_minus_beta.has_value(); }
    double beta1() const { return 1.0 - *one_minus_beta; }
    /// lambda1 = (1 - beta1) log Q.
    double lambda1(double log_Q) const { return *one_minus_beta * log_Q; }

    /// Throws DomainError unless beta1 lies in (1/2, 1) and theta1 matches presence.
    void validate() const;

    static SiegelData none() { return {}; }
    static SiegelData from_beta(double beta1, int theta1 = 1);
    static SiegelData from_lambda(double lambda1, double log_Q, int theta1 = 1);
};

} // namespace cheb
