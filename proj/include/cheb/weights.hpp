#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cheb {

/// Parameters (x, epsilon, ell) of the smoothing weight, with x held as log x
/// so that the very large x of the parameter choices stay representable.
struct WeightParams {
    double log_x = 0.0;
    double epsilon = 0.1;
    int ell = 2;

    /// A = epsilon / (2 ell log x); 2 ell A = epsilon / log x.
    double A() const { return epsilon / (2.0 * ell * log_x); }
    double x() const;
    /// Throws DomainError unless x >= 3, 0 < epsilon < 1/4 and ell >= 1.
    void validate() const;

    static WeightParams from_x(double x, double epsilon, int ell);
    /// ell = 4 c_ZDE n_K and epsilon = 8 ell x^{-1/(8 ell)}.
    static WeightParams from_parameter_choices(double log_x, int n_K, int c_ZDE);
};

/// Two-sided Laplace transform F(z) = int f(t) e^{-zt} dt in closed form.
std::complex<double> laplace_F(std::complex<double> z, const WeightParams& p);
/// Principal log F(z), usable when F itself over- or underflows.
std::complex<double> log_laplace_F(std::complex<double> z, const WeightParams& p);

/// (e^u - 1) / u, with a 10-term Taylor series for |u| < 1e-4.
std::complex<double> expm1_ratio(std::complex<double> u);
std::complex<double> expm1_ratio_series(std::complex<double> u);
std::complex<double> expm1_ratio_direct(std::complex<double> u);

/// The weight f(t) as a piecewise polynomial.
///
/// f(t) = H((1 + 2 ell A - t) / 2A) - H((1/2 - t) / 2A), where H is the
/// Irwin-Hall CDF of ell uniforms: the box on [1/2, 1 + 2 ell A] convolved
/// with ell uniform densities on [-2A, 0]. H is stored per unit piece in
/// Bernstein form (coefficients derived exactly) and evaluated by de
/// Casteljau. Above kMaxDegree only F is available.
class WeightFunction {
public:
    static constexpr int kMaxDegree = 64;

    explicit WeightFunction(WeightParams p);

    const WeightParams& params() const { return p_; }
    bool has_f() const { return !bern_.empty(); }
    /// Throws StateError when ell exceeds kMaxDegree.
    double f(double t) const;
    /// Irwin-Hall CDF of ell uniforms on [0, 1].
    double irwin_hall_cdf(double y) const;
    double support_lo() const { return 0.5 - p_.epsilon / p_.log_x; }
    double support_hi() const { return 1.0 + p_.epsilon / p_.log_x; }
    /// Points where f changes polynomial piece, ascending.
    std::vector<double> breakpoints() const;

    std::complex<double> F(std::complex<double> z) const { return laplace_F(z, p_); }
    /// int f(t) e^{-zt} dt by adaptive quadrature over the polynomial pieces.
    std::complex<double> F_quadrature(std::complex<double> z, double rel_tol = 1e-12) const;

private:
    WeightParams p_;
    std::vector<std::vector<double>> bern_;
};

struct WeightGrid {
    std::vector<double> sigmas{0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    std::vector<double> ts{0, 0.5, -0.5, 1, -1, 3, -3, 10, -10, 30, -30, 100, -100, 300, -300, 1000, -1000};
    std::vector<double> line_ts{0, 0.5, 1, 2, 5, 10, 30, 100, 300, 1000};
    std::vector<double> sigma_primes{0.76, 0.8, 0.85, 0.9, 0.95, 0.99, 1.0};
};

struct BoundCheck {
    std::string name;
    int points = 0;
    int violations = 0;
    double worst_log_margin = 0;  // min over points of log(bound) - log|F|
    std::string worst_at;
};

struct WeightReport {
    WeightParams params;
    std::vector<BoundCheck> checks;
    double F0 = 0, F0_expected = 0;
    bool F0_in_range = false;
    double mainterm_C = 0;  // smallest C with residual <= C (eps main + sqrt(x)/log x)
    std::string mainterm_worst_at;
    double mainterm_C_limit = 5.0;
    bool pass = false;
};

/// Checks the transform bounds on a grid of s = sigma + i t, the line
/// sigma = -1/2, and the two-sign main-term expansion for 3/4 < sigma' <= 1.
WeightReport verify_bounds(const WeightParams& p, const WeightGrid& grid = {}, double mainterm_C_limit = 5.0);

} // namespace cheb
