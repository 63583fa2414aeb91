#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cheb/arith.hpp"
#include "cheb/rational.hpp"

namespace cheb {

enum class SieveKind { Upper, Lower };

std::string to_string(SieveKind k);

struct SieveSpec {
    double z = 2.0;
    double R = 2.0;
    SieveKind kind = SieveKind::Upper;
    double kappa = 1.0;
    double K_const = 2.0;
    double beta = 10.0;
    std::vector<u64> support;  // primes < z

    double s() const;
    /// Throws ConfigError unless s >= 1, beta >= 1 and every support prime is < z.
    void validate() const;
};

/// d -> lambda_d on squarefree d composed of support primes.
struct SieveWeights {
    SieveKind kind = SieveKind::Upper;
    std::vector<u64> support;
    std::map<u64, int> lambda;

    int at(u64 d) const {
        auto it = lambda.find(d);
        return it == lambda.end() ? 0 : it->second;
    }
};

/// Beta-sieve weights: lambda_d = mu(d) for d = p1 > ... > pr in the support,
/// kept when p1...p_{m-1} p_m^{beta+1} <= R holds for every odd m (upper) or
/// every even m (lower). Throws ResourceError above max_terms weights.
SieveWeights beta_sieve_weights(const SieveSpec& spec, std::size_t max_terms = 2'000'000);

SieveWeights trivial_sieve(SieveKind kind = SieveKind::Upper);

/// theta_n = sum_{d | n} lambda_d for 1 <= n <= bound (index 0 unused).
std::vector<long> theta_from_lambda(const SieveWeights& w, u64 bound);
/// theta_n for a single n.
long theta_at(const SieveWeights& w, u64 n);

/// g' and g'' on a common ascending prime list.
struct DensityPair {
    std::vector<u64> primes;
    std::vector<Rational> g1, g2;

    Rational g1_of(u64 d) const;
    Rational g2_of(u64 d) const;
    /// 0 <= g1, g2 and g1 + g2 < 1 at every prime; throws ConfigError naming the prime otherwise.
    void validate() const;
    /// prod_p (1 - g1(p) - g2(p)).
    Rational euler_product() const;
};

/// G = sum over coprime (d1, d2) of lambda'_{d1} lambda''_{d2} g'(d1) g''(d2).
Rational reduced_composition(const SieveWeights& w1, const SieveWeights& w2, const DensityPair& g);

/// G through theta: sum over coprime (b1, b2) of theta'_{b1} theta''_{b2} g'(b1) g''(b2)
/// times prod_{p not dividing b1 b2} (1 - g'(p) - g''(p)), p over the density primes.
Rational invert_composition(const SieveWeights& w1, const SieveWeights& w2, const DensityPair& g);

struct TildeTransforms {
    std::vector<Rational> h1, h2, gt1, gt2;
    bool relations_hold = false;  // h = gt / (1 - gt) at every prime, both sides
};

TildeTransforms tilde_transforms(const DensityPair& g);

/// Smallest K with prod_{w <= p < z} (1 - g(p)/(1 - g1(p) - g2(p)))^{-1} <= K (log z / log w)^kappa
/// for all 2 <= w <= z, maximised over both sides. Infinite when some factor is <= 0.
double minimal_dimension_K(const DensityPair& g, double z, double kappa);

struct CompositionReport {
    SieveKind kind1 = SieveKind::Upper, kind2 = SieveKind::Upper;
    double s = 0, kappa = 0, K = 0, K_min = 0;
    double E = 0;  // e^{9 kappa - s} K^10
    Rational G, product;
    double bound = 0;       // product * (1 + E)^2 or product * (1 - E)
    double margin = 0;      // signed slack, >= 0 when the inequality holds
    bool holds = false;
    double fl_sum1 = 0, fl_sum2 = 0;  // sum_b theta_b h~(b), each side
    bool fl_holds = false;
    std::size_t terms1 = 0, terms2 = 0;
};

/// Evaluates G exactly and checks the composition-theorem inequality for the
/// (upper, upper), (lower, upper) or (upper, lower) pairing. Throws
/// ConfigError naming the failed hypothesis when a precondition is violated.
CompositionReport composition_bounds_check(const SieveSpec& s1, const SieveSpec& s2, const DensityPair& g);

} // namespace cheb
