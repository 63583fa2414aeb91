#include "cheb/betasieve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cheb/errors.hpp"

namespace cheb {
namespace {

using u128 = unsigned __int128;

constexpr std::size_t kMaxMaskPrimes = 14;

// Truncation test p1...p_{m-1} * p_m^{beta+1} <= R, with prefix = p1...p_{m-1}.
bool truncation_ok(u64 prefix, u64 p, double beta, double R) {
    const double e = beta + 1.0;
    if (std::floor(e) == e && e < 128 && R < 1e36) {
        const auto bound = static_cast<u128>(std::floor(R));
        u128 acc = prefix;
        for (int i = 0; i < static_cast<int>(e); ++i) {
            acc *= p;
            if (acc > bound) return false;
        }
        return true;
    }
    const long double lhs = std::log(static_cast<long double>(prefix)) + e * std::log(static_cast<long double>(p));
    return lhs <= std::log(static_cast<long double>(R));
}

// Position of each prime of `primes` in d, as a bitmask. Throws if d has other factors.
unsigned mask_of(u64 d, const std::vector<u64>& primes) {
    unsigned m = 0;
    for (std::size_t i = 0; i < primes.size() && d > 1; ++i) {
        if (d % primes[i] == 0) {
            m |= 1u << i;
            d /= primes[i];
        }
    }
    if (d != 1) throw DomainError("betasieve: weight outside the prime list");
    return m;
}

std::vector<u64> merged_primes(const SieveWeights& w1, const SieveWeights& w2, const DensityPair& g) {
    std::vector<u64> all = g.primes;
    all.insert(all.end(), w1.support.begin(), w1.support.end());
    all.insert(all.end(), w2.support.begin(), w2.support.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

Rational g_at(const DensityPair& g, u64 p, int side) {
    auto it = std::lower_bound(g.primes.begin(), g.primes.end(), p);
    if (it == g.primes.end() || *it != p) return 0;
    const auto i = static_cast<std::size_t>(it - g.primes.begin());
    return side == 1 ? g.g1[i] : g.g2[i];
}

// theta over subsets of `primes` (zeta transform of lambda).
std::vector<long> theta_masks(const SieveWeights& w, const std::vector<u64>& primes) {
    const std::size_t n = std::size_t{1} << primes.size();
    std::vector<long> t(n, 0);
    for (auto [d, l] : w.lambda) t[mask_of(d, primes)] += l;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t m = 0; m < n; ++m) {
            if (m & (std::size_t{1} << i)) t[m] += t[m ^ (std::size_t{1} << i)];
        }
    }
    return t;
}

} // namespace

std::string to_string(SieveKind k) { return k == SieveKind::Upper ? "upper" : "lower"; }

double SieveSpec::s() const { return std::log(R) / std::log(z); }

void SieveSpec::validate() const {
    if (!(z > 1.0)) throw ConfigError("betasieve: z must exceed 1");
    if (!(s() >= 1.0)) throw ConfigError("betasieve: sifting variable s = log R / log z must be >= 1");
    if (!(beta >= 1.0)) throw ConfigError("betasieve: beta must be >= 1");
    for (u64 p : support) {
        if (!is_prime(p)) throw ConfigError("betasieve: support element " + std::to_string(p) + " is not prime");
        if (!(static_cast<double>(p) < z)) throw ConfigError("betasieve: support prime " + std::to_string(p) + " is not below z");
    }
}

SieveWeights beta_sieve_weights(const SieveSpec& spec, std::size_t max_terms) {
    spec.validate();
    SieveWeights w;
    w.kind = spec.kind;
    w.support = spec.support;
    std::sort(w.support.begin(), w.support.end());
    w.support.erase(std::unique(w.support.begin(), w.support.end()), w.support.end());
    w.lambda[1] = 1;
    const bool odd_steps = spec.kind == SieveKind::Upper;
    // Depth-first over p1 > p2 > ...; a failed truncation at step m rules out every extension.
    std::function<void(std::size_t, u64, int, unsigned)> grow = [&](std::size_t below, u64 d, int sign, unsigned m) {
        for (std::size_t i = below; i-- > 0;) {
            const u64 p = w.support[i];
            const bool checked = ((m % 2 == 1) == odd_steps);
            if (checked && !truncation_ok(d, p, spec.beta, spec.R)) continue;
            if (d > std::numeric_limits<u64>::max() / p) continue;
            const u64 dp = d * p;
            if (!(static_cast<double>(dp) < spec.R)) continue;
            w.lambda[dp] = -sign;
            if (w.lambda.size() > max_terms) throw ResourceError("betasieve: more than " + std::to_string(max_terms) + " sieve weights");
            grow(i, dp, -sign, m + 1);
        }
    };
    grow(w.support.size(), 1, 1, 1);
    return w;
}

SieveWeights trivial_sieve(SieveKind kind) {
    SieveWeights w;
    w.kind = kind;
    w.lambda[1] = 1;
    return w;
}

std::vector<long> theta_from_lambda(const SieveWeights& w, u64 bound) {
    std::vector<long> t(bound + 1, 0);
    for (auto [d, l] : w.lambda) {
        for (u64 n = d; n <= bound; n += d) t[n] += l;
    }
    return t;
}

long theta_at(const SieveWeights& w, u64 n) {
    long t = 0;
    for (auto [d, l] : w.lambda) {
        if (n % d == 0) t += l;
    }
    return t;
}

Rational DensityPair::g1_of(u64 d) const {
    Rational r = 1;
    for (auto [p, e] : factorize(d)) {
        if (e > 1) return 0;
        r *= g_at(*this, p, 1);
    }
    return r;
}

Rational DensityPair::g2_of(u64 d) const {
    Rational r = 1;
    for (auto [p, e] : factorize(d)) {
        if (e > 1) return 0;
        r *= g_at(*this, p, 2);
    }
    return r;
}

void DensityPair::validate() const {
    if (g1.size() != primes.size() || g2.size() != primes.size()) throw ConfigError("betasieve: density arrays do not match the prime list");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (g1[i] < 0 || g2[i] < 0 || g1[i] >= 1 || g2[i] >= 1 || g1[i] + g2[i] >= 1) {
            throw ConfigError("betasieve: size condition 0 <= g', g'' and g' + g'' < 1 fails at p = " + std::to_string(primes[i]));
        }
    }
}

Rational DensityPair::euler_product() const {
    Rational r = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) r *= 1 - g1[i] - g2[i];
    return r;
}

Rational reduced_composition(const SieveWeights& w1, const SieveWeights& w2, const DensityPair& g) {
    std::vector<std::pair<u64, Rational>> a, b;
    for (auto [d, l] : w1.lambda) a.emplace_back(d, l * g.g1_of(d));
    for (auto [d, l] : w2.lambda) b.emplace_back(d, l * g.g2_of(d));
    Rational G = 0;
    for (const auto& [d1, x] : a) {
        if (x == 0) continue;
        for (const auto& [d2, y] : b) {
            if (y != 0 && std::gcd(d1, d2) == 1) G += x * y;
        }
    }
    return G;
}

Rational invert_composition(const SieveWeights& w1, const SieveWeights& w2, const DensityPair& g) {
    const auto primes = merged_primes(w1, w2, g);
    if (primes.size() > kMaxMaskPrimes) throw ResourceError("betasieve: inversion limited to " + std::to_string(kMaxMaskPrimes) + " primes");
    const auto t1 = theta_masks(w1, primes);
    const auto t2 = theta_masks(w2, primes);
    std::vector<Rational> a(primes.size()), b(primes.size()), rest(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        a[i] = g_at(g, primes[i], 1);
        b[i] = g_at(g, primes[i], 2);
        rest[i] = 1 - a[i] - b[i];
    }
    Rational G = 0;
    // Each prime goes to b1, to b2, or to neither.
    std::function<void(std::size_t, unsigned, unsigned, const Rational&)> walk =
        [&](std::size_t i, unsigned m1, unsigned m2, const Rational& coef) {
            if (coef == 0) return;
            if (i == primes.size()) {
                const long th = t1[m1] * t2[m2];
                if (th != 0) G += coef * th;
                return;
            }
            walk(i + 1, m1 | (1u << i), m2, coef * a[i]);
            walk(i + 1, m1, m2 | (1u << i), coef * b[i]);
            walk(i + 1, m1, m2, coef * rest[i]);
        };
    walk(0, 0, 0, Rational(1));
    return G;
}

TildeTransforms tilde_transforms(const DensityPair& g) {
    g.validate();
    TildeTransforms t;
    t.relations_hold = true;
    for (std::size_t i = 0; i < g.primes.size(); ++i) {
        const Rational denom = 1 - g.g1[i] - g.g2[i];
        t.h1.push_back(g.g1[i] / denom);
        t.h2.push_back(g.g2[i] / denom);
        t.gt1.push_back(g.g1[i] / (1 - g.g2[i]));
        t.gt2.push_back(g.g2[i] / (1 - g.g1[i]));
        if (t.h1.back() != t.gt1.back() / (1 - t.gt1.back())) t.relations_hold = false;
        if (t.h2.back() != t.gt2.back() / (1 - t.gt2.back())) t.relations_hold = false;
    }
    return t;
}

double minimal_dimension_K(const DensityPair& g, double z, double kappa) {
    double K = 1.0;
    const auto t = tilde_transforms(g);
    for (const auto* h : {&t.h1, &t.h2}) {
        double suffix = 1.0;
        for (std::size_t i = g.primes.size(); i-- > 0;) {
            const double p = static_cast<double>(g.primes[i]);
            if (!(p < z)) continue;
            const double f = 1.0 - to_double((*h)[i]);
            if (f <= 0) return std::numeric_limits<double>::infinity();
            suffix /= f;
            // For w in (previous prime, p] the ratio is largest at w = p.
            const double ratio = suffix / std::pow(std::log(z) / std::log(std::max(p, 2.0)), kappa);
            K = std::max(K, ratio);
        }
    }
    return K;
}

CompositionReport composition_bounds_check(const SieveSpec& s1, const SieveSpec& s2, const DensityPair& g) {
    s1.validate();
    s2.validate();
    if (s1.z != s2.z || s1.R != s2.R) throw ConfigError("betasieve: both sieves need the same sifting level z and level R");
    if (s1.kind == SieveKind::Lower && s2.kind == SieveKind::Lower) throw ConfigError("betasieve: no composition bound for two lower sieves");
    g.validate();

    CompositionReport r;
    r.kind1 = s1.kind;
    r.kind2 = s2.kind;
    r.s = s1.s();
    r.kappa = s1.kappa;
    r.K = s1.K_const;
    if (!(r.K > 1.0)) throw ConfigError("betasieve: K must exceed 1");
    for (const auto* sp : {&s1, &s2}) {
        if (std::abs(sp->beta - (9 * sp->kappa + 1)) > 1e-9) throw ConfigError("betasieve: beta must equal 9 kappa + 1");
    }
    if (!(r.s > 9 * r.kappa + 1 + 10 * std::log(r.K))) throw ConfigError("betasieve: hypothesis s > 9 kappa + 1 + 10 log K fails");
    r.K_min = minimal_dimension_K(g, s1.z, r.kappa);
    if (r.K_min > r.K) throw ConfigError("betasieve: sieve dimension condition fails for K = " + std::to_string(r.K) + " (needs " + std::to_string(r.K_min) + ")");

    const auto w1 = beta_sieve_weights(s1);
    const auto w2 = beta_sieve_weights(s2);
    r.terms1 = w1.lambda.size();
    r.terms2 = w2.lambda.size();
    r.G = reduced_composition(w1, w2, g);
    r.product = g.euler_product();
    r.E = std::exp(9 * r.kappa - r.s) * std::pow(r.K, 10);
    const double G = to_double(r.G);
    const double prod = to_double(r.product);
    if (s1.kind == SieveKind::Upper && s2.kind == SieveKind::Upper) {
        r.bound = prod * (1 + r.E) * (1 + r.E);
        r.margin = r.bound - G;
        r.holds = r.G <= Rational(r.bound);
    } else {
        r.bound = prod * (1 - r.E);
        r.margin = G - r.bound;
        r.holds = r.G >= Rational(r.bound);
    }

    // Fundamental Lemma sums on each side.
    const auto t = tilde_transforms(g);
    auto fl_sum = [&](const SieveWeights& w, const std::vector<Rational>& h) {
        const auto primes = merged_primes(w, w, g);
        if (primes.size() > 20) throw ResourceError("betasieve: Fundamental Lemma sum limited to 20 primes");
        const auto th = theta_masks(w, primes);
        std::vector<Rational> hp(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            auto it = std::lower_bound(g.primes.begin(), g.primes.end(), primes[i]);
            hp[i] = (it != g.primes.end() && *it == primes[i]) ? h[static_cast<std::size_t>(it - g.primes.begin())] : Rational(0);
        }
        Rational sum = 0;
        std::vector<Rational> hm(th.size());
        hm[0] = 1;
        for (std::size_t m = 1; m < th.size(); ++m) {
            const int low = __builtin_ctz(static_cast<unsigned>(m));
            hm[m] = hm[m & (m - 1)] * hp[static_cast<std::size_t>(low)];
        }
        for (std::size_t m = 0; m < th.size(); ++m) {
            if (th[m] != 0 && hm[m] != 0) sum += hm[m] * th[m];
        }
        return to_double(sum);
    };
    r.fl_sum1 = fl_sum(w1, t.h1);
    r.fl_sum2 = fl_sum(w2, t.h2);
    auto fl_ok = [&](SieveKind k, double v) { return k == SieveKind::Lower ? v >= 1 - r.E : v <= 1 + r.E; };
    r.fl_holds = fl_ok(s1.kind, r.fl_sum1) && fl_ok(s2.kind, r.fl_sum2);
    return r;
}

} // namespace cheb
