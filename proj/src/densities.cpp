#include "cheb/densities.hpp"

#include "cheb/errors.hpp"

namespace cheb {
namespace {

Rational local_density(u64 p, i64 coeff, const Form& f, const SievingModulus& P) {
    if (!P.divides(p) || coeff % static_cast<i64>(p) == 0) return 0;
    return Rational(1, static_cast<long>(static_cast<i64>(p) - kronecker(f.disc(), p)));
}

} // namespace

SievingModulus SievingModulus::make(u64 P, std::optional<double> z) {
    if (P == 0) throw ConfigError("densities: P must be positive");
    SievingModulus s;
    s.primes = prime_factors(P);
    s.P = radical(P);
    s.was_reduced = s.P != P;
    const double pmax = s.primes.empty() ? 0.0 : static_cast<double>(s.primes.back());
    if (z && *z < pmax) throw ConfigError("densities: prime factor " + std::to_string(s.primes.back()) + " of P exceeds z");
    s.z = z ? *z : pmax;
    return s;
}

Rational g_prime(u64 p, const Form& f, const SievingModulus& P) { return local_density(p, f.c, f, P); }

Rational g_dprime(u64 p, const Form& f, const SievingModulus& P) { return local_density(p, f.a, f, P); }

Rational g_prime_d(u64 d, const Form& f, const SievingModulus& P) {
    Rational g = 1;
    for (auto [p, e] : factorize(d)) {
        if (e > 1) return 0;
        g *= g_prime(p, f, P);
    }
    return g;
}

Rational g_dprime_d(u64 d, const Form& f, const SievingModulus& P) {
    Rational g = 1;
    for (auto [p, e] : factorize(d)) {
        if (e > 1) return 0;
        g *= g_dprime(p, f, P);
    }
    return g;
}

Rational delta_factor(u64 p, const Form& f) {
    const i64 ip = static_cast<i64>(p);
    const long k = 2 - (f.a % ip == 0) - (f.c % ip == 0);
    Rational r(k, static_cast<long>(ip - kronecker(f.disc(), p)));
    r.canonicalize();
    return 1 - r;
}

Rational delta_f(const Form& f, const SievingModulus& P) {
    Rational d = 1;
    for (u64 p : P.primes) d *= delta_factor(p, f);
    return d;
}

bool represents_odd_primes_obstructed(const Form& f, const SievingModulus& P) {
    if (!P.divides(2)) return false;
    const i64 D = f.disc();
    if (floor_mod(D, 8) == 1 && floor_mod(f.a + f.b + f.c, 2) == 0) return true;
    return floor_mod(D, 2) == 0 && floor_mod(f.a, 2) == 1 && floor_mod(f.c, 2) == 1;
}

std::optional<u64> vanishing_prime(const Form& f, const SievingModulus& P) {
    for (u64 p : P.primes) {
        if (delta_factor(p, f) == 0) return p;
    }
    return std::nullopt;
}

} // namespace cheb
