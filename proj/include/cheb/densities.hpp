#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheb/quadforms.hpp"
#include "cheb/rational.hpp"

namespace cheb {

struct SievingModulus {
    u64 P = 1;
    double z = 0.0;
    std::vector<u64> primes;
    bool was_reduced = false;  // P had a square factor and was replaced by its radical

    /// Builds from any P >= 1. z defaults to the largest prime factor; a
    /// supplied z smaller than some factor of P is a ConfigError.
    static SievingModulus make(u64 P, std::optional<double> z = std::nullopt);
    bool divides(u64 p) const { return P % p == 0; }
};

/// Density of d | u among prime values: 1/(p - (D/p)) for p | P with p not dividing c.
Rational g_prime(u64 p, const Form& f, const SievingModulus& P);
/// Same with a in place of c (density of d | v).
Rational g_dprime(u64 p, const Form& f, const SievingModulus& P);
/// Multiplicative extensions to squarefree d.
Rational g_prime_d(u64 d, const Form& f, const SievingModulus& P);
Rational g_dprime_d(u64 d, const Form& f, const SievingModulus& P);

/// prod over p | P of 1 - (2 - [p | a] - [p | c]) / (p - (D/p)).
Rational delta_f(const Form& f, const SievingModulus& P);

/// Local factor of delta_f at p.
Rational delta_factor(u64 p, const Form& f);

/// True when 2 | P and no odd prime f(u, v) with gcd(uv, 2) = 1 exists:
/// either D = 1 (mod 8) with a + b + c even, or 2 | D with a and c odd.
bool represents_odd_primes_obstructed(const Form& f, const SievingModulus& P);

/// Smallest prime p | P whose local factor vanishes, if any.
std::optional<u64> vanishing_prime(const Form& f, const SievingModulus& P);

} // namespace cheb
