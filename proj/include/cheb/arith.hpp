#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cheb {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Floor modulus: result in [0, m) for m > 0.
constexpr i64 floor_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
u64 gcd_u64(u64 a, u64 b);
i64 gcd_i64(i64 a, i64 b);

/// Deterministic Miller-Rabin for the full 64-bit range.
///
/// Witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}: no strong
/// pseudoprime to all twelve bases exists below 3.3e24, which covers 2^64.
bool is_prime(u64 n);

/// Kronecker symbol (D/n) for form discriminants (D = 0 or 1 mod 4).
///
/// For n = 2 the value is 0 if 2 | D, +1 if D = 1 (mod 8), -1 if D = 5 (mod 8).
/// Odd D = 3 (mod 4) is rejected with DomainError whenever n is even.
/// Completely multiplicative in n.
int kronecker(i64 D, u64 n);

/// Jacobi symbol (a/m) for odd m >= 1.
int jacobi(i64 a, u64 m);

/// Square root of a modulo an odd prime p via Tonelli-Shanks.
///
/// Returns min(r, p - r) when a is a quadratic residue, 0 if p | a,
/// and nullopt for non-residues. Throws DomainError if p is not an odd prime.
std::optional<u64> sqrt_mod(i64 a, u64 p);

/// Prime-power factorization by trial division (ascending primes).
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

int mobius(u64 n);
u64 euler_phi(u64 n);
u64 tau(u64 n);
u64 radical(u64 n);
std::vector<u64> prime_factors(u64 n);
/// All squarefree divisors of n, ascending.
std::vector<u64> squarefree_divisors(u64 n);
/// All divisors of n, ascending.
std::vector<u64> divisors(u64 n);

/// Offset logarithmic integral Li(x) = int_2^x dt / log t; Li(2) = 0.
/// Throws DomainError for x < 2.
double li(double x);

} // namespace cheb
