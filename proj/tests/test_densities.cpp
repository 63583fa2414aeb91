#include <doctest.h>

#include "cheb/densities.hpp"
#include "cheb/errors.hpp"

using namespace cheb;

namespace {

// Among residues (u, v) mod p with f(u, v) nonzero mod p, the share with uv nonzero.
Rational residue_factor(u64 p, const Form& f) {
    long good = 0, total = 0;
    const i64 m = static_cast<i64>(p);
    for (i64 u = 0; u < m; ++u)
        for (i64 v = 0; v < m; ++v) {
            if (floor_mod(f.eval(u, v), m) == 0) continue;
            ++total;
            if (u != 0 && v != 0) ++good;
        }
    Rational q(good, total);
    q.canonicalize();
    return q;
}

std::vector<i64> discs(i64 lo) {
    std::vector<i64> out;
    for (i64 D = -3; D >= lo; --D)
        if (is_discriminant(D)) out.push_back(D);
    return out;
}

} // namespace

TEST_CASE("sieving modulus") {
    const auto P = SievingModulus::make(15015);
    CHECK(P.primes == std::vector<u64>{3, 5, 7, 11, 13});
    CHECK(P.z == 13.0);
    CHECK_FALSE(P.was_reduced);
    const auto Q = SievingModulus::make(12);
    CHECK(Q.P == 6);
    CHECK(Q.was_reduced);
    CHECK(SievingModulus::make(1).primes.empty());
    CHECK_THROWS_AS(SievingModulus::make(15, 4.0), ConfigError);
    CHECK_THROWS_AS(SievingModulus::make(0), ConfigError);
    CHECK(SievingModulus::make(15, 100.0).z == 100.0);
}

TEST_CASE("local densities") {
    const auto P3 = SievingModulus::make(3);
    CHECK(g_prime(3, {1, 0, 1}, P3) == Rational(1, 4));
    CHECK(g_dprime(3, {1, 0, 1}, P3) == Rational(1, 4));
    CHECK(g_prime(5, {1, 0, 1}, P3) == 0);
    const auto P2 = SievingModulus::make(2);
    CHECK(g_dprime(2, {2, 2, 3}, P2) == 0);
    CHECK(g_prime(2, {2, 2, 3}, P2) == Rational(1, 2));
    const auto P15 = SievingModulus::make(15);
    CHECK(g_prime_d(15, {1, 0, 1}, P15) == Rational(1, 4) * Rational(1, 4));
    CHECK(g_dprime_d(1, {1, 0, 1}, P15) == 1);
}

TEST_CASE("delta_f examples") {
    CHECK(delta_f({1, 0, 1}, SievingModulus::make(1)) == 1);
    CHECK(delta_f({1, 0, 1}, SievingModulus::make(2)) == 0);
    CHECK(delta_f({1, 0, 1}, SievingModulus::make(3)) == Rational(1, 2));
    CHECK(delta_f({1, 0, 1}, SievingModulus::make(15015)) == Rational(25, 192));
    CHECK(vanishing_prime({1, 0, 1}, SievingModulus::make(30)) == std::optional<u64>(2));
    CHECK_FALSE(vanishing_prime({1, 0, 1}, SievingModulus::make(15)).has_value());
}

TEST_CASE("local factor equals residue counting") {
    const std::vector<u64> ps{2, 3, 5, 7, 11, 13};
    for (i64 D : discs(-300))
        for (const Form& f : class_representatives(D).forms)
            for (u64 p : ps) {
                INFO(f.str() << " p=" << p);
                REQUIRE(delta_factor(p, f) == residue_factor(p, f));
            }
}

TEST_CASE("delta_f is the product of local factors") {
    const auto P = SievingModulus::make(2 * 3 * 5 * 7 * 11);
    for (i64 D : discs(-200))
        for (const Form& f : class_representatives(D).forms) {
            Rational prod = 1;
            for (u64 p : P.primes) prod *= delta_factor(p, f);
            REQUIRE(delta_f(f, P) == prod);
        }
}

TEST_CASE("odd-prime obstruction") {
    const auto Pe = SievingModulus::make(6);
    const auto Po = SievingModulus::make(15);
    CHECK(represents_odd_primes_obstructed({1, 0, 1}, Pe));
    CHECK(represents_odd_primes_obstructed({1, 1, 6}, Pe));
    CHECK_FALSE(represents_odd_primes_obstructed({1, 0, 1}, Po));
    CHECK_FALSE(represents_odd_primes_obstructed({1, 1, 6}, Po));
    for (i64 D : discs(-400))
        for (const Form& f : class_representatives(D).forms) {
            // f(1, 1) even means no value with u, v odd is odd.
            const bool brute = (f.a + f.b + f.c) % 2 == 0;
            REQUIRE(represents_odd_primes_obstructed(f, Pe) == brute);
            REQUIRE((delta_factor(2, f) == 0) == brute);
            REQUIRE_FALSE(represents_odd_primes_obstructed(f, Po));
        }
}
