#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "cheb/arith.hpp"
#include "cheb/errors.hpp"

using namespace cheb;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Logarithmic integral li(x) by Ramanujan's series in 50-digit arithmetic.
double li_oracle(double xd) {
    using F = boost::multiprecision::cpp_bin_float_50;
    auto li_full = [](F x) {
        const F L = log(x);
        F term = 1, sum = 0, inner = 0;
        for (int n = 1; n < 400; ++n) {
            term *= L / n;
            if (n % 2 == 1) inner += F(1) / n;
            const F sign = (n % 2 == 1) ? 1 : -1;
            const F add = sign * term / pow(F(2), n - 1) * inner;
            sum += add;
            if (n > 20 && abs(add) < F(1e-45) * abs(sum)) break;
        }
        const F euler_gamma("0.57721566490153286060651209008240243104215933593992");
        return euler_gamma + log(L) + sqrt(x) * sum;
    };
    return static_cast<double>(li_full(F(xd)) - li_full(F(2)));
}

int euler_criterion(i64 a, u64 p) {
    const u64 r = powmod(static_cast<u64>(floor_mod(a, static_cast<i64>(p))), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

} // namespace

TEST_CASE("is_prime small values and trial division") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(1000000007ULL));
    CHECK(trial_prime(1000000007ULL));
    for (u64 n = 0; n < 100000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
}

TEST_CASE("is_prime on strong pseudoprimes and 64-bit values") {
    for (u64 n : {2047ULL, 1373653ULL, 25326001ULL, 3215031751ULL, 2152302898747ULL, 3474749660383ULL,
                  341550071728321ULL, 3825123056546413051ULL, 561ULL})
        CHECK_FALSE(is_prime(n));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(18446744073709551615ULL));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const u64 n = rng() | 1;
        REQUIRE(is_prime(n) == boost::multiprecision::miller_rabin_test(boost::multiprecision::cpp_int(n), 40));
    }
    for (int i = 0; i < 300; ++i) {
        const u64 n = (rng() % 1000000000000ULL) | 1;
        REQUIRE(is_prime(n) == trial_prime(n));
    }
}

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-23, 2) == 1);
    CHECK(kronecker(-23, 3) == 1);
    CHECK_THROWS_AS(kronecker(-1, 2), DomainError);
}

TEST_CASE("kronecker matches Euler's criterion and is multiplicative") {
    const std::vector<i64> Ds{-3, -4, -7, -8, -15, -20, -23, -47, -71, -84, -163, -400};
    std::vector<u64> ps;
    for (u64 p = 3; p < 400; ++p)
        if (trial_prime(p)) ps.push_back(p);
    for (i64 D : Ds) {
        for (u64 p : ps) REQUIRE(kronecker(D, p) == euler_criterion(D, p));
        for (u64 m = 1; m < 60; ++m)
            for (u64 n = 1; n < 60; ++n) REQUIRE(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
    }
}

TEST_CASE("jacobi agrees with kronecker on odd moduli") {
    for (i64 D : {-3, -4, -23, -20})
        for (u64 m = 1; m < 200; m += 2) REQUIRE(jacobi(D, m) == kronecker(D, m));
    CHECK_THROWS_AS(jacobi(3, 4), DomainError);
}

TEST_CASE("sqrt_mod examples and exhaustive search") {
    CHECK(sqrt_mod(2, 7) == std::optional<u64>(3));
    CHECK(sqrt_mod(0, 5) == std::optional<u64>(0));
    CHECK_FALSE(sqrt_mod(3, 5).has_value());
    CHECK_THROWS_AS(sqrt_mod(1, 9), DomainError);
    CHECK_THROWS_AS(sqrt_mod(1, 2), DomainError);
    for (u64 p = 3; p < 400; ++p) {
        if (!trial_prime(p)) continue;
        for (i64 a = -5; a < static_cast<i64>(p); ++a) {
            std::optional<u64> brute;
            const u64 ar = static_cast<u64>(floor_mod(a, static_cast<i64>(p)));
            for (u64 r = 0; r <= p / 2; ++r)
                if (r * r % p == ar) { brute = r; break; }
            REQUIRE(sqrt_mod(a, p) == brute);
        }
    }
    const u64 big = 1000000007ULL;
    const u64 sq = mulmod(123456789, 123456789, big);
    const auto r = sqrt_mod(static_cast<i64>(sq), big);
    REQUIRE(r.has_value());
    CHECK(mulmod(*r, *r, big) == sq);
    CHECK_FALSE(sqrt_mod(5, big).has_value());
}

TEST_CASE("multiplicative functions") {
    CHECK(mobius(1) == 1);
    CHECK(euler_phi(1) == 1);
    CHECK(tau(1) == 1);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(30) == 8);
    CHECK(tau(30) == 8);
    CHECK(mobius(12) == 0);
    for (u64 n = 1; n < 2000; ++n) {
        u64 phi = 0, t = 0;
        for (u64 k = 1; k <= n; ++k) {
            if (std::gcd(k, n) == 1) ++phi;
            if (n % k == 0) ++t;
        }
        REQUIRE(euler_phi(n) == phi);
        REQUIRE(tau(n) == t);
        REQUIRE(divisors(n).size() == t);
        int mu_sum = 0;
        for (u64 d : divisors(n)) mu_sum += mobius(d);
        REQUIRE(mu_sum == (n == 1 ? 1 : 0));
        u64 sf = 0;
        for (u64 d : divisors(n))
            if (mobius(d) != 0) ++sf;
        REQUIRE(squarefree_divisors(n).size() == sf);
    }
    CHECK(radical(72) == 6);
    CHECK(prime_factors(360) == std::vector<u64>{2, 3, 5});
}

TEST_CASE("li against the series oracle") {
    CHECK(li(2.0) == 0.0);
    CHECK_THROWS_AS(li(1.5), DomainError);
    for (double x : {2.5, 10.0, 100.0, 1e4, 1e6, 1e7, 1e9, 1e12}) {
        const double ref = li_oracle(x);
        INFO("x = " << x);
        CHECK(std::fabs(li(x) - ref) <= 1e-6 * std::max(1.0, ref));
    }
    CHECK(li(1e6) == doctest::Approx(78626.504).epsilon(1e-8));
}
