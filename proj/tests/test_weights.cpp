#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cheb/errors.hpp"
#include "cheb/weights.hpp"

using namespace cheb;
using cplx = std::complex<double>;

namespace {

// Irwin-Hall CDF (1/n!) sum_{k <= y} (-1)^k C(n, k) (y - k)^n in exact rationals.
double irwin_hall_exact(unsigned n, const mpq_class& y) {
    if (y <= 0) return 0.0;
    if (y >= n) return 1.0;
    mpq_class sum = 0;
    for (unsigned k = 0; k <= n && y - k > 0; ++k) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), n, k);
        mpq_class term = 1;
        for (unsigned i = 0; i < n; ++i) term *= y - k;
        sum += (k % 2 ? -1 : 1) * c * term;
    }
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    sum /= fact;
    return sum.get_d();
}

// f by direct convolution: P(t - S in [1/2, 1 + 2 ell A]) with S a sum of ell
// uniforms on [-2A, 0], one uniform integrated numerically per level. Each level
// is split at the kinks of the integrand, so Gauss-Legendre is exact piecewise.
double f_convolution(const WeightParams& p, double t) {
    const double w = 2.0 * p.A();
    const double lo = 0.5, hi = 1.0 + p.ell * w;
    std::function<double(int, double, double)> prob = [&](int k, double a, double b) -> double {
        // P(S_k in [a, b])
        if (k == 0) return (a <= 0.0 && 0.0 <= b) ? 1.0 : 0.0;
        if (k == 1) {
            const double l = std::max(a, -w), r = std::min(b, 0.0);
            return r > l ? (r - l) / w : 0.0;
        }
        std::vector<double> cuts{-w, 0.0};
        for (int j = 0; j < k; ++j)
            for (double e : {a + j * w, b + j * w})
                if (e > -w && e < 0.0) cuts.push_back(e);
        std::sort(cuts.begin(), cuts.end());
        auto g = [&](double y) { return prob(k - 1, a - y, b - y) / w; };
        double total = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1] > cuts[i]) total += boost::math::quadrature::gauss<double, 20>::integrate(g, cuts[i], cuts[i + 1]);
        return total;
    };
    return prob(p.ell, t - hi, t - lo);
}

cplx F_gauss_legendre(const WeightFunction& wf, cplx z) {
    const auto bp = wf.breakpoints();
    cplx total = 0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        if (bp[i + 1] <= bp[i]) continue;
        auto re = [&](double t) { return (wf.f(t) * std::exp(-z * t)).real(); };
        auto im = [&](double t) { return (wf.f(t) * std::exp(-z * t)).imag(); };
        total += cplx(boost::math::quadrature::gauss<double, 40>::integrate(re, bp[i], bp[i + 1]),
                      boost::math::quadrature::gauss<double, 40>::integrate(im, bp[i], bp[i + 1]));
    }
    return total;
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(WeightParams::from_x(1e6, 0.25, 2), DomainError);
    CHECK_THROWS_AS(WeightParams::from_x(1e6, 0.0, 2), DomainError);
    CHECK_THROWS_AS(WeightParams::from_x(2.0, 0.1, 2), DomainError);
    CHECK_THROWS_AS(WeightParams::from_x(1e6, 0.1, 0), DomainError);
    const auto p = WeightParams::from_x(1e6, 0.1, 2);
    CHECK(2 * p.ell * p.A() == doctest::Approx(0.1 / std::log(1e6)));
    CHECK_THROWS_AS(WeightParams::from_parameter_choices(5000.0, 2, 10), DomainError);
    const auto q = WeightParams::from_parameter_choices(10000.0, 2, 10);
    CHECK(q.ell == 80);
    CHECK(q.epsilon == doctest::Approx(640.0 * std::exp(-10000.0 / 640.0)));
}

TEST_CASE("Irwin-Hall pieces match exact rationals") {
    for (int n = 1; n <= 14; ++n) {
        WeightFunction wf(WeightParams{std::log(1e6), 0.1, n});
        for (int k = 0; k <= 400; ++k) {
            const mpq_class y(k * n, 400);
            REQUIRE(std::fabs(wf.irwin_hall_cdf(y.get_d()) - irwin_hall_exact(n, y)) < 1e-13);
        }
    }
}

TEST_CASE("weight shape") {
    const auto p = WeightParams::from_x(1e6, 0.1, 2);
    WeightFunction wf(p);
    const double e = p.epsilon / p.log_x;
    CHECK(wf.f(0.75) == 1.0);
    CHECK(std::fabs(wf.f(0.5 - e)) < 1e-15);
    CHECK(std::fabs(wf.f(1 + e)) < 1e-15);
    const double mid = wf.f(1 + e / 2);
    CHECK(mid > 0);
    CHECK(mid < 1);
    CHECK(std::fabs(mid - wf.f(0.5 - e / 2)) < 1e-12);
    CHECK(std::fabs(mid - f_convolution(p, 1 + e / 2)) < 1e-10);
    for (int i = 0; i <= 1000; ++i) REQUIRE(wf.f(0.5 + 0.5 * i / 1000.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wf.f(0.2) == 0.0);
    CHECK(wf.f(1.5) == 0.0);
}

TEST_CASE("piecewise evaluation matches numerical convolution") {
    std::mt19937_64 rng(31);
    for (int ell : {1, 2, 3}) {
        const auto p = WeightParams::from_x(1e4, 0.2, ell);
        WeightFunction wf(p);
        const int points = ell == 3 ? 150 : 1000;
        std::uniform_real_distribution<double> U(wf.support_lo() - 0.01, wf.support_hi() + 0.01);
        for (int i = 0; i < points; ++i) {
            double t = U(rng);
            // Half the points land on the ramps where the pieces live.
            if (i % 2) t = (i % 4 == 1 ? wf.support_lo() : 1.0) + (t - wf.support_lo()) * (p.epsilon / p.log_x) / 0.55;
            INFO("ell=" << ell << " t=" << t);
            REQUIRE(std::fabs(wf.f(t) - f_convolution(p, t)) < 1e-9);
        }
    }
}

TEST_CASE("mass and F(0)") {
    for (double x : {10.0, 1e6, 1e12})
        for (int ell : {1, 2, 5}) {
            const auto p = WeightParams::from_x(x, 0.1, ell);
            WeightFunction wf(p);
            const double expect = 0.5 + p.epsilon / p.log_x;
            CHECK(std::fabs(wf.F(0).real() - expect) < 1e-10);
            CHECK(std::fabs(wf.F(0).imag()) < 1e-15);
            CHECK(std::fabs(wf.F_quadrature(0).real() - expect) < 1e-10);
            CHECK(std::fabs(F_gauss_legendre(wf, 0).real() - expect) < 1e-10);
        }
}

TEST_CASE("closed form against quadrature") {
    const auto p = WeightParams::from_x(1e6, 0.1, 2);
    WeightFunction wf(p);
    for (cplx z : {cplx(1, 2), cplx(-3, 0.5), cplx(0, 10), cplx(-13.8, 4), cplx(5, -40), cplx(-0.5 * p.log_x, 100)}) {
        const cplx F = wf.F(z);
        INFO("z=" << z);
        CHECK(std::abs(F - wf.F_quadrature(z)) <= 1e-8 * std::abs(F));
        CHECK(std::abs(F - F_gauss_legendre(wf, z)) <= 1e-8 * std::abs(F));
    }
}

TEST_CASE("series and direct branches agree near zero") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 2000; ++i) {
        const double r = std::pow(10.0, -6.0 + 4.0 * static_cast<double>(rng() % 10001) / 10000.0);
        const double th = 6.283185307179586 * static_cast<double>(rng() % 10000) / 10000.0;
        const cplx u = std::polar(r, th);
        const cplx s = expm1_ratio_series(u), d = expm1_ratio_direct(u);
        REQUIRE(std::abs(s - d) <= 1e-12 * std::abs(s));
    }
    const auto p = WeightParams::from_x(1e6, 0.1, 2);
    for (double r : {1e-9, 1e-6, 1e-3}) {
        const cplx a = laplace_F(cplx(r, 0), p), b = laplace_F(cplx(-r, 0), p);
        CHECK(std::abs(a - b) < 10 * r);
    }
}

TEST_CASE("log transform consistent with F") {
    const auto p = WeightParams::from_x(1e6, 0.1, 3);
    for (cplx z : {cplx(0.3, 0.2), cplx(-5, 7), cplx(20, -1)}) {
        const cplx F = laplace_F(z, p);
        CHECK(std::abs(std::exp(log_laplace_F(z, p)) - F) <= 1e-12 * std::abs(F));
    }
    const auto big = WeightParams{1e5, 0.1, 2};
    CHECK(log_laplace_F(cplx(-big.log_x, 0), big).real() == doctest::Approx(big.log_x - std::log(big.log_x)).epsilon(1e-3));
}

TEST_CASE("main term size of F(-log x)") {
    for (double x : {1e6, 1e10}) {
        const auto p = WeightParams::from_x(x, 0.05, 2);
        const double ratio = laplace_F(cplx(-p.log_x, 0), p).real() / (x / p.log_x);
        CHECK(ratio > 1 - 2 * p.epsilon);
        CHECK(ratio < 1 + 2 * p.epsilon);
    }
}

TEST_CASE("transform bounds on the grid") {
    for (double x : {1e4, 1e6, 1e9})
        for (int ell : {1, 2, 4}) {
            const auto rep = verify_bounds(WeightParams::from_x(x, 0.1, ell));
            for (const auto& c : rep.checks) {
                INFO(c.name << " worst at " << c.worst_at);
                CHECK(c.points > 0);
                CHECK(c.violations == 0);
            }
            CHECK(rep.F0_in_range);
            CHECK(rep.mainterm_C <= rep.mainterm_C_limit);
            CHECK(rep.pass);
        }
}

TEST_CASE("large ell keeps only F") {
    WeightFunction wf(WeightParams{std::log(1e8), 0.1, 80});
    CHECK_FALSE(wf.has_f());
    CHECK_THROWS_AS(wf.f(0.7), StateError);
    CHECK(std::fabs(wf.F(0).real() - (0.5 + 0.1 / std::log(1e8))) < 1e-10);
}
