#include <doctest.h>

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <iostream>
#include <sstream>

#include "cheb/errors.hpp"
#include "cheb/errorterms.hpp"

using namespace cheb;

namespace {

ErrorModel model(double Q, int n, std::optional<SiegelData> s = std::nullopt) {
    ErrorModel m;
    m.Q_given = Q;
    m.n_K = n;
    if (s) m.siegel = *s;
    return m;
}

// inf over u >= log 3 of Delta(e^u) log x + u by a fine scan and Brent refinement.
double eta_oracle(double log_x, const ErrorModel& m, bool classical_only) {
    auto phi = [&](double u) {
        const double t = std::exp(u);
        const double d = classical_only ? delta_zfr(t, m) : delta_combined(t, m);
        return d * log_x + u;
    };
    const double lo = std::log(3.0);
    const double hi = std::max(lo + 1.0, phi(lo));
    const int N = 200000;
    double best_u = lo, best = phi(lo);
    for (int i = 1; i <= N; ++i) {
        const double u = lo + (hi - lo) * i / N;
        const double v = phi(u);
        if (v < best) best = v, best_u = u;
    }
    const double step = (hi - lo) / N;
    const auto r = boost::math::tools::brent_find_minima(phi, std::max(lo, best_u - step), std::min(hi, best_u + step), 52);
    return std::min(best, r.second);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
    return out;
}

} // namespace

TEST_CASE("model validation") {
    ErrorModel m;
    m.D_K = 3;
    m.n_K = 2;
    CHECK(m.log_Q() == doctest::Approx(std::log(3.0) + 2 * std::log(2.0)));
    CHECK_NOTHROW(m.validate());
    m.c_ZDE = 0.5;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    CHECK_THROWS_AS(model(1.5, 1).validate(), ConfigError);
    auto bad = model(100, 1);
    bad.c_DH = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK(SiegelData::from_lambda(0.5, 10).beta1() == doctest::Approx(0.95));
}

TEST_CASE("zero-free region width") {
    auto m = model(std::exp(1.0), 1);
    m.c_ZFR = 1;
    CHECK(delta_zfr(3, m) == doctest::Approx(1 / (1 + std::log(3.0))));
    CHECK(delta_zfr(10, m) < delta_zfr(3, m));
    CHECK_THROWS_AS(delta_zfr(2, m), DomainError);
    const auto a = model(1e10, 1), b = model(1e20, 1);
    CHECK(delta_zfr(3, b) / delta_zfr(3, a) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("zero repulsion") {
    auto m = model(100, 1);
    CHECK_THROWS_AS(delta_repulsion(3, m), StateError);
    CHECK(delta_combined(3, m) == delta_zfr(3, m));
    const double L = std::log(100.0) + std::log(3.0);
    m.siegel = SiegelData{1.0 / L, 1};
    CHECK(delta_repulsion(3, m) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(delta_combined(3, m) == delta_zfr(3, m));
    m.siegel = SiegelData::from_lambda(1e-6, m.log_Q());
    CHECK(delta_repulsion(3, m) > delta_zfr(3, m));
    m.siegel = SiegelData::from_lambda(1e-300, m.log_Q());
    CHECK(delta_repulsion(3, m) == 0.5);
}

TEST_CASE("B1 and nu1") {
    auto m = model(100, 2);
    CHECK(B1(7, m) == 1.0);
    CHECK(nu1(m) == 1.0);
    auto w = model(std::exp(100.0), 1, SiegelData{1e-4, 1});
    CHECK(B1(1, w) == doctest::Approx(0.01));
    double prev = 0;
    for (double T : log_grid(1, 1e12, 50)) {
        const double b = B1(T, w);
        CHECK(b >= prev);
        prev = b;
    }
    CHECK(nu1(w) == doctest::Approx(0.01));
    CHECK_THROWS_AS(B1(0.5, w), DomainError);
}

TEST_CASE("B1 supremum against nu1") {
    for (double lam : {1e-1, 1e-3, 1e-6}) {
        auto m = model(1e4, 2, SiegelData::from_lambda(lam, std::log(1e4)));
        const double C = b1_supremum_constant(m, log_grid(1, 1e30, 400));
        CHECK(C >= 1.0 - 1e-12);
        CHECK(C <= 4.0);
    }
}

TEST_CASE("Stark floor") {
    CHECK(stark_floor(model(10, 1)) == doctest::Approx(0.01));
    CHECK(stark_floor(model(100, 1)) < stark_floor(model(10, 1)));
    auto m = model(10, 1, SiegelData::from_lambda(1e-3, std::log(10.0)));
    std::stringstream err;
    auto* old = std::cerr.rdbuf(err.rdbuf());
    const bool ok = stark_consistent(m, true);
    std::cerr.rdbuf(old);
    CHECK_FALSE(ok);
    CHECK(err.str().find("warning") != std::string::npos);
    m.siegel = SiegelData::from_lambda(0.011, std::log(10.0));
    CHECK(stark_consistent(m, false));
    m.siegel = SiegelData::from_lambda(0.0099, std::log(10.0));
    CHECK_FALSE(stark_consistent(m, false));
}

TEST_CASE("eta against an independent minimiser") {
    for (auto [Q, n] : std::vector<std::pair<double, int>>{{1e3, 2}, {1e6, 2}, {1e4, 8}}) {
        const auto m = model(Q, n);
        for (double lx : log_grid(3 * std::log(Q), 30 * std::log(Q), 12)) {
            const auto r = eta(lx, m, true);
            REQUIRE(r.eta == doctest::Approx(eta_oracle(lx, m, true)).epsilon(1e-9));
            REQUIRE(r.u_star >= std::log(3.0) - 1e-15);
        }
        const auto ms = model(Q, n, SiegelData::from_lambda(1e-4, std::log(Q)));
        for (double lx : log_grid(3 * std::log(Q), 30 * std::log(Q), 12))
            REQUIRE(eta(lx, ms).eta == doctest::Approx(eta_oracle(lx, ms, false)).epsilon(1e-9));
    }
}

TEST_CASE("eta properties") {
    for (auto [Q, n] : std::vector<std::pair<double, int>>{{1e3, 2}, {1e6, 2}, {1e4, 8}, {50, 1}}) {
        const auto m = model(Q, n);
        const auto ms = model(Q, n, SiegelData::from_lambda(1e-3, std::log(Q)));
        double prev = -1;
        for (double lx : log_grid(std::log(2.0), 1e5, 200)) {
            const double e = eta(lx, m).eta;
            REQUIRE(e >= eta_piecewise_bound(lx, m) * (1 - 1e-12));
            REQUIRE(e >= prev);
            REQUIRE(std::exp(-e) <= classical_error(lx, m) * (1 + 1e-12));
            REQUIRE(eta(lx, ms).eta >= e - 1e-12);
            prev = e;
        }
        const double cx = eta_crossover_log_x(m);
        CHECK(m.c_ZFR * cx / m.log_Q() == doctest::Approx(std::sqrt(m.c_ZFR * cx / m.n_K)).epsilon(1e-6));
    }
}

TEST_CASE("classical and theorem errors") {
    const auto m = model(1e3, 2);
    double prev = 10;
    for (double lx : log_grid(3 * m.log_Q(), 1e6, 50)) {
        const double e = classical_error(lx, m);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(classical_error(1e8, m) < 1e-30);
    CHECK_THROWS_AS(thm11_error(0.5 * m.log_Q(), m), ConfigError);
    CHECK(thm11_error(3 * m.log_Q(), m) > classical_error(3 * m.log_Q(), m));
}

TEST_CASE("Siegel-zero regimes") {
    const double Q = 1e4;
    const int n = 2;
    const double lq = std::log(Q);
    const double boundary = std::exp(-20.0 * lq / n);
    auto m = model(Q, n, SiegelData::from_lambda(boundary, lq));
    const auto b = siegel_error(40 * lq, m);
    CHECK(b.regime == 2);
    CHECK(b.log_threshold == doctest::Approx(-20.0 * lq / n));
    CHECK(std::isfinite(b.log_regime2));
    CHECK(std::isfinite(b.log_regime3));
    m.siegel = SiegelData::from_lambda(boundary * 0.5, lq);
    CHECK(siegel_error(40 * lq, m).regime == 3);

    // For tiny lambda1 the lambda1^10 factor is far smaller than exp(-10 sqrt(log 1/lambda1)).
    m.siegel = SiegelData::from_lambda(1e-60, lq);
    const auto t = siegel_error(40 * lq, m);
    CHECK(t.log_regime2 < t.log_regime3);
    CHECK(t.log_value == t.log_regime3);

    CHECK_THROWS_AS(siegel_error(40 * lq, model(Q, n)), StateError);
    m.siegel = SiegelData::from_lambda(2.0, lq);
    CHECK_THROWS_AS(siegel_error(40 * lq, m), ConfigError);
    m.siegel = SiegelData::from_lambda(1e-3, lq);
    CHECK_THROWS_AS(siegel_error(0.5 * lq, m), ConfigError);
}

TEST_CASE("main term floor cases") {
    auto m = model(10, 1);
    const double lq = m.log_Q();
    const double lx = 36 * m.c_ZDE * lq;
    const auto none = main_term_floor(lx, m);
    CHECK(none.case_id == 0);
    CHECK(none.value_over_x == 1.0);
    CHECK(none.nu1 == 1.0);
    CHECK_THROWS_AS(main_term_floor(lx / 2, m), ConfigError);

    m.siegel = SiegelData{0.5 / lx, 1};
    const auto c1 = main_term_floor(lx, m);
    CHECK(c1.case_id == 1);
    CHECK(c1.case_holds);
    CHECK(c1.value_over_x >= c1.case_bound);
    CHECK(c1.literal_bound == doctest::Approx(0.5 / lx * (lx - 1)));
    CHECK(c1.value_over_x == doctest::Approx(1 - std::exp(-0.5) / (1 - 0.5 / lx)));

    m.siegel = SiegelData{2.0 / lx, 1};
    const auto c2 = main_term_floor(lx, m);
    CHECK(c2.case_id == 2);
    CHECK(c2.case_holds);
    CHECK(c2.literal_holds);
    CHECK(c2.value_over_x >= 1 - 2 * std::exp(-1.0));

    m.siegel = SiegelData{2.0 / lx, -1};
    CHECK(main_term_floor(lx, m).value_over_x > 1.0);
}

TEST_CASE("remainders and level of distribution") {
    ErrorModel m;
    CHECK(remainder_eps(1, 1e8, -3, m) < 1e-40);
    const double lx = std::log(1e6);
    double expect = 0;
    const std::pair<u64, double> terms[] = {{1, 1.0}, {3, 1.0}, {5, 0.5}, {15, 0.5}};
    for (auto [d, w] : terms) expect += w * remainder_eps(d, lx, -4, m);
    CHECK(remainder_R(lx, 10, 15, -4, m) == doctest::Approx(expect));
    CHECK(remainder_R(lx, 3, 15, -4, m) == doctest::Approx(remainder_eps(1, lx, -4, m) + remainder_eps(3, lx, -4, m) + 0.5 * remainder_eps(5, lx, -4, m)));
    double prev = 1e9;
    for (double l : log_grid(2, 1e4, 40)) {
        const double r = remainder_R(l, 100, 15015, -4, m);
        CHECK(r <= prev);
        prev = r;
    }

    const double z = std::exp(std::exp(1.0));
    m.eta_thm = 0.25;
    CHECK(level_of_distribution_log(z, m) == doctest::Approx(std::log(z) * 2));
    ErrorModel small = m;
    small.eta_thm = 0.01;
    CHECK(level_of_distribution_log(1000, small) == doctest::Approx(std::log(1000.0) * 10 * std::log(std::log(1000.0))));
    CHECK(level_of_distribution(1000, small) > level_of_distribution(1000, m));
    CHECK_THROWS_AS(level_of_distribution(2, m), DomainError);
}

TEST_CASE("Corollary 1.4 regime") {
    const auto r = cor14_check(2.0, {std::log(1e2), std::log(1e3), std::log(1e4), std::log(1e6)}, {1, 2, 4});
    CHECK(r.configs == 12);
    CHECK(r.c_A > 0);
    CHECK(r.holds);
}

TEST_CASE("x formatting and sweeps") {
    CHECK(format_x(std::log(1e9)) == "1.000000e+9");
    CHECK(format_x(1e5).find("e+43429") != std::string::npos);
    const auto rows = bounds_sweep(model(1e3, 2), 3 * std::log(1e3), 30 * std::log(1e3), 20);
    REQUIRE(rows.size() == 20);
    CHECK(rows.front().regime == "classical");
    std::ostringstream out;
    write_sweep_csv(out, rows);
    CHECK(out.str().rfind("x,eta,classical_error,siegel_error,main_floor,regime\n", 0) == 0);
    CHECK_THROWS_AS(bounds_sweep(model(1e3, 2), 10, 5, 20), ConfigError);
    const auto srows = bounds_sweep(model(1e3, 2, SiegelData::from_lambda(1e-3, std::log(1e3))), 3 * std::log(1e3), 400 * std::log(1e3), 10);
    CHECK(srows.back().regime == "siegel-2");
    CHECK(srows.back().main_floor.has_value());
}
