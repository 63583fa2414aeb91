#include "cheb/weights.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cheb/errors.hpp"
#include "cheb/numerics.hpp"

namespace cheb {
namespace {

using cplx = std::complex<double>;

constexpr double kSeriesCutoff = 1e-4;

// e^u - 1 without cancellation for small |u|.
cplx expm1_complex(cplx u) {
    const double a = u.real(), b = u.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// log((e^u - 1)/u), principal branch of each piece.
cplx log_expm1_ratio(cplx u) {
    if (std::abs(u) < kSeriesCutoff) return std::log(expm1_ratio_series(u));
    if (u.real() > 1.0) return u + std::log(-expm1_complex(-u)) - std::log(u);
    return std::log(expm1_complex(u)) - std::log(u);
}

mpz_class binom(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Bernstein coefficients of the Irwin-Hall CDF of n uniforms on piece [j, j+1].
std::vector<double> irwin_hall_piece(unsigned n, unsigned j) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    std::vector<mpq_class> mono(n + 1, 0);
    for (unsigned k = 0; k <= j; ++k) {
        const mpz_class ck = (k % 2 ? -1 : 1) * binom(n, k);
        const long shift = static_cast<long>(j) - static_cast<long>(k);
        mpz_class pw = 1;  // shift^(n - m), built from m = n downwards
        for (unsigned m = n + 1; m-- > 0;) {
            mono[m] += mpq_class(ck * binom(n, m) * pw);
            pw *= shift;
        }
    }
    std::vector<double> bern(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        mpq_class b = 0;
        for (unsigned m = 0; m <= i; ++m) b += mono[m] * mpq_class(binom(i, m), binom(n, m));
        b /= mpq_class(fact);
        bern[i] = b.get_d();
    }
    return bern;
}

double de_casteljau(std::vector<double> b, double s) {
    const double r = 1.0 - s;
    for (std::size_t n = b.size(); n-- > 1;) {
        for (std::size_t i = 0; i < n; ++i) b[i] = r * b[i] + s * b[i + 1];
    }
    return b[0];
}

std::string fmt_point(double sigma, double t) {
    std::ostringstream o;
    o << "s=" << sigma << (t < 0 ? "" : "+") << t << "i";
    return o.str();
}

} // namespace

double WeightParams::x() const { return std::exp(log_x); }

void WeightParams::validate() const {
    if (!(log_x >= std::log(3.0))) throw DomainError("weights: x must be >= 3");
    if (!(epsilon > 0.0 && epsilon < 0.25)) throw DomainError("weights: epsilon must lie in (0, 1/4)");
    if (ell < 1) throw DomainError("weights: ell must be a positive integer");
}

WeightParams WeightParams::from_x(double x, double epsilon, int ell) {
    WeightParams p{std::log(x), epsilon, ell};
    p.validate();
    return p;
}

WeightParams WeightParams::from_parameter_choices(double log_x, int n_K, int c_ZDE) {
    WeightParams p;
    p.log_x = log_x;
    p.ell = 4 * c_ZDE * n_K;
    p.epsilon = 8.0 * p.ell * std::exp(-log_x / (8.0 * p.ell));
    p.validate();
    return p;
}

cplx expm1_ratio_series(cplx u) {
    // sum_{k=0}^{9} u^k / (k+1)!, Horner form.
    cplx acc = 1.0 / 3628800.0;
    double fact = 3628800.0;
    for (int k = 9; k-- > 0;) {
        fact /= (k + 2);
        acc = acc * u + 1.0 / fact;
    }
    return acc;
}

cplx expm1_ratio_direct(cplx u) { return expm1_complex(u) / u; }

cplx expm1_ratio(cplx u) { return std::abs(u) < kSeriesCutoff ? expm1_ratio_series(u) : expm1_ratio_direct(u); }

cplx log_laplace_F(cplx z, const WeightParams& p) {
    const double A = p.A();
    const double L = 0.5 + 2.0 * p.ell * A;
    return -(1.0 + 2.0 * p.ell * A) * z + std::log(L) + log_expm1_ratio(L * z) +
           static_cast<double>(p.ell) * log_expm1_ratio(2.0 * A * z);
}

cplx laplace_F(cplx z, const WeightParams& p) { return std::exp(log_laplace_F(z, p)); }

WeightFunction::WeightFunction(WeightParams p) : p_(p) {
    p_.validate();
    if (p_.ell <= kMaxDegree) {
        for (int j = 0; j < p_.ell; ++j) bern_.push_back(irwin_hall_piece(static_cast<unsigned>(p_.ell), static_cast<unsigned>(j)));
    }
}

double WeightFunction::irwin_hall_cdf(double y) const {
    if (!has_f()) throw StateError("weights: f is not represented for ell > 64");
    if (y <= 0) return 0.0;
    if (y >= p_.ell) return 1.0;
    const auto j = std::min(static_cast<int>(std::floor(y)), p_.ell - 1);
    return de_casteljau(bern_[static_cast<std::size_t>(j)], y - j);
}

double WeightFunction::f(double t) const {
    if (!has_f()) throw StateError("weights: f is not represented for ell > 64");
    const double A = p_.A();
    const double y1 = (1.0 + 2.0 * p_.ell * A - t) / (2.0 * A);
    const double y2 = (0.5 - t) / (2.0 * A);
    // At most one of the two CDF arguments lies inside (0, ell).
    if (y1 >= p_.ell) return irwin_hall_cdf(p_.ell - y2);
    return irwin_hall_cdf(y1);
}

std::vector<double> WeightFunction::breakpoints() const {
    const double w = 2.0 * p_.A();
    std::vector<double> out;
    for (int k = 0; k <= p_.ell; ++k) out.push_back(support_lo() + k * w);
    out.back() = 0.5;
    for (int k = 0; k <= p_.ell; ++k) out.push_back(1.0 + k * w);
    out.back() = support_hi();
    return out;
}

cplx WeightFunction::F_quadrature(cplx z, double rel_tol) const {
    const auto bp = breakpoints();
    cplx total = 0;
    auto g = [&](double t) { return f(t) * std::exp(-z * t); };
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        const double a = bp[i], b = bp[i + 1];
        if (b <= a) continue;
        total += numerics::integrate_complex(g, a, b, rel_tol, 0.0, 200000).value;
    }
    return total;
}

WeightReport verify_bounds(const WeightParams& p, const WeightGrid& grid, double mainterm_C_limit) {
    p.validate();
    WeightReport rep;
    rep.params = p;
    rep.mainterm_C_limit = mainterm_C_limit;
    const double lx = p.log_x;
    const double llx = std::log(lx);
    const double eps = p.epsilon;
    const double ell = p.ell;
    constexpr double kTol = 1e-12;

    auto record = [](BoundCheck& c, double margin, const std::string& at) {
        ++c.points;
        if (margin < -kTol) ++c.violations;
        if (c.points == 1 || margin < c.worst_log_margin) {
            c.worst_log_margin = margin;
            c.worst_at = at;
        }
    };

    const double alphas[3] = {0.0, ell / 2.0, ell};
    BoundCheck iv[3] = {{"iv_alpha_0"}, {"iv_alpha_half_ell"}, {"iv_alpha_ell"}};
    BoundCheck crude{"iv_crude"};
    for (double sigma : grid.sigmas) {
        for (double t : grid.ts) {
            const cplx s(sigma, t);
            const double logF = log_laplace_F(-s * lx, p).real();
            const double as = std::abs(s);
            const double base = sigma * eps + sigma * lx - std::log(as) - llx + std::log1p(std::exp(-sigma * lx / 2));
            for (int k = 0; k < 3; ++k) {
                const double bound = base + alphas[k] * (std::log(2.0 * ell / eps) - std::log(as));
                record(iv[k], bound - logF, fmt_point(sigma, t));
            }
            record(crude, sigma * eps + sigma * lx - logF, fmt_point(sigma, t));
        }
    }
    for (auto& c : iv) rep.checks.push_back(c);
    rep.checks.push_back(crude);

    BoundCheck vi{"vi_line_minus_half"};
    for (double t0 : grid.line_ts) {
        for (double t : {t0, -t0}) {
            const cplx s(-0.5, t);
            const double logF = log_laplace_F(-s * lx, p).real();
            const double bound = std::log(5.0) - lx / 4 - llx + ell * std::log(2.0 * ell / eps) - (ell / 2) * std::log(0.25 + t * t);
            record(vi, bound - logF, fmt_point(-0.5, t));
            if (t0 == 0) break;
        }
    }
    rep.checks.push_back(vi);

    rep.F0 = laplace_F(0.0, p).real();
    rep.F0_expected = 0.5 + eps / lx;
    rep.F0_in_range = rep.F0 > 0.5 && rep.F0 < 0.75;

    rep.mainterm_C = 0;
    if (lx >= std::log(10.0)) {
        // Everything normalised by x / log x.
        auto Fn = [&](double sigma) { return std::exp(log_laplace_F(-sigma * lx, p).real() - lx + llx); };
        const double F1 = Fn(1.0);
        for (double sp : grid.sigma_primes) {
            if (!(sp > 0.75 && sp <= 1.0)) continue;
            const double Fs = Fn(sp);
            const double ms = std::exp((sp - 1.0) * lx) / sp;
            for (int sign : {1, -1}) {
                const double main = 1.0 + sign * ms;
                const double resid = std::abs(F1 + sign * Fs - main);
                const double denom = eps * std::abs(main) + std::exp(-lx / 2);
                const double C = resid / denom;
                if (C > rep.mainterm_C) {
                    rep.mainterm_C = C;
                    std::ostringstream o;
                    o << "sigma'=" << sp << (sign > 0 ? " (+)" : " (-)");
                    rep.mainterm_worst_at = o.str();
                }
            }
        }
    }

    bool ok = rep.F0_in_range && std::abs(rep.F0 - rep.F0_expected) <= 1e-10 * rep.F0_expected;
    for (const auto& c : rep.checks) ok = ok && c.violations == 0;
    ok = ok && rep.mainterm_C <= mainterm_C_limit;
    rep.pass = ok;
    return rep;
}

} // namespace cheb
