#include "cheb/errorterms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "cheb/errors.hpp"

namespace cheb {
namespace {

constexpr double kLog3 = 1.0986122886681098;

// log(e^a + e^b) without overflow.
double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_Qt(double u, const ErrorModel& m) { return m.log_Q() + m.n_K * u; }

double zfr_u(double u, const ErrorModel& m) { return m.c_ZFR / log_Qt(u, m); }

double repulsion_u(double u, const ErrorModel& m) {
    const double L = log_Qt(u, m);
    const double y = *m.siegel.one_minus_beta * L;
    return std::min(0.5, m.c_DH * -std::log(y) / L);
}

double combined_u(double u, const ErrorModel& m, bool classical_only) {
    const double d = zfr_u(u, m);
    if (classical_only || !m.siegel.present()) return d;
    return std::max(d, repulsion_u(u, m));
}

void require_t(double t) {
    if (!(t >= 3.0)) throw DomainError("errorterms: t must be >= 3");
}

} // namespace

void SiegelData::validate() const {
    if (!present()) {
        if (theta1 != 0) throw DomainError("chebotarev: theta1 must be 0 when beta1 is absent");
        return;
    }
    if (!(*one_minus_beta > 0.0 && *one_minus_beta < 0.5)) throw DomainError("chebotarev: beta1 must lie in (1/2, 1)");
    if (theta1 != 1 && theta1 != -1) throw DomainError("chebotarev: theta1 must be +1 or -1 when beta1 is present");
}

SiegelData SiegelData::from_beta(double beta1, int theta1) {
    SiegelData s{1.0 - beta1, theta1};
    s.validate();
    return s;
}

SiegelData SiegelData::from_lambda(double lambda1, double log_Q, int theta1) {
    SiegelData s{lambda1 / log_Q, theta1};
    s.validate();
    return s;
}

double ErrorModel::log_Q() const {
    if (Q_given) return std::log(*Q_given);
    return std::log(D_K) + std::log(Qcal) + n_K * std::log(static_cast<double>(n_K));
}

double ErrorModel::Q() const { return std::exp(log_Q()); }

void ErrorModel::validate() const {
    if (n_K < 1) throw ConfigError("errorterms: n_K must be >= 1");
    if (!(D_K >= 1.0) || !(Qcal >= 1.0)) throw ConfigError("errorterms: D_K and Qcal must be >= 1");
    if (!(log_Q() >= std::log(2.0) - 1e-12)) throw ConfigError("errorterms: Q must be >= 2");
    if (!(c_ZDE >= 1.0)) throw ConfigError("errorterms: c_ZDE must be >= 1");
    for (double c : {c_ZFR, c_DH, vartheta, gamma, eta_thm, c_1, c_2, c_Stark, c_SZ_err, c_SZ_size, c_SZ_lambda_size}) {
        if (!(c > 0.0)) throw ConfigError("errorterms: constants must be positive");
    }
    siegel.validate();
}

double delta_zfr(double t, const ErrorModel& m) {
    require_t(t);
    return zfr_u(std::log(t), m);
}

double delta_repulsion(double t, const ErrorModel& m) {
    require_t(t);
    if (!m.siegel.present()) throw StateError("errorterms: zero repulsion needs Siegel data");
    return repulsion_u(std::log(t), m);
}

double delta_combined(double t, const ErrorModel& m) {
    require_t(t);
    return combined_u(std::log(t), m, false);
}

double B1(double T, const ErrorModel& m) {
    if (!(T >= 1.0)) throw DomainError("errorterms: T must be >= 1");
    if (!m.siegel.present()) return 1.0;
    return std::min(1.0, *m.siegel.one_minus_beta * log_Qt(std::log(T), m));
}

double nu1(const ErrorModel& m) {
    return m.siegel.present() ? m.siegel.lambda1(m.log_Q()) : 1.0;
}

double stark_floor(const ErrorModel& m) { return m.c_Stark * std::exp(-2.0 * m.log_Q()); }

bool stark_consistent(const ErrorModel& m, bool warn) {
    if (!m.siegel.present()) return true;
    const double lam = m.siegel.lambda1(m.log_Q());
    // Compare in logs: both sides can underflow.
    const bool ok = std::log(lam) >= std::log(m.c_Stark) - 2.0 * m.log_Q();
    if (!ok && warn) {
        std::cerr << "warning: errorterms: lambda1 = " << lam << " is below the Stark floor c_Stark Q^-2\n";
    }
    return ok;
}

EtaResult eta(double log_x, const ErrorModel& m, bool classical_only) {
    if (!(log_x >= std::log(2.0))) throw DomainError("errorterms: x must be >= 2");
    auto phi = [&](double u) { return combined_u(u, m, classical_only) * log_x + u; };

    // phi(u) >= u, so nothing right of phi(log 3) can improve on u = log 3.
    double U = std::max(kLog3, 10.0 * std::sqrt(m.c_ZFR * log_x / m.n_K));
    U = std::max(U, phi(kLog3));

    constexpr int N = 4000;
    std::vector<double> us(N + 1);
    for (int i = 0; i <= N; ++i) {
        const double s = static_cast<double>(i) / N;
        us[i] = kLog3 + (U - kLog3) * s * s;
    }
    int best = 0;
    double best_val = phi(us[0]);
    for (int i = 1; i <= N; ++i) {
        const double v = phi(us[i]);
        if (v < best_val) best_val = v, best = i;
    }

    double lo = us[std::max(best - 1, 0)];
    double hi = us[std::min(best + 1, N)];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = phi(a), fb = phi(b);
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        if (fa < fb) {
            hi = b, b = a, fb = fa;
            a = hi - g * (hi - lo), fa = phi(a);
        } else {
            lo = a, a = b, fa = fb;
            b = lo + g * (hi - lo), fb = phi(b);
        }
    }
    EtaResult r;
    r.u_star = us[best];
    r.eta = best_val;
    for (double u : {lo, hi, 0.5 * (lo + hi)}) {
        const double v = phi(u);
        if (v < r.eta) r.eta = v, r.u_star = u;
    }
    // Endpoint audit.
    for (double u : {kLog3, U}) {
        const double v = phi(u);
        if (v < r.eta) r.eta = v, r.u_star = u;
    }
    r.u_max = U;
    return r;
}

double eta_crossover_log_x(const ErrorModel& m) {
    const double lq = m.log_Q();
    return lq * lq / (m.c_ZFR * m.n_K);
}

double eta_piecewise_bound(double log_x, const ErrorModel& m) {
    if (log_x <= eta_crossover_log_x(m)) return m.c_ZFR * log_x / m.log_Q();
    return std::sqrt(m.c_ZFR * log_x / m.n_K);
}

double classical_error(double log_x, const ErrorModel& m) {
    if (!(log_x >= std::log(2.0))) throw DomainError("errorterms: x must be >= 2");
    return std::exp(-m.c_ZFR * log_x / m.log_Q()) + std::exp(-std::sqrt(m.c_ZFR * log_x / m.n_K));
}

double thm11_error(double log_x, const ErrorModel& m) {
    if (!(log_x >= m.c_1 * m.log_Q())) throw ConfigError("errorterms: thm11_error requires x >= Q^{c_1}");
    return std::exp(-m.c_2 * log_x / m.log_Q()) + std::exp(-std::sqrt(m.c_2 * log_x / m.n_K));
}

SiegelErrorResult siegel_error(double log_x, const ErrorModel& m) {
    if (!m.siegel.present()) throw StateError("errorterms: siegel_error needs Siegel data");
    const double lq = m.log_Q();
    const double lam = m.siegel.lambda1(lq);
    if (!(lam <= m.c_SZ_lambda_size)) throw ConfigError("errorterms: siegel_error requires lambda1 <= c_SZ_lambda_size");
    if (!(lq <= log_x / m.c_SZ_size)) throw ConfigError("errorterms: siegel_error requires Q <= x^{1/c_SZ_size}");

    SiegelErrorResult r;
    const double log_inner = log_add(-m.c_DH * log_x / (2.0 * lq), -m.c_SZ_err * std::sqrt(log_x / m.n_K));
    r.log_regime2 = log_add(-0.5 * log_x, 10.0 * std::log(lam) + log_inner);
    r.log_regime3 = log_add(-0.5 * log_x, -10.0 * std::sqrt(-std::log(lam)) + log_inner);
    r.log_threshold = -20.0 * lq / m.n_K;
    r.regime = std::log(lam) >= r.log_threshold ? 2 : 3;
    r.log_value = r.regime == 2 ? r.log_regime2 : r.log_regime3;
    r.regime2 = std::exp(r.log_regime2);
    r.regime3 = std::exp(r.log_regime3);
    r.value = std::exp(r.log_value);
    r.threshold = std::exp(r.log_threshold);
    return r;
}

MainFloorResult main_term_floor(double log_x, const ErrorModel& m) {
    if (!(log_x >= 36.0 * m.c_ZDE * m.log_Q())) throw ConfigError("errorterms: main_term_floor requires x >= Q^{36 c_ZDE}");
    MainFloorResult r;
    r.nu1 = nu1(m);
    if (!m.siegel.present()) {
        r.case_id = 0;
        r.value_over_x = 1.0;
        r.case_bound = 1.0;
        r.literal_bound = 1.0;
    } else {
        const double d = *m.siegel.one_minus_beta;
        const double beta = m.siegel.beta1();
        // x - theta1 x^beta / beta >= x (1 - x^{-(1-beta)} / beta) for either sign.
        const double e = std::exp(-d * log_x);
        r.value_over_x = 1.0 - m.siegel.theta1 * e / beta;
        const double floor_val = 1.0 - e / beta;
        if (d * log_x < 1.0) {
            r.case_id = 1;
            r.literal_bound = d * (log_x - 1.0);
            // 1 - e^{-t} >= (1 - 1/e) t on [0, 1], and e^{-t} (1/beta - 1) <= d / beta.
            r.case_bound = (1.0 - std::exp(-1.0)) * d * log_x - d / beta;
        } else {
            r.case_id = 2;
            r.literal_bound = 1.0 - 2.0 * std::exp(-1.0);
            r.case_bound = r.literal_bound;
        }
        r.literal_holds = floor_val >= r.literal_bound - 1e-15;
        r.case_holds = floor_val >= r.case_bound - 1e-15 && r.value_over_x >= floor_val - 1e-15;
        r.ratio = r.value_over_x / r.nu1;
        r.stark_ok = stark_consistent(m, false) && std::log(m.c_Stark) - 2.0 * m.log_Q() >= std::log(m.c_Stark) - 0.25 * log_x;
        return r;
    }
    r.literal_holds = true;
    r.case_holds = true;
    r.ratio = r.value_over_x / r.nu1;
    return r;
}

double b1_supremum_constant(const ErrorModel& m, const std::vector<double>& Ts) {
    double C = 0;
    const double nu = nu1(m);
    for (double T : Ts) C = std::max(C, B1(T, m) * std::pow(T, -0.25) / nu);
    return C;
}

double remainder_eps(u64 d, double log_x, i64 D, const ErrorModel& m) {
    if (d == 0) throw DomainError("errorterms: d must be positive");
    if (!(log_x >= std::log(3.0))) throw DomainError("errorterms: x must be >= 3");
    const double ldD = std::log(static_cast<double>(d)) + std::log(std::fabs(static_cast<double>(D)));
    return std::exp(-m.vartheta * log_x / ldD) + std::exp(-std::sqrt(m.vartheta * log_x));
}

double remainder_R(double log_x, double R, u64 P, i64 D, const ErrorModel& m) {
    double total = 0;
    for (u64 d : divisors(P)) {
        if (!(static_cast<double>(d) < R * R)) continue;
        total += static_cast<double>(tau(d)) / static_cast<double>(euler_phi(d)) * remainder_eps(d, log_x, D, m);
    }
    return total;
}

double level_of_distribution_log(double z, const ErrorModel& m) {
    if (!(z >= 3.0)) throw DomainError("errorterms: z must be >= 3");
    const double llz = std::log(std::log(z));
    if (!(llz > 0.0)) throw DomainError("errorterms: log log z must be positive");
    return std::log(z) * llz / std::sqrt(m.eta_thm);
}

double level_of_distribution(double z, const ErrorModel& m) { return std::exp(level_of_distribution_log(z, m)); }

Cor14Result cor14_check(double A, const std::vector<double>& log_Qs, const std::vector<int>& n_Ks, const ErrorModel& base) {
    Cor14Result res;
    res.A = A;
    for (double lq : log_Qs) {
        for (int n : n_Ks) {
            ErrorModel m = base;
            m.Q_given = std::exp(lq);
            m.n_K = n;
            m.siegel = {};
            const double scale = lq * std::log(lq);
            if (!(scale > 0)) continue;
            auto fails = [&](double lx) { return std::log(classical_error(lx, m)) > -A * std::log(lx); };
            // Largest log x on a fine log grid where the error still exceeds (log x)^{-A},
            // then bisection up to the next grid point, which satisfies the bound.
            double worst = 0, next = 0;
            const double lo = std::log(scale) - 5.0, hi = std::log(scale) + 25.0;
            constexpr int N = 6000;
            for (int i = 0; i <= N; ++i) {
                const double lx = std::exp(lo + (hi - lo) * i / N);
                if (lx < std::log(2.0)) continue;
                if (fails(lx)) worst = lx, next = std::exp(lo + (hi - lo) * (i + 1) / N);
            }
            if (worst > 0) {
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (worst + next);
                    (fails(mid) ? worst : next) = mid;
                }
            }
            const double cA = next / scale;
            if (cA > res.c_A) {
                res.c_A = cA;
                res.worst_log_Q = lq;
                res.worst_n_K = n;
            }
            ++res.configs;
        }
    }
    // Confirm the implication with the found constant, on a grid above the threshold.
    res.holds = true;
    for (double lq : log_Qs) {
        for (int n : n_Ks) {
            ErrorModel m = base;
            m.Q_given = std::exp(lq);
            m.n_K = n;
            m.siegel = {};
            const double start = std::max(res.c_A * lq * std::log(lq), 1.0) * (1.0 + 1e-9);
            for (int i = 0; i <= 400; ++i) {
                const double lx = start * std::exp(20.0 * i / 400);
                if (std::log(classical_error(lx, m)) > -A * std::log(lx)) res.holds = false;
            }
        }
    }
    return res;
}

std::string format_x(double log_x) {
    const double l10 = log_x / std::log(10.0);
    double e = std::floor(l10);
    double mant = std::pow(10.0, l10 - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", mant);
    if (std::string(buf) == "10.000000") {
        mant /= 10.0;
        e += 1.0;
        std::snprintf(buf, sizeof buf, "%.6f", mant);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%se%+.0f", buf, e);
    return out;
}

std::vector<SweepRow> bounds_sweep(const ErrorModel& m, double log_x_lo, double log_x_hi, int points) {
    m.validate();
    if (!(log_x_lo >= std::log(2.0)) || !(log_x_hi >= log_x_lo) || points < 1) throw ConfigError("errorterms: bad sweep range");
    std::vector<SweepRow> rows;
    for (int i = 0; i < points; ++i) {
        const double frac = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        const double lx = std::exp(std::log(log_x_lo) + (std::log(log_x_hi) - std::log(log_x_lo)) * frac);
        SweepRow r;
        r.log_x = lx;
        r.eta = eta(lx, m).eta;
        r.classical_error = classical_error(lx, m);
        r.regime = "classical";
        if (m.siegel.present()) {
            try {
                const auto s = siegel_error(lx, m);
                r.siegel_error = s.value;
                r.regime = s.regime == 2 ? "siegel-2" : "siegel-3";
            } catch (const ConfigError&) {
                r.regime = "siegel-out-of-range";
            }
        }
        if (lx >= 36.0 * m.c_ZDE * m.log_Q()) r.main_floor = main_term_floor(lx, m).value_over_x;
        rows.push_back(r);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "x,eta,classical_error,siegel_error,main_floor,regime\n";
    char buf[64];
    for (const auto& r : rows) {
        out << format_x(r.log_x);
        std::snprintf(buf, sizeof buf, ",%.10e,%.10e,", r.eta, r.classical_error);
        out << buf;
        if (r.siegel_error) {
            std::snprintf(buf, sizeof buf, "%.10e", *r.siegel_error);
            out << buf;
        }
        out << ',';
        if (r.main_floor) {
            std::snprintf(buf, sizeof buf, "%.10e", *r.main_floor);
            out << buf;
        }
        out << ',' << r.regime << '\n';
    }
}

} // namespace cheb
