#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cheb/arith.hpp"
#include "cheb/siegel.hpp"

namespace cheb {

/// Field invariants and the explicit constants of the bound calculus.
/// Every x is passed as log x: the ranges of interest overflow a double.
struct ErrorModel {
    double D_K = 1.0;
    double Qcal = 1.0;
    int n_K = 1;
    std::optional<double> Q_given;  // overrides D_K Qcal n_K^{n_K}

    double c_ZFR = 0.05;
    double c_ZDE = 10.0;
    double c_DH = 1.0;
    double vartheta = 1.0;
    double gamma = 1.0;
    double eta_thm = 1.0;
    double c_1 = 1.0;
    double c_2 = 0.05 / 8;
    double c_Stark = 1.0;
    double c_SZ_err = 1.0;
    double c_SZ_size = 1.0;
    double c_SZ_lambda_size = 1.0;

    SiegelData siegel;

    double log_Q() const;
    double Q() const;
    /// Throws ConfigError unless Q >= 2, n_K >= 1, c_ZDE >= 1 and all constants are positive.
    void validate() const;
};

double delta_zfr(double t, const ErrorModel& m);
/// Zero-repulsion width; StateError without Siegel data.
double delta_repulsion(double t, const ErrorModel& m);
/// max(delta_zfr, delta_repulsion), or delta_zfr alone without Siegel data.
double delta_combined(double t, const ErrorModel& m);

double B1(double T, const ErrorModel& m);
double nu1(const ErrorModel& m);

double stark_floor(const ErrorModel& m);
/// False (with a warning on stderr when warn is set) if lambda1 < c_Stark Q^{-2}.
bool stark_consistent(const ErrorModel& m, bool warn = true);

struct EtaResult {
    double eta = 0;
    double u_star = 0;  // minimising log t
    double u_max = 0;   // right end of the searched range
};

/// inf over t >= 3 of Delta(t) log x + log t, Delta = delta_combined unless
/// classical_only. Dense scan on u = log t, golden-section refinement, and an
/// endpoint audit extending the range until the objective's lower bound u
/// exceeds the best value found.
EtaResult eta(double log_x, const ErrorModel& m, bool classical_only = false);

/// Piecewise lower bound for eta: c log x / log Q below the crossover, sqrt(c log x / n_K) above.
double eta_piecewise_bound(double log_x, const ErrorModel& m);
/// log x at which the two branches meet: (log Q)^2 / (c_ZFR n_K).
double eta_crossover_log_x(const ErrorModel& m);

double classical_error(double log_x, const ErrorModel& m);
/// exp(-c_2 log x / log Q) + exp(-sqrt(c_2 log x / n_K)); requires log x >= c_1 log Q.
double thm11_error(double log_x, const ErrorModel& m);

struct SiegelErrorResult {
    double regime2 = 0;  // lambda1^10 form
    double regime3 = 0;  // exp(-10 sqrt(log(1/lambda1))) form
    int regime = 2;      // selected by lambda1 >= Q^{-20/n_K}
    double value = 0;    // selected regime's value
    double threshold = 0;  // Q^{-20/n_K}
    // The same quantities as logs; the values themselves may underflow.
    double log_regime2 = 0, log_regime3 = 0, log_value = 0, log_threshold = 0;
};

/// Appendix A error shapes. ConfigError naming the inequality when
/// lambda1 > c_SZ_lambda_size or Q > x^{1/c_SZ_size}; StateError without Siegel data.
SiegelErrorResult siegel_error(double log_x, const ErrorModel& m);

struct MainFloorResult {
    double value_over_x = 0;  // (x - theta1 x^beta1 / beta1) / x
    double nu1 = 1;
    int case_id = 0;           // 0: no zero, 1: (1 - beta1) log x < 1, 2: otherwise
    double case_bound = 0;     // lower bound for x (1 - x^{-(1-beta1)}/beta1) / x used in the check
    bool case_holds = false;
    double literal_bound = 0;  // case 1: (1 - beta1) log(x/e), as written in the derivation
    bool literal_holds = false;
    double ratio = 0;          // value_over_x / nu1
    bool stark_ok = true;      // nu1 >= c_Stark Q^{-2} >= c_Stark x^{-1/4}
};

/// Requires log x >= 36 c_ZDE log Q (ConfigError otherwise).
MainFloorResult main_term_floor(double log_x, const ErrorModel& m);

/// max over T of B1(T) T^{-1/4} / nu1.
double b1_supremum_constant(const ErrorModel& m, const std::vector<double>& Ts);

double remainder_eps(u64 d, double log_x, i64 D, const ErrorModel& m);
/// sum over d | P with d < R^2 of tau(d)/phi(d) eps_d(x).
double remainder_R(double log_x, double R, u64 P, i64 D, const ErrorModel& m);

/// log R for R = z^{(1/sqrt(eta_thm)) log log z}; DomainError when log log z <= 0.
double level_of_distribution_log(double z, const ErrorModel& m);
double level_of_distribution(double z, const ErrorModel& m);

struct Cor14Result {
    double A = 2;
    double c_A = 0;  // smallest c with log x >= c log Q log log Q => classical_error <= (log x)^{-A}
    double worst_log_Q = 0;
    int worst_n_K = 0;
    int configs = 0;
    bool holds = false;  // implication re-checked above c_A on every configuration
};

/// Minimal c_A over a (Q, n_K) grid, with log Q standing in for log D.
Cor14Result cor14_check(double A, const std::vector<double>& log_Qs, const std::vector<int>& n_Ks, const ErrorModel& base = {});

/// x written from log x, usable past the double range.
std::string format_x(double log_x);

struct SweepRow {
    double log_x = 0;
    double eta = 0;
    double classical_error = 0;
    std::optional<double> siegel_error;
    std::optional<double> main_floor;
    std::string regime;
};

/// Log-spaced sweep of log x over [lo, hi].
std::vector<SweepRow> bounds_sweep(const ErrorModel& m, double log_x_lo, double log_x_hi, int points);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace cheb
