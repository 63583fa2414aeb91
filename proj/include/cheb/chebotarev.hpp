#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cheb/betasieve.hpp"
#include "cheb/densities.hpp"
#include "cheb/errorterms.hpp"
#include "cheb/prime_cache.hpp"
#include "cheb/quadforms.hpp"
#include "cheb/rational.hpp"
#include "cheb/siegel.hpp"
#include "cheb/weights.hpp"

namespace cheb {

/// A reduced class of discriminant D, by index into its class list.
struct ClassTarget {
    i64 D = 0;
    ClassList class_list;
    std::size_t target = 0;

    /// Throws DomainError unless D is a negative discriminant and target < h(D).
    static ClassTarget make(i64 D, std::size_t target = 0);
    const Form& form() const { return class_list.forms[target]; }
    Rational ratio() const { return Rational(1, static_cast<long>(class_list.h())); }
};

/// Lattice points (u, v) with f(u, v) an odd prime <= X. With P > 1 only
/// points with gcd(u v, P) = 1 are counted. Rows u = w (mod workers) go to
/// worker w; the total does not depend on the worker count.
u64 lattice_prime_count(const Form& f, u64 X, unsigned workers = 1, u64 P = 1);

/// Same count by direct enumeration and is_prime, for cross-checks.
u64 lattice_prime_count_naive(const Form& f, u64 X, u64 P = 1);

/// Number of (u, v) with f(u, v) = n.
u64 representation_count(const Form& f, u64 n);

/// Prime ideals of norm p <= x (odd p not dividing D) in the target class.
u64 pi_C(double x, const ClassTarget& t, unsigned workers = 1);
/// pi_C for every class of D, indexed like class_representatives(D).
std::vector<u64> pi_all(double x, i64 D, unsigned workers = 1);
/// pi_C recomputed by a prime_to_class scan over primes.
u64 pi_C_scan(double x, const ClassTarget& t);

/// One prime-ideal power of norm p^j in the von Mangoldt sum, weighted by
/// the log of the prime ideal's norm.
struct PsiStep {
    u64 norm = 0;
    double weight = 0;
    std::size_t cls = 0;
    unsigned power = 1;  // j
};

/// All prime-ideal powers of norm <= x, sorted by norm then class. Split p
/// with class g contribute log p at p^j to g^j and to g^{-j}; inert p
/// contribute 2 log p at p^{2j} to the principal class; ramified primes and
/// p = 2 are skipped.
std::vector<PsiStep> psi_steps(double x, i64 D);

double psi_C(double x, const ClassTarget& t);
double psi_C(const std::vector<PsiStep>& steps, double x, std::size_t cls);
/// Same sum restricted to j = 1: the prime ideals themselves.
double theta_C(double x, const ClassTarget& t);

/// sum over prime-ideal powers in the class of log N f(log N / log x).
double psi_C_smooth(const WeightFunction& wf, const ClassTarget& t);

struct UnsmoothReport {
    double psi_x = 0, psi_smooth = 0, psi_upper = 0;  // psi_C(x), psi~, psi_C(x e^eps)
    double C = 0;            // smallest C with psi_C(x) <= psi~ + C sqrt(x)
    bool upper_holds = false;  // psi~ <= psi_C(x e^eps)
    double C_deviation = 0;  // |psi~ - psi_C(x)| / (sqrt(x) + eps x)
};

UnsmoothReport unsmooth_check(const WeightFunction& wf, const ClassTarget& t);

/// ratio (Li(x) - theta1 Li(x^beta1)), the second term omitted without beta1.
double main_term(double x, const Rational& ratio, const SiegelData& s);
double main_term(double x, double ratio, const SiegelData& s);

/// (1/|stab f|) #{(u, v): d1 | u, d2 | v, f(u, v) an odd prime <= x}.
double congruence_sum_A(const Form& f, u64 d1, u64 d2, double x, unsigned workers = 1);
/// Integer lattice count behind congruence_sum_A.
u64 congruence_count(const Form& f, u64 d1, u64 d2, double x, unsigned workers = 1);

struct Prediction {
    double value = 0;
    double budget = 0;  // eps_{d1 d2}(x) value + C sqrt(x) log x, C = 1
};

/// g'(d1) g''(d2) (Li(x) - Li(x^beta1)) / h(D). ConfigError when |d1 d2 D| > x^gamma.
Prediction congruence_sum_predicted(const Form& f, u64 d1, u64 d2, double x, const SiegelData& s, const ErrorModel& m);

struct SievedSum {
    i64 direct = 0;   // sum over points of theta'(gcd(u, P')) theta''(gcd(v, P''))
    i64 swapped = 0;  // sum over coprime (d1, d2) of lambda' lambda'' times the congruence count
    unsigned stab = 1;
    std::size_t pairs = 0;
    double value() const { return static_cast<double>(direct) / stab; }
};

/// S(x) by both evaluation orders; ConsistencyError when they differ.
SievedSum sieved_sum_S(const Form& f, const SieveWeights& w1, const SieveWeights& w2, double x, unsigned workers = 1);

/// Lattice points with f(u, v) an odd prime <= x and gcd(u v, P) = 1, divided by |stab f|.
double coprime_restricted_count(const Form& f, u64 P, double x, unsigned workers = 1);

struct ExperimentReport {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> config;
    double lhs = 0;
    double rhs = 0;
    double rel_error = 0;
    double budget = 0;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> notes;
};

struct Theorem15Options {
    double tolerance = 0.05;
    unsigned workers = 1;
    ErrorModel model;  // eta_thm drives the range checks
};

/// Coprime-restricted prime count against delta_f(P) (Li(x) - Li(x^beta1)) / h(D).
/// The ranges 3 <= z <= x^{eta/log log x} and 3 <= |D| <= x^{eta/log log z}
/// are checked with z raised to 3 when P has no prime factor above 2.
ExperimentReport theorem15_experiment(const Form& f, const SievingModulus& P, double x, const SiegelData& s,
                                      double A_target, const Theorem15Options& opt = {});

struct BridgeReport {
    double pi = 0;
    double psi_term = 0;  // psi_C(x) / log x
    double integral = 0;  // int_{sqrt x}^x psi_C(t) / (t log^2 t) dt
    double residual = 0;
    double scale = 0;     // log|D| + 2 sqrt(x) / log x
    double C = 0;
};

/// pi_C(x) against the psi_C integral identity, integrating the step function exactly.
BridgeReport pi_psi_bridge_check(double x, const ClassTarget& t);

struct LiIdentityReport {
    double lhs = 0, rhs = 0, residual = 0, scale = 0;  // scale = sqrt(x) / log x
    double C = 0;
};

/// x^s/(s log x) + int_{sqrt x}^x t^{s-1}/(s log^2 t) dt against Li(x^s).
LiIdentityReport li_identity_check(double x, double sigma);

struct EquidistributionRow {
    double x = 0;
    std::vector<u64> counts;
    double expected = 0;  // Li(x) / h(D)
};

std::vector<EquidistributionRow> equidistribution_table(i64 D, const std::vector<double>& xs, unsigned workers = 1);
void write_equidistribution_csv(std::ostream& out, const std::vector<EquidistributionRow>& rows);

} // namespace cheb
