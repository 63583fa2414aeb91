#include "cheb/chebotarev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "cheb/errors.hpp"
#include "cheb/kernels.hpp"
#include "cheb/numerics.hpp"

namespace cheb {
namespace {

constexpr u64 kMaxMaskModulus = u64{1} << 30;

void require_definite(const Form& f, const char* who) {
    if (f.a <= 0 || f.disc() >= 0) throw DomainError(std::string(who) + ": form must be positive definite");
}

u64 floor_x(double x) {
    if (!(x >= 0)) return 0;
    if (x >= 9.0e18) throw ConfigError("chebotarev: x out of range");
    return static_cast<u64>(std::floor(x));
}

// Li(y) allowing 1 < y < 2, where it is -int_y^2 dt / log t.
double li_signed(double y) {
    if (y >= 2.0) return li(y);
    auto g = [](double u) { return std::exp(u) / u; };
    return -numerics::integrate(g, std::log(y), std::log(2.0), 1e-14).value;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Bit r set iff gcd(r, P) = 1, for 0 <= r < P.
std::vector<u64> coprime_mask(u64 P) {
    if (P > kMaxMaskModulus) throw ResourceError("chebotarev: coprimality modulus too large for the residue mask");
    std::vector<u64> w(P / 64 + 1, 0);
    for (u64 r = 0; r < P; ++r) {
        if (std::gcd(r, P) == 1) w[r >> 6] |= u64{1} << (r & 63);
    }
    return w;
}

class FormIndex {
public:
    explicit FormIndex(const ClassList& cl) {
        for (std::size_t i = 0; i < cl.forms.size(); ++i) idx_.emplace(cl.forms[i], i);
    }
    std::size_t operator()(const Form& f) const { return idx_.at(reduce(f)); }

private:
    std::map<Form, std::size_t> idx_;
};

} // namespace

ClassTarget ClassTarget::make(i64 D, std::size_t target) {
    if (D >= 0 || !is_discriminant(D)) throw DomainError("chebotarev: D must be a negative discriminant");
    ClassTarget t{D, class_representatives(D), target};
    if (target >= t.class_list.h()) throw DomainError("chebotarev: class index out of range");
    return t;
}

u64 lattice_prime_count(const Form& f, u64 X, unsigned workers, u64 P) {
    require_definite(f, "chebotarev");
    if (X < 3) return 0;
    if (P == 0) throw ConfigError("chebotarev: coprimality modulus must be positive");
    P = radical(P);
    const auto cache = shared_primes(X);
    const std::vector<u64> mask = P > 1 ? coprime_mask(P) : std::vector<u64>{};
    const i64 U = u_bound(f, static_cast<i64>(X));
    workers = std::max(1u, workers);

    // f(-u, -v) = f(u, v): rows u > 0 count twice, row 0 once.
    auto run = [&](unsigned w) {
        u64 total = 0;
        for (i64 u = w; u <= U; u += workers) {
            if (P > 1 && std::gcd(static_cast<u64>(u), P) != 1) continue;
            const auto r = row_range(f, static_cast<i64>(X), u);
            if (!r) continue;
            const i64 lo = r->first;
            kernels::RowSpec row;
            row.val0 = f.eval(u, lo);
            row.d0 = f.b * u + f.c * (2 * lo + 1);
            row.dd = 2 * f.c;
            row.count = static_cast<u64>(r->second - lo + 1);
            row.x = X;
            row.prime_words = cache->words().data();
            if (P > 1) {
                row.adm_words = mask.data();
                row.adm_mod = P;
                row.r0 = static_cast<u64>(floor_mod(lo, static_cast<i64>(P)));
            }
            total += kernels::count_row(row) * (u == 0 ? 1 : 2);
        }
        return total;
    };

    if (workers == 1) return run(0);
    std::vector<u64> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { partial[w] = run(w); });
    for (auto& th : pool) th.join();
    return std::accumulate(partial.begin(), partial.end(), u64{0});
}

u64 lattice_prime_count_naive(const Form& f, u64 X, u64 P) {
    require_definite(f, "chebotarev");
    u64 total = 0;
    enumerate_represented(f, static_cast<double>(X), [&](i64 u, i64 v, i64 n) {
        if (n < 3 || !is_prime(static_cast<u64>(n))) return;
        if (P > 1 && std::gcd(static_cast<u64>(std::llabs(u * v)), P) != 1) return;
        ++total;
    });
    return total;
}

u64 representation_count(const Form& f, u64 n) {
    require_definite(f, "chebotarev");
    u64 total = 0;
    enumerate_represented(f, static_cast<double>(n), [&](i64, i64, i64 m) { total += static_cast<u64>(m) == n; });
    return total;
}

u64 pi_C(double x, const ClassTarget& t, unsigned workers) {
    const u64 X = floor_x(x);
    if (X < 3) return 0;
    const Form& f = t.form();
    u64 lattice = lattice_prime_count(f, X, workers);
    for (u64 q : prime_factors(static_cast<u64>(-t.D))) {
        if (q != 2 && q <= X) lattice -= representation_count(f, q);
    }
    const unsigned w = stab_order(t.D);
    if (lattice % w != 0) throw ConsistencyError("chebotarev: lattice count not divisible by the unit group order");
    return lattice / w;
}

std::vector<u64> pi_all(double x, i64 D, unsigned workers) {
    const auto cl = class_representatives(D);
    std::vector<u64> out;
    for (std::size_t i = 0; i < cl.h(); ++i) out.push_back(pi_C(x, ClassTarget{D, cl, i}, workers));
    return out;
}

u64 pi_C_scan(double x, const ClassTarget& t) {
    const u64 X = floor_x(x);
    if (X < 3) return 0;
    const auto cache = shared_primes(X);
    const FormIndex index(t.class_list);
    u64 total = 0;
    for (u64 p = 3; p <= X; p += 2) {
        if (!cache->test(p) || static_cast<u64>(-t.D) % p == 0) continue;
        const auto g = prime_to_class(p, t.D);
        if (!g) continue;
        total += index(*g) == t.target;
        total += index(inverse(*g)) == t.target;
    }
    return total;
}

std::vector<PsiStep> psi_steps(double x, i64 D) {
    const u64 X = floor_x(x);
    std::vector<PsiStep> steps;
    if (X < 3) return steps;
    const auto cl = class_representatives(D);
    const FormIndex index(cl);
    const auto cache = shared_primes(X);
    const u64 absD = static_cast<u64>(-D);
    for (u64 p = 3; p <= X; p += 2) {
        if (!cache->test(p) || absD % p == 0) continue;
        const double lp = std::log(static_cast<double>(p));
        const auto g = prime_to_class(p, D);
        if (g) {
            const Form gi = inverse(*g);
            Form cur = *g, cur_inv = gi;
            u64 n = p;
            for (unsigned j = 1;; ++j) {
                steps.push_back({n, lp, index(cur), j});
                steps.push_back({n, lp, index(cur_inv), j});
                if (n > X / p) break;
                n *= p;
                cur = compose(cur, *g);
                cur_inv = compose(cur_inv, gi);
            }
        } else if (p <= X / p) {
            u64 n = p * p;
            for (unsigned j = 2;; j += 2) {
                steps.push_back({n, 2.0 * lp, 0, j});
                if (n > X / (p * p)) break;
                n *= p * p;
            }
        }
    }
    std::sort(steps.begin(), steps.end(), [](const PsiStep& a, const PsiStep& b) {
        return a.norm != b.norm ? a.norm < b.norm : a.cls < b.cls;
    });
    return steps;
}

double psi_C(const std::vector<PsiStep>& steps, double x, std::size_t cls) {
    double s = 0;
    for (const auto& st : steps) {
        if (static_cast<double>(st.norm) > x) break;
        if (st.cls == cls) s += st.weight;
    }
    return s;
}

double psi_C(double x, const ClassTarget& t) { return psi_C(psi_steps(x, t.D), x, t.target); }

double theta_C(double x, const ClassTarget& t) {
    double s = 0;
    for (const auto& st : psi_steps(x, t.D)) {
        if (st.power == 1 && st.cls == t.target) s += st.weight;
    }
    return s;
}

double psi_C_smooth(const WeightFunction& wf, const ClassTarget& t) {
    const auto& p = wf.params();
    const double hi = std::exp(p.log_x * wf.support_hi());
    double s = 0;
    for (const auto& st : psi_steps(hi, t.D)) {
        if (st.cls != t.target) continue;
        s += st.weight * wf.f(std::log(static_cast<double>(st.norm)) / p.log_x);
    }
    return s;
}

UnsmoothReport unsmooth_check(const WeightFunction& wf, const ClassTarget& t) {
    const auto& p = wf.params();
    const double x = p.x();
    const auto steps = psi_steps(x * std::exp(p.epsilon), t.D);
    UnsmoothReport r;
    r.psi_x = psi_C(steps, x, t.target);
    r.psi_upper = psi_C(steps, x * std::exp(p.epsilon), t.target);
    for (const auto& st : steps) {
        if (st.cls == t.target) r.psi_smooth += st.weight * wf.f(std::log(static_cast<double>(st.norm)) / p.log_x);
    }
    r.C = std::max(0.0, (r.psi_x - r.psi_smooth) / std::sqrt(x));
    r.upper_holds = r.psi_smooth <= r.psi_upper * (1.0 + 1e-12);
    r.C_deviation = std::abs(r.psi_smooth - r.psi_x) / (std::sqrt(x) + p.epsilon * x);
    return r;
}

double main_term(double x, double ratio, const SiegelData& s) {
    if (!(x >= 2.0)) throw DomainError("chebotarev: x must be >= 2");
    s.validate();
    double v = li(x);
    if (s.present()) v -= s.theta1 * li_signed(std::pow(x, s.beta1()));
    return ratio * v;
}

double main_term(double x, const Rational& ratio, const SiegelData& s) { return main_term(x, to_double(ratio), s); }

u64 congruence_count(const Form& f, u64 d1, u64 d2, double x, unsigned workers) {
    if (d1 == 0 || d2 == 0 || std::gcd(d1, d2) != 1) throw DomainError("chebotarev: d1, d2 must be coprime positive integers");
    const Form g = induced_form(f, static_cast<i64>(d1), static_cast<i64>(d2));
    return lattice_prime_count(g, floor_x(x), workers);
}

double congruence_sum_A(const Form& f, u64 d1, u64 d2, double x, unsigned workers) {
    return static_cast<double>(congruence_count(f, d1, d2, x, workers)) / stab_order(f.disc());
}

Prediction congruence_sum_predicted(const Form& f, u64 d1, u64 d2, double x, const SiegelData& s, const ErrorModel& m) {
    if (d1 == 0 || d2 == 0 || std::gcd(d1, d2) != 1) throw DomainError("chebotarev: d1, d2 must be coprime positive integers");
    const i64 D = f.disc();
    const double lhs = std::log(static_cast<double>(d1)) + std::log(static_cast<double>(d2)) + std::log(std::fabs(static_cast<double>(D)));
    if (lhs > m.gamma * std::log(x)) throw ConfigError("chebotarev: congruence prediction requires |d1 d2 D| <= x^gamma");
    const auto P = SievingModulus::make(d1 * d2);
    const Rational g = g_prime_d(d1, f, P) * g_dprime_d(d2, f, P);
    const auto h = class_representatives(D).h();
    Prediction pr;
    pr.value = main_term(x, to_double(g) / static_cast<double>(h), s);
    pr.budget = remainder_eps(d1 * d2, std::log(x), D, m) * pr.value + std::sqrt(x) * std::log(x);
    return pr;
}

SievedSum sieved_sum_S(const Form& f, const SieveWeights& w1, const SieveWeights& w2, double x, unsigned workers) {
    require_definite(f, "chebotarev");
    auto product = [](const std::vector<u64>& ps) {
        u64 P = 1;
        for (u64 p : ps) {
            if (__builtin_mul_overflow(P, p, &P)) throw ConfigError("chebotarev: sieve support product overflows");
        }
        return P;
    };
    const u64 P1 = product(w1.support), P2 = product(w2.support);
    const u64 X = floor_x(x);
    SievedSum out;
    out.stab = stab_order(f.disc());
    if (X < 3) return out;
    const auto cache = shared_primes(X);

    std::unordered_map<u64, long> memo1, memo2;
    auto theta = [](const SieveWeights& w, std::unordered_map<u64, long>& memo, u64 n) {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        return memo[n] = theta_at(w, n);
    };
    enumerate_represented(f, static_cast<double>(X), [&](i64 u, i64 v, i64 n) {
        if (n < 3 || !cache->test(static_cast<u64>(n))) return;
        const u64 g1 = std::gcd(static_cast<u64>(std::llabs(u)), P1);
        const u64 g2 = std::gcd(static_cast<u64>(std::llabs(v)), P2);
        out.direct += theta(w1, memo1, g1) * theta(w2, memo2, g2);
    });

    for (const auto& [d1, l1] : w1.lambda) {
        for (const auto& [d2, l2] : w2.lambda) {
            if (l1 == 0 || l2 == 0 || std::gcd(d1, d2) != 1) continue;
            out.swapped += static_cast<i64>(l1) * l2 * static_cast<i64>(congruence_count(f, d1, d2, x, workers));
            ++out.pairs;
        }
    }
    if (out.direct != out.swapped) {
        throw ConsistencyError("chebotarev: sieved sum evaluation orders disagree: " + std::to_string(out.direct) +
                               " vs " + std::to_string(out.swapped));
    }
    return out;
}

double coprime_restricted_count(const Form& f, u64 P, double x, unsigned workers) {
    return static_cast<double>(lattice_prime_count(f, floor_x(x), workers, P)) / stab_order(f.disc());
}

ExperimentReport theorem15_experiment(const Form& f, const SievingModulus& P, double x, const SiegelData& s,
                                      double A_target, const Theorem15Options& opt) {
    require_definite(f, "chebotarev");
    if (!f.primitive()) throw DomainError("chebotarev: form must be primitive");
    if (!(x >= 16.0)) throw ConfigError("chebotarev: theorem15 requires x >= 16");
    s.validate();
    const i64 D = f.disc();
    const double lx = std::log(x);
    const double eta = opt.model.eta_thm;
    const double z = std::max(P.z, 3.0);
    if (std::log(z) > eta * lx / std::log(lx)) throw ConfigError("chebotarev: theorem15 requires z <= x^{eta/log log x}");
    if (std::llabs(D) < 3) throw ConfigError("chebotarev: theorem15 requires |D| >= 3");
    if (std::log(std::fabs(static_cast<double>(D))) > eta * lx / std::log(std::log(z))) {
        throw ConfigError("chebotarev: theorem15 requires |D| <= x^{eta/log log z}");
    }

    const auto h = class_representatives(D).h();
    const Rational delta = delta_f(f, P);
    ExperimentReport rep;
    rep.kind = "theorem15";
    rep.config = {{"form", f.str()}, {"P", std::to_string(P.P)}, {"z", num(z)}, {"x", num(x)},
                  {"A_target", num(A_target)}, {"beta1", s.present() ? num(s.beta1()) : "none"},
                  {"theta1", std::to_string(s.theta1)}, {"eta_thm", num(eta)}, {"tolerance", num(opt.tolerance)}};
    rep.lhs = coprime_restricted_count(f, P.P, x, opt.workers);
    rep.rhs = main_term(x, to_double(delta) / static_cast<double>(h), s);
    rep.budget = std::pow(std::log(z), -A_target);
    rep.notes.push_back({"delta", to_string(delta)});
    rep.notes.push_back({"h", std::to_string(h)});
    rep.notes.push_back({"target_bound", num(rep.budget)});

    if (represents_odd_primes_obstructed(f, P)) {
        rep.notes.push_back({"status", "trivially true: odd primes coprime to P are not represented"});
        rep.rel_error = 0;
        rep.pass = rep.lhs == 0 && delta == 0;
        return rep;
    }
    if (delta == 0) {
        const auto p = vanishing_prime(f, P);
        rep.notes.push_back({"status", "local factor vanishes at p = " + std::to_string(p ? *p : 0) + "; only primes dividing P survive"});
        rep.rel_error = 0;
        rep.pass = rep.lhs <= 2;
        return rep;
    }
    rep.rel_error = std::abs(rep.lhs - rep.rhs) / rep.rhs;
    rep.pass = rep.rel_error <= opt.tolerance;
    return rep;
}

BridgeReport pi_psi_bridge_check(double x, const ClassTarget& t) {
    if (!(x >= 4.0)) throw DomainError("chebotarev: bridge check requires x >= 4");
    BridgeReport r;
    r.pi = static_cast<double>(pi_C(x, t));
    const auto steps = psi_steps(x, t.D);
    const double a = std::sqrt(x);
    double psi = 0, integral = 0, lo = a;
    for (const auto& st : steps) {
        if (st.cls != t.target) continue;
        const double n = static_cast<double>(st.norm);
        if (n <= a) {
            psi += st.weight;
            continue;
        }
        integral += psi * (1.0 / std::log(lo) - 1.0 / std::log(n));
        psi += st.weight;
        lo = n;
    }
    integral += psi * (1.0 / std::log(lo) - 1.0 / std::log(x));
    r.psi_term = psi / std::log(x);
    r.integral = integral;
    r.residual = r.pi - r.psi_term - r.integral;
    r.scale = std::log(std::fabs(static_cast<double>(t.D))) + 2.0 * std::sqrt(x) / std::log(x);
    r.C = std::abs(r.residual) / r.scale;
    return r;
}

LiIdentityReport li_identity_check(double x, double sigma) {
    if (!(x >= 4.0) || !(sigma > 0.0 && sigma <= 1.0)) throw DomainError("chebotarev: Li identity check needs x >= 4, 0 < sigma <= 1");
    const double L = std::log(x);
    auto g = [sigma](double u) { return std::exp(sigma * u) / (sigma * u * u); };
    LiIdentityReport r;
    r.lhs = std::exp(sigma * L) / (sigma * L) + numerics::integrate(g, L / 2, L, 1e-13).value;
    r.rhs = li_signed(std::exp(sigma * L));
    r.residual = r.lhs - r.rhs;
    r.scale = std::sqrt(x) / L;
    r.C = std::abs(r.residual) / r.scale;
    return r;
}

std::vector<EquidistributionRow> equidistribution_table(i64 D, const std::vector<double>& xs, unsigned workers) {
    const auto h = class_representatives(D).h();
    std::vector<EquidistributionRow> rows;
    for (double x : xs) {
        if (!(x >= 2.0)) throw ConfigError("chebotarev: table x must be >= 2");
        rows.push_back({x, pi_all(x, D, workers), li(x) / static_cast<double>(h)});
    }
    return rows;
}

void write_equidistribution_csv(std::ostream& out, const std::vector<EquidistributionRow>& rows) {
    out << "x";
    const std::size_t h = rows.empty() ? 0 : rows.front().counts.size();
    for (std::size_t i = 0; i < h; ++i) out << ",pi_" << i;
    out << ",li_over_h\n";
    for (const auto& r : rows) {
        out << num(r.x);
        for (u64 c : r.counts) out << ',' << c;
        out << ',' << num(r.expected) << '\n';
    }
}

} // namespace cheb
