#include "cheb/verify.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "cheb/arith.hpp"
#include "cheb/betasieve.hpp"
#include "cheb/chebotarev.hpp"
#include "cheb/densities.hpp"
#include "cheb/errors.hpp"
#include "cheb/errorterms.hpp"
#include "cheb/experiment.hpp"
#include "cheb/kernels.hpp"
#include "cheb/prime_cache.hpp"
#include "cheb/quadforms.hpp"
#include "cheb/weights.hpp"

namespace cheb {
namespace {

// A check returns an empty string on success, otherwise the counterexample.
using Check = std::function<std::string()>;

struct Suite {
    std::vector<CheckOutcome>& out;
    std::ostream& log;

    void run(const std::string& module, const std::string& invariant, const Check& check) {
        CheckOutcome c{module, invariant, false, {}};
        try {
            c.detail = check();
            c.pass = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        log << (c.pass ? "[PASS] " : "[FAIL] ") << module << ": " << invariant;
        if (!c.pass) log << " -- " << c.detail;
        log << '\n';
        out.push_back(c);
    }
};

template <class... T>
std::string cat(const T&... parts) {
    std::ostringstream o;
    (o << ... << parts);
    return o.str();
}

std::string check_cache_files() {
    const auto dir = cache_dir_from_env();
    if (!dir || !std::filesystem::exists(*dir)) return {};
    for (const auto& entry : std::filesystem::directory_iterator(*dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("primes_", 0) != 0 || entry.path().extension() != ".bin") continue;
        const auto pc = PrimeCache::load(entry.path());
        std::mt19937_64 rng(7);
        for (int i = 0; i < 2000; ++i) {
            const u64 n = uniform_u64(rng, 0, pc.limit());
            if (pc.test(n) != is_prime(n)) return cat("arith: cache file ", name, " disagrees with is_prime at ", n);
        }
    }
    return {};
}

} // namespace

std::vector<CheckOutcome> verify_all(VerifyLevel level, std::ostream& log) {
    std::vector<CheckOutcome> out;
    Suite s{out, log};
    const bool full = level == VerifyLevel::Full;

    s.run("arith", "prime cache files load and match is_prime", check_cache_files);
    s.run("arith", "segmented sieve agrees with Miller-Rabin to 2e5", [] {
        const auto pc = PrimeCache::build(200000);
        for (u64 n = 0; n <= 200000; ++n) {
            if (pc.test(n) != is_prime(n)) return cat("n = ", n);
        }
        if (pc.count_up_to(100000) != 9592) return std::string("pi(1e5) != 9592");
        return std::string();
    });
    s.run("arith", "Kronecker symbol is completely multiplicative", [] {
        for (i64 D : {-3, -4, -7, -8, -15, -20, -23, -47, 5, 12, 13}) {
            for (u64 m = 1; m < 60; ++m) {
                for (u64 n = 1; n < 60; ++n) {
                    if (kronecker(D, m * n) != kronecker(D, m) * kronecker(D, n)) return cat("D = ", D, ", m = ", m, ", n = ", n);
                }
            }
        }
        return std::string();
    });
    s.run("arith", "Tonelli-Shanks roots square back", [] {
        for (u64 p : {3ull, 5ull, 13ull, 17ull, 97ull, 257ull, 65537ull, 1000000007ull}) {
            for (i64 a = 0; a < 200; ++a) {
                const auto r = sqrt_mod(a, p);
                if (r && mulmod(*r, *r, p) != static_cast<u64>(a) % p) return cat("a = ", a, ", p = ", p);
                if (!r && jacobi(a, p) != -1) return cat("missing root a = ", a, ", p = ", p);
            }
        }
        return std::string();
    });
    s.run("arith", "Li(1e6) reference value", [] {
        const double v = li(1e6);
        return std::abs(v - 78626.50418) < 1e-3 ? std::string() : cat("Li(1e6) = ", v);
    });

    s.run("quadforms", "class number formula for orders", [full] {
        const u64 dmax = full ? 12 : 6;
        for (i64 D0 = -3; D0 >= -500; --D0) {
            if (!is_fundamental(D0)) continue;
            for (u64 d = 1; d <= dmax; ++d) {
                const i64 D = D0 * static_cast<i64>(d * d);
                const u64 h = class_representatives(D).h();
                if (h != class_number_order(D0, d)) return cat("D0 = ", D0, ", d = ", d);
            }
        }
        return std::string();
    });
    s.run("quadforms", "composition is a group law", [] {
        for (i64 D : {-23, -47, -71, -104, -260, -399}) {
            const auto cl = class_representatives(D);
            const Form e = principal_form(D);
            for (const auto& f : cl.forms) {
                if (compose(f, e) != reduce(f)) return cat("identity fails at ", f.str());
                if (compose(f, inverse(f)) != reduce(e)) return cat("inverse fails at ", f.str());
                for (const auto& g : cl.forms) {
                    if (compose(f, g) != compose(g, f)) return cat("commutativity fails at ", f.str(), ", ", g.str());
                    for (const auto& k : cl.forms) {
                        if (compose(compose(f, g), k) != compose(f, compose(g, k))) return cat("associativity fails, D = ", D);
                    }
                }
            }
        }
        return std::string();
    });

    s.run("densities", "delta_f of (1,0,1) at P = 15015", [] {
        const auto P = SievingModulus::make(15015);
        const Rational d = delta_f(Form{1, 0, 1}, P);
        return d == Rational(25, 192) ? std::string() : cat("delta = ", to_string(d));
    });
    s.run("densities", "even P obstructs odd primes exactly when delta vanishes at 2", [] {
        const auto P = SievingModulus::make(2);
        for (i64 D = -3; D >= -200; --D) {
            if (!is_discriminant(D)) continue;
            for (const auto& f : class_representatives(D).forms) {
                const bool obs = represents_odd_primes_obstructed(f, P);
                const bool zero = delta_f(f, P) == 0;
                if (obs != zero) return cat("form ", f.str());
            }
        }
        return std::string();
    });

    s.run("betasieve", "inversion identity on random instances", [full] {
        std::mt19937_64 rng(11);
        for (int i = 0; i < (full ? 100 : 25); ++i) {
            const auto in = random_sieve_instance(rng);
            const auto w1 = beta_sieve_weights(in.s1), w2 = beta_sieve_weights(in.s2);
            if (reduced_composition(w1, w2, in.g) != invert_composition(w1, w2, in.g)) return cat("instance ", i);
        }
        return std::string();
    });
    s.run("betasieve", "composition inequalities on valid instances", [full] {
        std::mt19937_64 rng(13);
        for (int i = 0; i < (full ? 100 : 25); ++i) {
            const auto in = random_valid_sieve_instance(rng);
            const auto r = composition_bounds_check(in.s1, in.s2, in.g);
            if (!r.holds || !r.fl_holds) return cat("instance ", i, ", margin ", r.margin);
        }
        return std::string();
    });

    s.run("weights", "closed-form transform matches quadrature", [] {
        const WeightFunction wf(WeightParams::from_x(1e6, 0.1, 2));
        for (double sigma : {-0.5, 0.5, 1.0}) {
            for (double t : {0.0, 3.0}) {
                const auto z = -std::complex<double>(sigma, t) * wf.params().log_x;
                const double rel = std::abs(wf.F(z) - wf.F_quadrature(z)) / std::abs(wf.F(z));
                if (rel > 1e-8) return cat("s = ", sigma, "+", t, "i, rel = ", rel);
            }
        }
        return std::string();
    });
    s.run("weights", "transform bounds on the sample grid", [] {
        const auto r = verify_bounds(WeightParams::from_x(1e6, 0.1, 2));
        if (r.pass) return std::string();
        for (const auto& c : r.checks) {
            if (c.violations) return cat(c.name, " at ", c.worst_at);
        }
        return cat("F(0) = ", r.F0, ", main-term C = ", r.mainterm_C);
    });

    s.run("chebotarev", "SIMD and scalar row kernels agree", [] {
        const Form f{2, 1, 3};
        const u64 X = 200000;
        const auto pc = shared_primes(X);
        const i64 U = u_bound(f, static_cast<i64>(X));
        for (i64 u = 0; u <= U; ++u) {
            const auto r = row_range(f, static_cast<i64>(X), u);
            if (!r) continue;
            kernels::RowSpec row{f.eval(u, r->first), f.b * u + f.c * (2 * r->first + 1), 2 * f.c,
                                 static_cast<u64>(r->second - r->first + 1), X, pc->words().data()};
            if (kernels::count_row(row) != kernels::count_row_scalar(row)) return cat("row u = ", u);
        }
        return std::string();
    });
    s.run("chebotarev", "class counts sum to twice the split primes", [full] {
        const double x = full ? 1e6 : 1e5;
        for (i64 D : {-23, -47, -84, -231}) {
            u64 sum = 0;
            for (u64 c : pi_all(x, D)) sum += c;
            u64 split = 0;
            const auto pc = shared_primes(static_cast<u64>(x));
            for (u64 p = 3; p <= static_cast<u64>(x); p += 2) {
                if (pc->test(p) && kronecker(D, p) == 1) ++split;
            }
            if (sum != 2 * split) return cat("D = ", D, ": ", sum, " vs ", 2 * split);
        }
        return std::string();
    });
    s.run("chebotarev", "lattice count matches prime_to_class scan", [] {
        for (i64 D : {-23, -56, -71}) {
            const auto cl = class_representatives(D);
            for (std::size_t i = 0; i < cl.h(); ++i) {
                const ClassTarget t{D, cl, i};
                if (pi_C(2e4, t) != pi_C_scan(2e4, t)) return cat("D = ", D, ", class ", cl.forms[i].str());
            }
        }
        return std::string();
    });
    s.run("chebotarev", "sieved sum evaluation orders agree", [] {
        SieveSpec sp;
        sp.z = 8;
        sp.R = 1e3;
        sp.beta = 3;
        sp.support = {2, 3, 5, 7};
        const auto w1 = beta_sieve_weights(sp);
        sp.kind = SieveKind::Lower;
        const auto w2 = beta_sieve_weights(sp);
        sieved_sum_S(Form{1, 0, 1}, w1, w2, 2e4);
        sieved_sum_S(Form{2, 1, 3}, w2, w1, 2e4);
        return std::string();
    });
    if (full) {
        s.run("chebotarev", "equidistribution within 3% at x = 1e7", [] {
            for (i64 D : {-23, -47, -71}) {
                const auto counts = pi_all(1e7, D);
                const double expected = li(1e7) / static_cast<double>(counts.size());
                for (std::size_t i = 0; i < counts.size(); ++i) {
                    const double rel = std::abs(static_cast<double>(counts[i]) - expected) / expected;
                    if (rel > 0.03) return cat("D = ", D, ", class ", i, ", rel = ", rel);
                }
            }
            return std::string();
        });
    }

    s.run("errorterms", "exp(-eta) <= classical error on log grids", [full] {
        std::vector<std::pair<double, int>> configs = {{1e3, 2}};
        if (full) configs = {{1e3, 2}, {1e6, 2}, {1e4, 8}};
        for (auto [Q, n] : configs) {
            ErrorModel m;
            m.Q_given = Q;
            m.n_K = n;
            const int pts = full ? 200 : 50;
            for (const auto& r : bounds_sweep(m, 3 * m.log_Q(), 30 * m.log_Q(), pts)) {
                if (std::exp(-r.eta) > r.classical_error * (1 + 1e-12)) return cat("Q = ", Q, ", x = ", format_x(r.log_x));
            }
        }
        return std::string();
    });
    s.run("errorterms", "repulsion never lowers eta", [] {
        ErrorModel m;
        m.Q_given = 1e4;
        m.n_K = 2;
        m.siegel = SiegelData::from_lambda(1e-3, m.log_Q());
        for (int i = 0; i < 40; ++i) {
            const double lx = m.log_Q() * (3 + i);
            if (eta(lx, m).eta < eta(lx, m, true).eta - 1e-9) return cat("x = ", format_x(lx));
        }
        return std::string();
    });
    s.run("errorterms", "Stark warning fires exactly below the floor", [] {
        ErrorModel m;
        m.Q_given = 100;
        for (double e : {-1.0, -1.9, -2.1, -3.0}) {
            m.siegel = SiegelData::from_lambda(std::pow(100.0, e), m.log_Q());
            if (stark_consistent(m, false) != (e >= -2.0)) return cat("lambda1 = Q^", e);
        }
        return std::string();
    });
    return out;
}

} // namespace cheb
