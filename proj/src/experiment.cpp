#include "cheb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "cheb/densities.hpp"
#include "cheb/errors.hpp"
#include "cheb/errorterms.hpp"
#include "cheb/quadforms.hpp"
#include "cheb/weights.hpp"

namespace cheb {
namespace {

using json = nlohmann::ordered_json;
using Defaults = std::vector<std::pair<std::string, std::string>>;

const std::map<ExperimentKind, Defaults>& all_defaults() {
    static const std::map<ExperimentKind, Defaults> d = {
        {ExperimentKind::ClassNumber, {{"D_min", "-500"}, {"D_max", "-3"}}},
        {ExperimentKind::Equidistribution, {{"D", "-23"}, {"x", "1e7"}, {"tolerance", "0.03"}, {"table_points", "0"}}},
        {ExperimentKind::Congruence,
         {{"a", "1"}, {"b", "0"}, {"c", "1"}, {"x", "1e7"}, {"moduli", "1,3,5,15"}, {"tolerance", "0.05"},
          {"beta1", "none"}, {"gamma", "1"}}},
        {ExperimentKind::Theorem15,
         {{"a", "1"}, {"b", "0"}, {"c", "1"}, {"P", "15015"}, {"z", "none"}, {"x", "1e7"}, {"A_target", "1"},
          {"beta1", "none"}, {"eta_thm", "1"}, {"tolerance", "0.05"}}},
        {ExperimentKind::SieveOracle, {{"instances", "100"}, {"valid_instances", "100"}, {"sum_instances", "10"}, {"x", "1e4"}}},
        {ExperimentKind::WeightVerify, {{"x", "1e6"}, {"epsilon", "0.1"}, {"ell", "2"}, {"rel_tol", "1e-8"}}},
        {ExperimentKind::BoundsSweep,
         {{"Q", "1000"}, {"n_K", "2"}, {"points", "200"}, {"lo_power", "3"}, {"hi_power", "30"}, {"beta1", "none"},
          {"lambda1", "none"}, {"theta1", "1"}, {"c_ZFR", "0.05"}, {"c_ZDE", "10"}, {"c_DH", "1"}}},
    };
    return d;
}

class Params {
public:
    Params(ExperimentKind k, const std::map<std::string, std::string>& given) : kind_(k) {
        for (const auto& [key, val] : experiment_defaults(k)) values_[key] = val;
        for (const auto& [key, val] : given) {
            if (!values_.count(key)) throw ConfigError("experiment: unknown parameter '" + key + "' for kind " + to_string(k));
            values_[key] = val;
        }
    }

    const std::string& str(const std::string& key) const { return values_.at(key); }

    double real(const std::string& key) const {
        const std::string& s = str(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("experiment: parameter '" + key + "' is not a number: '" + s + "'");
        }
    }

    std::optional<double> opt_real(const std::string& key) const {
        const std::string& s = str(key);
        if (s.empty() || s == "none") return std::nullopt;
        return real(key);
    }

    i64 integer(const std::string& key) const {
        const double v = real(key);
        if (v != std::floor(v) || std::fabs(v) > 9e15) throw ConfigError("experiment: parameter '" + key + "' must be an integer");
        return static_cast<i64>(v);
    }

    u64 positive(const std::string& key) const {
        const i64 v = integer(key);
        if (v < 1) throw ConfigError("experiment: parameter '" + key + "' must be positive");
        return static_cast<u64>(v);
    }

    std::vector<u64> list(const std::string& key) const {
        std::vector<u64> out;
        std::stringstream ss(str(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                const long long v = std::stoll(item, &pos);
                if (pos != item.size() || v < 1) throw std::invalid_argument(item);
                out.push_back(static_cast<u64>(v));
            } catch (const std::exception&) {
                throw ConfigError("experiment: parameter '" + key + "' must be a comma-separated list of positive integers");
            }
        }
        if (out.empty()) throw ConfigError("experiment: parameter '" + key + "' is empty");
        return out;
    }

    json echo() const {
        json j = json::object();
        for (const auto& [k, v] : values_) j[k] = v;
        return j;
    }

private:
    ExperimentKind kind_;
    std::map<std::string, std::string> values_;
};

Form form_param(const Params& p) {
    const Form f{p.integer("a"), p.integer("b"), p.integer("c")};
    if (f.a <= 0 || f.disc() >= 0) throw ConfigError("experiment: form must be positive definite");
    if (!f.primitive()) throw ConfigError("experiment: form must be primitive");
    return f;
}

SiegelData siegel_param(const Params& p) {
    const auto b = p.opt_real("beta1");
    if (!b) return {};
    if (!(*b > 0.5 && *b < 1.0)) throw ConfigError("experiment: beta1 must lie in (1/2, 1)");
    return SiegelData::from_beta(*b, 1);
}

json base_report(const ExperimentConfig& cfg, const Params& p) {
    json j;
    j["artifact"] = "cheblab";
    j["version"] = kArtifactVersion;
    j["kind"] = to_string(cfg.kind);
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["config"] = p.echo();
    return j;
}

void finish(json& j, double lhs, double rhs, double rel_error, double budget, bool pass) {
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["rel_error"] = rel_error;
    j["budget"] = budget;
    j["pass"] = pass;
}

ExperimentResult run_class_number(const ExperimentConfig& cfg, const Params& p) {
    const i64 lo = p.integer("D_min"), hi = p.integer("D_max");
    if (lo > hi || hi >= 0 || lo < -10'000'000) throw ConfigError("experiment: need D_min <= D_max < 0");
    json rows = json::array();
    std::ostringstream csv;
    csv << "D,h_enumerated,h_formula\n";
    std::size_t total = 0, agree = 0;
    for (i64 D = hi; D >= lo; --D) {
        if (!is_discriminant(D)) continue;
        const auto [D0, d] = fundamental_decomposition(D);
        const u64 h = class_representatives(D).h();
        json r;
        r["D"] = D;
        r["h_enumerated"] = h;
        csv << D << ',' << h << ',';
        ++total;
        if (d > 1) {
            const u64 hf = class_number_order(D0, d);
            r["h_formula"] = hf;
            csv << hf;
            agree += hf == h;
        } else {
            r["h_formula"] = nullptr;
            ++agree;
        }
        csv << '\n';
        rows.push_back(r);
    }
    ExperimentResult res;
    res.report = base_report(cfg, p);
    res.pass = agree == total;
    finish(res.report, static_cast<double>(agree), static_cast<double>(total), 0.0, 0.0, res.pass);
    res.report["details"] = {{"rows", rows}};
    res.csv = csv.str();
    return res;
}

ExperimentResult run_equidistribution(const ExperimentConfig& cfg, const Params& p) {
    const i64 D = p.integer("D");
    if (D >= 0 || !is_discriminant(D)) throw ConfigError("experiment: D must be a negative discriminant");
    const double x = p.real("x");
    if (!(x >= 100)) throw ConfigError("experiment: x must be >= 100");
    const double tol = p.real("tolerance");
    const auto cl = class_representatives(D);
    const auto counts = pi_all(x, D, cfg.workers);
    const double expected = li(x) / static_cast<double>(cl.h());
    double worst = 0;
    json classes = json::array();
    for (std::size_t i = 0; i < cl.h(); ++i) {
        const double rel = std::abs(static_cast<double>(counts[i]) - expected) / expected;
        worst = std::max(worst, rel);
        classes.push_back({{"form", cl.forms[i].str()}, {"pi_C", counts[i]}, {"rel_error", rel}});
    }
    ExperimentResult res;
    res.report = base_report(cfg, p);
    u64 sum = 0;
    for (u64 c : counts) sum += c;
    res.pass = worst <= tol;
    finish(res.report, static_cast<double>(sum), expected * static_cast<double>(cl.h()), worst, tol, res.pass);
    res.report["details"] = {{"h", cl.h()}, {"expected_per_class", expected}, {"classes", classes}};
    const auto pts = p.integer("table_points");
    if (pts > 0) {
        std::vector<double> xs;
        for (i64 i = 0; i < pts; ++i) {
            const double frac = pts == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(pts - 1);
            xs.push_back(std::floor(std::exp(std::log(1000.0) + (std::log(x) - std::log(1000.0)) * frac)));
        }
        std::ostringstream csv;
        write_equidistribution_csv(csv, equidistribution_table(D, xs, cfg.workers));
        res.csv = csv.str();
    }
    return res;
}

ExperimentResult run_congruence(const ExperimentConfig& cfg, const Params& p) {
    const Form f = form_param(p);
    const double x = p.real("x");
    if (!(x >= 100)) throw ConfigError("experiment: x must be >= 100");
    const double tol = p.real("tolerance");
    const SiegelData s = siegel_param(p);
    ErrorModel m;
    m.gamma = p.real("gamma");
    json pairs = json::array();
    double worst = 0;
    std::set<std::pair<u64, u64>> seen;
    for (u64 n : p.list("moduli")) {
        for (u64 d1 : divisors(n)) {
            const u64 d2 = n / d1;
            if (std::gcd(d1, d2) != 1 || !seen.insert({d1, d2}).second) continue;
            const double A = congruence_sum_A(f, d1, d2, x, cfg.workers);
            const auto pred = congruence_sum_predicted(f, d1, d2, x, s, m);
            const double rel = pred.value > 0 ? std::abs(A - pred.value) / pred.value : (A == 0 ? 0.0 : INFINITY);
            worst = std::max(worst, rel);
            pairs.push_back({{"d1", d1}, {"d2", d2}, {"A", A}, {"predicted", pred.value}, {"budget", pred.budget}, {"rel_error", rel}});
        }
    }
    ExperimentResult res;
    res.report = base_report(cfg, p);
    res.pass = worst <= tol;
    finish(res.report, static_cast<double>(pairs.size()), static_cast<double>(pairs.size()), worst, tol, res.pass);
    res.report["details"] = {{"form", f.str()}, {"pairs", pairs}};
    return res;
}

ExperimentResult run_theorem15(const ExperimentConfig& cfg, const Params& p) {
    const Form f = form_param(p);
    const auto P = SievingModulus::make(p.positive("P"), p.opt_real("z"));
    const double x = p.real("x");
    Theorem15Options opt;
    opt.tolerance = p.real("tolerance");
    opt.workers = cfg.workers;
    opt.model.eta_thm = p.real("eta_thm");
    if (!(opt.model.eta_thm > 0)) throw ConfigError("experiment: eta_thm must be positive");
    const auto rep = theorem15_experiment(f, P, x, siegel_param(p), p.real("A_target"), opt);
    ExperimentResult res;
    res.report = base_report(cfg, p);
    res.pass = rep.pass;
    finish(res.report, rep.lhs, rep.rhs, rep.rel_error, rep.budget, rep.pass);
    json notes;
    for (const auto& [k, v] : rep.notes) notes[k] = v;
    if (P.was_reduced) notes["P_reduced_to_radical"] = std::to_string(P.P);
    res.report["details"] = notes;
    return res;
}

ExperimentResult run_sieve_oracle(const ExperimentConfig& cfg, const Params& p) {
    std::mt19937_64 rng(cfg.seed);
    const i64 n1 = p.integer("instances"), n2 = p.integer("valid_instances"), n3 = p.integer("sum_instances");
    if (n1 < 0 || n2 < 0 || n3 < 0) throw ConfigError("experiment: instance counts must be non-negative");
    const double x = p.real("x");
    json fails = json::array();
    i64 ok1 = 0, ok2 = 0, ok3 = 0;
    for (i64 i = 0; i < n1; ++i) {
        const auto inst = random_sieve_instance(rng);
        const auto w1 = beta_sieve_weights(inst.s1), w2 = beta_sieve_weights(inst.s2);
        if (reduced_composition(w1, w2, inst.g) == invert_composition(w1, w2, inst.g)) ++ok1;
        else fails.push_back({{"check", "inversion"}, {"instance", i}});
    }
    for (i64 i = 0; i < n2; ++i) {
        const auto inst = random_valid_sieve_instance(rng);
        const auto rep = composition_bounds_check(inst.s1, inst.s2, inst.g);
        if (rep.holds && rep.fl_holds) ++ok2;
        else fails.push_back({{"check", "composition"}, {"instance", i}, {"margin", rep.margin}});
    }
    for (i64 i = 0; i < n3; ++i) {
        std::vector<i64> discs;
        for (i64 D = -3; D >= -200; --D) {
            if (is_discriminant(D)) discs.push_back(D);
        }
        const i64 D = discs[uniform_u64(rng, 0, discs.size() - 1)];
        const auto cl = class_representatives(D);
        const Form f = cl.forms[uniform_u64(rng, 0, cl.h() - 1)];
        auto make = [&](SieveKind kind) {
            SieveSpec s;
            s.z = static_cast<double>(std::vector<u64>{3, 5, 7, 11, 13}[uniform_u64(rng, 0, 4)]);
            for (u64 q = 2; static_cast<double>(q) < s.z; ++q) {
                if (is_prime(q)) s.support.push_back(q);
            }
            s.kind = kind;
            s.beta = static_cast<double>(uniform_u64(rng, 1, 10));
            s.R = std::exp(uniform_real(rng, std::log(s.z), std::log(1e4)));
            return beta_sieve_weights(s);
        };
        const auto w1 = make(uniform_u64(rng, 0, 1) ? SieveKind::Upper : SieveKind::Lower);
        const auto w2 = make(uniform_u64(rng, 0, 1) ? SieveKind::Upper : SieveKind::Lower);
        try {
            sieved_sum_S(f, w1, w2, x, cfg.workers);
            ++ok3;
        } catch (const ConsistencyError& e) {
            fails.push_back({{"check", "evaluation_orders"}, {"instance", i}, {"error", e.what()}});
        }
    }
    ExperimentResult res;
    res.report = base_report(cfg, p);
    const double total = static_cast<double>(n1 + n2 + n3);
    const double passed = static_cast<double>(ok1 + ok2 + ok3);
    res.pass = passed == total;
    finish(res.report, passed, total, 0.0, 0.0, res.pass);
    res.report["details"] = {{"inversion_ok", ok1}, {"composition_ok", ok2}, {"evaluation_orders_ok", ok3}, {"failures", fails}};
    return res;
}

ExperimentResult run_weight_verify(const ExperimentConfig& cfg, const Params& p) {
    const double x = p.real("x");
    if (!(x >= 3)) throw ConfigError("experiment: x must be >= 3");
    const double eps = p.real("epsilon");
    const auto ell = p.integer("ell");
    if (ell < 1 || ell > WeightFunction::kMaxDegree) throw ConfigError("experiment: ell must lie in [1, 64]");
    if (!(eps > 0 && eps < 0.25)) throw ConfigError("experiment: epsilon must lie in (0, 1/4)");
    const double tol = p.real("rel_tol");
    const WeightParams wp{std::log(x), eps, static_cast<int>(ell)};
    const WeightFunction wf(wp);
    double worst = 0;
    json samples = json::array();
    for (double sigma : {-0.5, 0.0, 0.25, 0.5, 1.0}) {
        for (double t : {0.0, 1.0, 5.0, 20.0}) {
            const std::complex<double> z = -std::complex<double>(sigma, t) * wp.log_x;
            const auto F = wf.F(z);
            const auto Fq = wf.F_quadrature(z);
            const double rel = std::abs(F - Fq) / std::abs(F);
            worst = std::max(worst, rel);
            samples.push_back({{"sigma", sigma}, {"t", t}, {"rel_error", rel}});
        }
    }
    const auto rep = verify_bounds(wp);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"points", c.points}, {"violations", c.violations}, {"worst_log_margin", c.worst_log_margin}, {"worst_at", c.worst_at}});
    }
    ExperimentResult res;
    res.report = base_report(cfg, p);
    res.pass = worst <= tol && rep.pass;
    finish(res.report, rep.F0, rep.F0_expected, worst, tol, res.pass);
    res.report["details"] = {{"samples", samples},         {"bounds", checks},
                             {"F0_in_range", rep.F0_in_range}, {"mainterm_C", rep.mainterm_C},
                             {"mainterm_C_limit", rep.mainterm_C_limit}, {"bounds_pass", rep.pass}};
    return res;
}

ExperimentResult run_bounds_sweep(const ExperimentConfig& cfg, const Params& p) {
    ErrorModel m;
    m.Q_given = p.real("Q");
    m.n_K = static_cast<int>(p.positive("n_K"));
    m.c_ZFR = p.real("c_ZFR");
    m.c_ZDE = p.real("c_ZDE");
    m.c_DH = p.real("c_DH");
    const auto b = p.opt_real("beta1");
    const auto lam = p.opt_real("lambda1");
    const int theta1 = static_cast<int>(p.integer("theta1"));
    if (b && lam) throw ConfigError("experiment: give beta1 or lambda1, not both");
    if (b) m.siegel = SiegelData::from_beta(*b, theta1);
    if (lam) m.siegel = SiegelData::from_lambda(*lam, m.log_Q(), theta1);
    m.validate();
    const double lo = p.real("lo_power"), hi = p.real("hi_power");
    const auto pts = p.integer("points");
    if (!(lo > 0 && hi >= lo) || pts < 1 || pts > 100000) throw ConfigError("experiment: bad sweep range");
    const auto rows = bounds_sweep(m, lo * m.log_Q(), hi * m.log_Q(), static_cast<int>(pts));
    double worst = 0;
    std::size_t violations = 0;
    for (const auto& r : rows) {
        const double ratio = std::exp(-r.eta) / r.classical_error;
        worst = std::max(worst, ratio);
        violations += ratio > 1.0 + 1e-12;
    }
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    ExperimentResult res;
    res.report = base_report(cfg, p);
    res.pass = violations == 0;
    finish(res.report, worst, 1.0, 0.0, 0.0, res.pass);
    res.report["details"] = {{"points", rows.size()}, {"violations", violations}, {"max_exp_neg_eta_over_classical", worst}};
    res.csv = csv.str();
    return res;
}

SieveKind random_kind(std::mt19937_64& rng) { return uniform_u64(rng, 0, 1) ? SieveKind::Upper : SieveKind::Lower; }

DensityPair random_densities(std::mt19937_64& rng, double z) {
    DensityPair g;
    for (u64 q = 2; static_cast<double>(q) < z; ++q) {
        if (!is_prime(q)) continue;
        for (;;) {
            const long den1 = static_cast<long>(q + uniform_u64(rng, 0, 3));
            const long den2 = static_cast<long>(q + uniform_u64(rng, 0, 3));
            const Rational a = uniform_u64(rng, 0, 4) ? Rational(1, den1) : Rational(0);
            const Rational b = uniform_u64(rng, 0, 4) ? Rational(1, den2) : Rational(0);
            if (a + b < 1) {
                g.primes.push_back(q);
                g.g1.push_back(a);
                g.g2.push_back(b);
                break;
            }
        }
    }
    return g;
}

std::vector<u64> primes_below(double z) {
    std::vector<u64> out;
    for (u64 q = 2; static_cast<double>(q) < z; ++q) {
        if (is_prime(q)) out.push_back(q);
    }
    return out;
}

constexpr u64 kZs[] = {3, 5, 7, 11, 13, 17, 19, 23};

} // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ClassNumber: return "class-number";
        case ExperimentKind::Equidistribution: return "equidistribution";
        case ExperimentKind::Congruence: return "congruence";
        case ExperimentKind::Theorem15: return "theorem15";
        case ExperimentKind::SieveOracle: return "sieve-oracle";
        case ExperimentKind::WeightVerify: return "weight-verify";
        case ExperimentKind::BoundsSweep: return "bounds-sweep";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
    for (const auto& [k, _] : all_defaults()) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("experiment: unknown kind '" + name + "'");
}

const Defaults& experiment_defaults(ExperimentKind k) { return all_defaults().at(k); }

ExperimentConfig ExperimentConfig::from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig cfg;
    auto it = kv.find("kind");
    if (it == kv.end()) throw ConfigError("experiment: missing 'kind'");
    cfg.kind = parse_kind(it->second);
    for (const auto& [k, v] : kv) {
        if (k == "kind") continue;
        if (k == "seed" || k == "workers") {
            try {
                // stoull accepts a sign and leading blanks; require plain digits.
                if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(v);
                const unsigned long long n = std::stoull(v);
                if (k == "seed") cfg.seed = n;
                else cfg.workers = static_cast<unsigned>(n);
            } catch (const std::exception&) {
                throw ConfigError("experiment: '" + k + "' must be a non-negative integer");
            }
            continue;
        }
        cfg.params[k] = v;
    }
    if (cfg.workers < 1 || cfg.workers > 256) throw ConfigError("experiment: workers must lie in [1, 256]");
    return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.workers < 1) throw ConfigError("experiment: workers must be >= 1");
    const Params p(cfg.kind, cfg.params);
    switch (cfg.kind) {
        case ExperimentKind::ClassNumber: return run_class_number(cfg, p);
        case ExperimentKind::Equidistribution: return run_equidistribution(cfg, p);
        case ExperimentKind::Congruence: return run_congruence(cfg, p);
        case ExperimentKind::Theorem15: return run_theorem15(cfg, p);
        case ExperimentKind::SieveOracle: return run_sieve_oracle(cfg, p);
        case ExperimentKind::WeightVerify: return run_weight_verify(cfg, p);
        case ExperimentKind::BoundsSweep: return run_bounds_sweep(cfg, p);
    }
    throw ConfigError("experiment: unknown kind");
}

nlohmann::ordered_json to_json(const ExperimentReport& r) {
    json j;
    j["kind"] = r.kind;
    json c = json::object();
    for (const auto& [k, v] : r.config) c[k] = v;
    j["config"] = c;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["rel_error"] = r.rel_error;
    j["budget"] = r.budget;
    j["pass"] = r.pass;
    json n = json::object();
    for (const auto& [k, v] : r.notes) n[k] = v;
    j["notes"] = n;
    return j;
}

std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return rng();
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t r;
    do r = rng();
    while (r >= limit);
    return lo + r % span;
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

SieveInstance random_sieve_instance(std::mt19937_64& rng) {
    SieveInstance in;
    const double z = static_cast<double>(kZs[uniform_u64(rng, 0, 7)]);
    in.g = random_densities(rng, z);
    for (SieveSpec* s : {&in.s1, &in.s2}) {
        s->z = z;
        s->support = primes_below(z);
        s->kind = random_kind(rng);
        s->beta = uniform_real(rng, 1.0, 12.0);
        s->R = std::exp(uniform_real(rng, std::log(z), 8.0 * std::log(z)));
    }
    return in;
}

SieveInstance random_valid_sieve_instance(std::mt19937_64& rng) {
    SieveInstance in;
    const double z = static_cast<double>(kZs[uniform_u64(rng, 0, 5) + 1]);
    const double kappa = 1.0;
    double K_min;
    do {
        in.g = random_densities(rng, z);
        K_min = minimal_dimension_K(in.g, z, kappa);
    } while (!(K_min < 50.0));
    const double K = std::max(K_min, 1.0) * 1.01 + 0.01;
    const double s = 9 * kappa + 1 + 10 * std::log(K) + uniform_real(rng, 0.5, 6.0);
    const int pairing = static_cast<int>(uniform_u64(rng, 0, 2));
    for (SieveSpec* sp : {&in.s1, &in.s2}) {
        sp->z = z;
        sp->support = primes_below(z);
        sp->kappa = kappa;
        sp->K_const = K;
        sp->beta = 9 * kappa + 1;
        sp->R = std::exp(s * std::log(z));
    }
    in.s1.kind = pairing == 1 ? SieveKind::Lower : SieveKind::Upper;
    in.s2.kind = pairing == 2 ? SieveKind::Lower : SieveKind::Upper;
    return in;
}

} // namespace cheb
