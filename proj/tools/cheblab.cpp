// cheblab: command-line front end for the prime-counting and bound experiments.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "cheb/arith.hpp"
#include "cheb/betasieve.hpp"
#include "cheb/chebotarev.hpp"
#include "cheb/densities.hpp"
#include "cheb/errors.hpp"
#include "cheb/errorterms.hpp"
#include "cheb/experiment.hpp"
#include "cheb/kernels.hpp"
#include "cheb/quadforms.hpp"
#include "cheb/verify.hpp"
#include "cheb/weights.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitPass = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

cheb::Form parse_form(const std::string& s) {
    std::stringstream ss(s);
    std::string item;
    std::vector<long long> v;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw cheb::ConfigError("cli: form must be a,b,c");
        }
    }
    if (v.size() != 3) throw cheb::ConfigError("cli: form must be a,b,c");
    return {v[0], v[1], v[2]};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cheb::ResourceError("cli: cannot write " + path);
    out << text;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cheb::ConfigError("cli: cannot read config file " + path);
    std::map<std::string, std::string> kv;
    CLI::ConfigBase parser;
    for (const auto& item : parser.from_config(in)) {
        std::string key;
        for (const auto& p : item.parents) key += p + ".";
        key += item.name;
        if (key.empty() || key == "++" || key == "--") continue;
        std::string value;
        for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];
        kv[key] = value;
    }
    return kv;
}

std::string help_defaults() {
    std::ostringstream o;
    o << "Experiment kinds and parameter defaults:\n";
    for (auto k : {cheb::ExperimentKind::ClassNumber, cheb::ExperimentKind::Equidistribution, cheb::ExperimentKind::Congruence,
                   cheb::ExperimentKind::Theorem15, cheb::ExperimentKind::SieveOracle, cheb::ExperimentKind::WeightVerify,
                   cheb::ExperimentKind::BoundsSweep}) {
        o << "  " << cheb::to_string(k) << ":";
        for (const auto& [key, val] : cheb::experiment_defaults(k)) o << ' ' << key << '=' << val;
        o << '\n';
    }
    o << "Common keys: kind, seed=1, workers=1.\n";
    return o.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cheblab: prime counts for binary quadratic forms, sieve identities and error-term bounds"};
    app.require_subcommand(1);
    app.footer("Environment: CHEB_CACHE_DIR (prime bit-set cache directory), CHEB_SIMD=scalar (disable AVX2).\n"
               "Exit codes: 0 pass, 1 invariant failure, 2 configuration error.");

    // classnum
    auto* c_cls = app.add_subcommand("classnum", "Reduced forms and class number of a negative discriminant");
    long long cls_D = -23;
    c_cls->add_option("--D", cls_D, "Discriminant")->capture_default_str();

    // count
    auto* c_cnt = app.add_subcommand("count", "Count primes represented by a form or a class");
    std::string cnt_form;
    long long cnt_D = 0;
    std::size_t cnt_class = 0;
    double cnt_x = 1e6;
    unsigned cnt_workers = 1;
    unsigned long long cnt_P = 1;
    c_cnt->add_option("--form", cnt_form, "Form a,b,c (lattice count)");
    c_cnt->add_option("--D", cnt_D, "Discriminant (prime-ideal count per class)");
    c_cnt->add_option("--class", cnt_class, "Class index with --D")->capture_default_str();
    c_cnt->add_option("--x", cnt_x, "Bound x")->capture_default_str();
    c_cnt->add_option("--workers", cnt_workers, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    c_cnt->add_option("--P", cnt_P, "Only count points with gcd(uv, P) = 1")->capture_default_str();

    // delta
    auto* c_del = app.add_subcommand("delta", "Local densities g', g'' and delta_f(P)");
    std::string del_form = "1,0,1";
    unsigned long long del_P = 15015;
    c_del->add_option("--form", del_form, "Form a,b,c")->capture_default_str();
    c_del->add_option("--P", del_P, "Sieving modulus")->capture_default_str();

    // sieve
    auto* c_sv = app.add_subcommand("sieve", "Beta-sieve weights");
    double sv_z = 10, sv_R = 1e4, sv_beta = 10;
    std::string sv_kind = "upper";
    c_sv->add_option("--z", sv_z, "Sifting level; support is the primes below z")->capture_default_str();
    c_sv->add_option("--R", sv_R, "Level of distribution")->capture_default_str();
    c_sv->add_option("--beta", sv_beta, "Truncation parameter")->capture_default_str();
    c_sv->add_option("--kind", sv_kind, "upper or lower")->capture_default_str()->check(CLI::IsMember({"upper", "lower"}));

    // weights
    auto* c_w = app.add_subcommand("weights", "Verify the smoothing-weight transform bounds");
    double w_x = 1e6, w_eps = 0.1;
    int w_ell = 2;
    c_w->add_option("--x", w_x, "x")->capture_default_str();
    c_w->add_option("--epsilon", w_eps, "epsilon in (0, 1/4)")->capture_default_str();
    c_w->add_option("--ell", w_ell, "Smoothness ell")->capture_default_str();

    // bounds
    auto* c_b = app.add_subcommand("bounds", "Error-term sweep as CSV");
    std::map<std::string, std::string> b_kv{{"kind", "bounds-sweep"}};
    std::string b_out = "-";
    for (const auto& [key, val] : cheb::experiment_defaults(cheb::ExperimentKind::BoundsSweep)) {
        c_b->add_option_function<std::string>("--" + key, [&b_kv, key](const std::string& v) { b_kv[key] = v; }, "default " + val);
    }
    c_b->add_option("--out", b_out, "CSV output path, - for stdout")->capture_default_str();

    // experiment
    auto* c_e = app.add_subcommand("experiment", "Run one configured experiment and write its JSON report");
    std::string e_config, e_out = "-", e_csv;
    std::vector<std::string> e_set;
    c_e->add_option("--config", e_config, "Flat key=value configuration file");
    c_e->add_option("--set", e_set, "key=value override (repeatable)");
    c_e->add_option("--out", e_out, "Report path, - for stdout; timing goes to <out>.timing.json")->capture_default_str();
    c_e->add_option("--csv", e_csv, "CSV series path, when the kind produces one");
    c_e->footer(help_defaults());

    // verify
    auto* c_v = app.add_subcommand("verify", "Run the invariant suites of every module");
    std::string v_level = "quick";
    c_v->add_option("--level", v_level, "quick or full")->capture_default_str()->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*c_cls) {
            const auto cl = cheb::class_representatives(cls_D);
            const auto [D0, d] = cheb::fundamental_decomposition(cls_D);
            json j;
            j["D"] = cls_D;
            j["D0"] = D0;
            j["conductor"] = d;
            j["h"] = cl.h();
            j["h_formula"] = cheb::class_number_order(D0, d);
            json forms = json::array();
            for (const auto& f : cl.forms) forms.push_back(f.str());
            j["forms"] = forms;
            std::cout << j.dump(2) << '\n';
            return j["h"] == j["h_formula"] ? kExitPass : kExitInvariant;
        }
        if (*c_cnt) {
            const auto t0 = Clock::now();
            json j;
            j["x"] = cnt_x;
            j["workers"] = cnt_workers;
            j["isa"] = std::string(cheb::kernels::isa_name(cheb::kernels::active_isa()));
            if (!cnt_form.empty()) {
                const auto f = parse_form(cnt_form);
                if (f.a <= 0 || f.disc() >= 0) throw cheb::ConfigError("cli: form must be positive definite");
                const auto n = cheb::lattice_prime_count(f, static_cast<cheb::u64>(cnt_x), cnt_workers, cnt_P);
                j["form"] = f.str();
                j["P"] = cnt_P;
                j["lattice_points"] = n;
                j["weighted_count"] = static_cast<double>(n) / cheb::stab_order(f.disc());
            } else if (cnt_D != 0) {
                const auto t = cheb::ClassTarget::make(cnt_D, cnt_class);
                j["D"] = cnt_D;
                j["class"] = t.form().str();
                j["pi_C"] = cheb::pi_C(cnt_x, t, cnt_workers);
                j["li_over_h"] = cheb::li(cnt_x) / static_cast<double>(t.class_list.h());
            } else {
                throw cheb::ConfigError("cli: count needs --form or --D");
            }
            j["seconds"] = seconds_since(t0);
            std::cout << j.dump(2) << '\n';
            return kExitPass;
        }
        if (*c_del) {
            const auto f = parse_form(del_form);
            const auto P = cheb::SievingModulus::make(del_P);
            json j;
            j["form"] = f.str();
            j["P"] = P.P;
            json primes = json::array();
            for (auto p : P.primes) {
                primes.push_back({{"p", p},
                                  {"g_prime", cheb::to_string(cheb::g_prime(p, f, P))},
                                  {"g_dprime", cheb::to_string(cheb::g_dprime(p, f, P))},
                                  {"factor", cheb::to_string(cheb::delta_factor(p, f))}});
            }
            j["primes"] = primes;
            j["delta"] = cheb::to_string(cheb::delta_f(f, P));
            j["obstructed"] = cheb::represents_odd_primes_obstructed(f, P);
            std::cout << j.dump(2) << '\n';
            return kExitPass;
        }
        if (*c_sv) {
            cheb::SieveSpec s;
            s.z = sv_z;
            s.R = sv_R;
            s.beta = sv_beta;
            s.kind = sv_kind == "upper" ? cheb::SieveKind::Upper : cheb::SieveKind::Lower;
            for (cheb::u64 p = 2; static_cast<double>(p) < sv_z; ++p) {
                if (cheb::is_prime(p)) s.support.push_back(p);
            }
            const auto w = cheb::beta_sieve_weights(s);
            json lam = json::object();
            for (const auto& [d, l] : w.lambda) lam[std::to_string(d)] = l;
            json j;
            j["kind"] = sv_kind;
            j["z"] = sv_z;
            j["R"] = sv_R;
            j["beta"] = sv_beta;
            j["terms"] = w.lambda.size();
            j["lambda"] = lam;
            std::cout << j.dump(2) << '\n';
            return kExitPass;
        }
        if (*c_w) {
            cheb::ExperimentConfig cfg;
            cfg.kind = cheb::ExperimentKind::WeightVerify;
            std::ostringstream xs, es;
            xs.precision(17);
            es.precision(17);
            xs << w_x;
            es << w_eps;
            cfg.params = {{"x", xs.str()}, {"epsilon", es.str()}, {"ell", std::to_string(w_ell)}};
            const auto res = cheb::run_experiment(cfg);
            std::cout << res.report.dump(2) << '\n';
            return res.pass ? kExitPass : kExitInvariant;
        }
        if (*c_b) {
            const auto res = cheb::run_experiment(cheb::ExperimentConfig::from_map(b_kv));
            write_text(b_out, *res.csv);
            return res.pass ? kExitPass : kExitInvariant;
        }
        if (*c_e) {
            std::map<std::string, std::string> kv;
            if (!e_config.empty()) kv = read_config(e_config);
            for (const auto& s : e_set) {
                const auto eq = s.find('=');
                if (eq == std::string::npos || eq == 0) throw cheb::ConfigError("cli: --set expects key=value, got '" + s + "'");
                kv[s.substr(0, eq)] = s.substr(eq + 1);
            }
            const auto cfg = cheb::ExperimentConfig::from_map(kv);
            const auto t0 = Clock::now();
            const auto res = cheb::run_experiment(cfg);
            const double secs = seconds_since(t0);
            write_text(e_out, res.report.dump(2) + "\n");
            if (!e_csv.empty() && res.csv) write_text(e_csv, *res.csv);
            json timing;
            timing["kind"] = cheb::to_string(cfg.kind);
            timing["workers"] = cfg.workers;
            timing["seconds"] = secs;
            if (e_out.empty() || e_out == "-") std::cerr << timing.dump() << '\n';
            else write_text(e_out + ".timing.json", timing.dump(2) + "\n");
            return res.pass ? kExitPass : kExitInvariant;
        }
        if (*c_v) {
            const auto outcomes = cheb::verify_all(v_level == "full" ? cheb::VerifyLevel::Full : cheb::VerifyLevel::Quick, std::cout);
            std::size_t failed = 0;
            for (const auto& o : outcomes) failed += !o.pass;
            std::cout << (failed ? "FAILED: " : "OK: ") << outcomes.size() - failed << "/" << outcomes.size() << " checks passed\n";
            return failed ? kExitInvariant : kExitPass;
        }
    } catch (const cheb::ConfigError& e) {
        std::cerr << json{{"error", "configuration"}, {"message", e.what()}}.dump() << '\n';
        return kExitConfig;
    } catch (const cheb::DomainError& e) {
        std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "failure"}, {"message", e.what()}}.dump() << '\n';
        return kExitInvariant;
    }
    return kExitPass;
}
