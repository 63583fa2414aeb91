#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheb/betasieve.hpp"
#include "cheb/chebotarev.hpp"

namespace cheb {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class ExperimentKind { ClassNumber, Equidistribution, Congruence, Theorem15, SieveOracle, WeightVerify, BoundsSweep };

std::string to_string(ExperimentKind k);
/// Throws ConfigError for an unknown name.
ExperimentKind parse_kind(const std::string& name);

/// One experiment run: kind, kind-specific parameters as flat key=value
/// strings, a seed for randomised instances and a worker count.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ClassNumber;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    unsigned workers = 1;

    /// Reads kind, seed and workers from the map; everything else is a parameter.
    static ExperimentConfig from_map(const std::map<std::string, std::string>& kv);
};

/// Accepted parameter keys and defaults per kind, for --help and validation.
const std::vector<std::pair<std::string, std::string>>& experiment_defaults(ExperimentKind k);

struct ExperimentResult {
    nlohmann::ordered_json report;
    std::optional<std::string> csv;
    bool pass = false;
};

/// Validates every parameter before running; ConfigError on bad input.
/// Deterministic in (config, seed); the report carries no timing.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

nlohmann::ordered_json to_json(const ExperimentReport& r);

/// Randomised instances for the sieve identities.
struct SieveInstance {
    SieveSpec s1, s2;
    DensityPair g;
};

/// Arbitrary beta, R and kinds; only the algebraic identities apply.
SieveInstance random_sieve_instance(std::mt19937_64& rng);
/// Satisfies every hypothesis of the composition theorem (kappa = 1, beta = 10).
SieveInstance random_valid_sieve_instance(std::mt19937_64& rng);

/// Uniform integer in [lo, hi], identical on every standard library.
std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);
double uniform_real(std::mt19937_64& rng, double lo, double hi);

} // namespace cheb
