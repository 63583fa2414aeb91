#pragma once

#include <stdexcept>
#include <string>

namespace cheb {

// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Experiment or bound configuration violating a stated hypothesis.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Memory budget or file I/O failure.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation called on an object lacking the required state (e.g. no Siegel data).
struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

// Two evaluation routes that must agree did not.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cheb
