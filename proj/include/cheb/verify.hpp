#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cheb {

enum class VerifyLevel { Quick, Full };

struct CheckOutcome {
    std::string module;
    std::string invariant;
    bool pass = false;
    std::string detail;  // counterexample or error text on failure
};

/// Invariant suites of every module. Quick stays well under a minute; full
/// adds the 10^7-scale counts. Each outcome is also written to log as it
/// completes.
std::vector<CheckOutcome> verify_all(VerifyLevel level, std::ostream& log);

} // namespace cheb
