#pragma once

// Named self-check suites behind `divvar verify`. Each suite returns
// per-check residuals and tolerances as machine-readable JSON.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace divvar {

struct VerifyCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;
    double seconds = 0.0;

    bool passed() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    int workers = 0;
    unsigned long long samples = 1'000'000;  // Monte Carlo checks
    unsigned long long seed = 7;
};

/// The eight core suites followed by the extra structural ones.
const std::vector<std::string>& verify_suite_names();

/// Throws std::invalid_argument listing the valid names for an unknown suite.
VerifyReport run_verify(std::string_view suite, const VerifyOptions& opt = {});

}  // namespace divvar
