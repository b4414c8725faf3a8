#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

namespace disi {

struct CheckResult {
    std::string group;
    std::string name;
    bool pass;
    double measured;
    double tolerance;
    std::string detail;
};

struct VerifyOptions {
    /// Groups to run; empty runs everything.
    std::vector<std::string> only;
    std::uint64_t seed = 20240607;
};

struct CheckGroup {
    std::string name;
    int criterion;
    std::string title;
};

/// Every group in run order.
const std::vector<CheckGroup>& check_groups();

/// Runs the selected groups. Throws ConfigError for an unknown group name.
std::vector<CheckResult> run_checks(const VerifyOptions& opts);

/// [{check_name, group, pass, measured, tolerance, detail}, ...]
nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

}  // namespace disi
