#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairseq::acceptance {

struct CheckResult {
    std::string name;
    std::string title;
    bool pass = false;
    // One-line summary of the measured values.
    std::string summary;
    // JSON object with the measured values.
    std::string details_json;
    double seconds = 0.0;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    // Empty selects every check.
    std::vector<std::string> checks;
    // Removes one atom from every partition before verification.
    bool negative_control = false;
};

// Names in suite order: boundedness, discrepancy, billiard, balance, partition,
// equivalence, model-set, complexity, arrangement, sandwich.
const std::vector<std::string>& check_names();

// Throws InvalidArgument for an unknown check name.
std::vector<CheckResult> run_suite(const SuiteOptions& options);

std::string report_json(const std::vector<CheckResult>& results, const SuiteOptions& options);

}  // namespace fairseq::acceptance
