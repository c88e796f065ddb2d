#pragma once

// Self-grading of an elimination run against the shipped expectations.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnsieve/sieve.hpp"

namespace lnsieve {

struct Grade {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// `fixture` is the parsed expected_outcomes.json.
Grade grade_outcome(const nlohmann::json& fixture, const SieveReport& sieve, const MultiFreyReport* multi,
                    const ObstructionReport* obstruction);

nlohmann::json load_expected_outcomes(const std::string& path);

}  // namespace lnsieve
