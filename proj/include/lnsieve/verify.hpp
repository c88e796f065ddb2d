#pragma once

// The identity/invariant suite behind `lnsieve verify`.

#include <string>
#include <vector>

namespace lnsieve {

struct CheckResult {
    std::string name;
    bool ok;
    std::string detail;
};

struct VerifyOptions {
    long sweep_x_max = 1000000;
    long ap_p_max = 31;
    bool run_sweep = true;
};

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts = {});

}  // namespace lnsieve
