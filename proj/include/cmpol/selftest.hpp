#pragma once

#include <string>
#include <vector>

namespace cmpol {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // case count on pass, first failure on fail
};

// Runs every registered invariant check whose name contains `filter`
// (empty = all). Checks are deterministic: fixed seeds, no wall-clock input.
std::vector<CheckResult> run_selftests(const std::string& filter = "");

}  // namespace cmpol
