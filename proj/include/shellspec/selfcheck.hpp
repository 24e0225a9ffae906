#pragma once

#include <string>
#include <vector>

namespace shellspec {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast invariant checks over every module.
std::vector<CheckResult> run_selfcheck(int threads = 0);

}  // namespace shellspec
