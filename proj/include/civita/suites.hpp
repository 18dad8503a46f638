#pragma once

#include <string>
#include <vector>

namespace civita {

// One verification suite: a batch of checks for a single theorem or
// closed-form result, run at desk scale with pinned tolerances.
struct SuiteResult {
    std::string name;
    bool passed = false;
    long checks = 0;
    long failures = 0;
    double seconds = 0.0;
    std::string note;  // first failure, or a summary line
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, unsigned seed = 0);
std::vector<SuiteResult> run_all_suites(unsigned seed = 0);

} // namespace civita
