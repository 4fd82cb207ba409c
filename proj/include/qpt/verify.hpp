#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpt {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures;
};

std::vector<std::string> verify_suite_names();

// Runs the named invariant suite ("all" for every module).
std::vector<SuiteResult> run_verify(const std::string& suite, std::uint64_t seed = 20240901);

}  // namespace qpt
