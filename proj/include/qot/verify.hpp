#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qot {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

/// Criterion ids run by a suite: all | cost | lip | entropy | group | geometry | mixing.
/// Throws InputError for unknown or empty names.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one acceptance criterion (1..13). Deterministic for a fixed seed.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed = 0);

}  // namespace qot
