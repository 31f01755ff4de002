#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toral::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs criteria 1..11 in order, printing one PASS/FAIL line per criterion.
std::vector<CriterionResult> run_criteria(std::ostream& out);

/// 0 when every criterion passed, 1 otherwise.
int run_all(std::ostream& out);

} // namespace toral::acceptance
