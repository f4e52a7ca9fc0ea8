#pragma once

#include <string>
#include <vector>

namespace ow {

// One verdict of the release gate. Criteria are numbered 1..17; each runs
// the full check at its stated tolerance and never weakens on failure.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

int criterion_count();
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all_criteria();

}  // namespace ow
