#pragma once

#include <string>
#include <vector>

namespace gesim::acceptance {

struct Check {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int index = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Run one criterion (1..10) or all of them. Each check is self-contained and
// prints nothing; callers decide how to report.
CriterionResult run_criterion(int index);
std::vector<CriterionResult> run_all();

// One "PASS criterion-k ..." / "FAIL criterion-k ..." line per criterion plus
// per-check lines; returns the number of failing criteria.
int report(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace gesim::acceptance
