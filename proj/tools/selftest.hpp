#pragma once

#include <string>
#include <vector>

namespace eternalbar::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // first failure, or a short summary
    double seconds = 0;
};

// Runs the ten acceptance criteria in order; criterion 10 aggregates the
// wall time of the rest.
std::vector<CriterionResult> run_all();

} // namespace eternalbar::selftest
