#pragma once

#include <string>
#include <vector>

namespace gcoh {

// One acceptance check: an exact, machine-verified statement about the
// computations the library performs on the built-in spaces.
struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // short summary, or the first mismatch on failure
};

// Runs the ten acceptance checks in order.  Every check recomputes its data
// from the presentations and records shipped with the library; nothing is
// read from disk or the network.
std::vector<CriterionResult> run_verification();

}  // namespace gcoh
