#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tubeops {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the eleven acceptance checks.  quick shrinks sample counts for a
/// fast smoke pass; log (optional) receives one line per finished check.
std::vector<CheckResult> run_acceptance(bool quick, std::ostream* log = nullptr);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace tubeops
