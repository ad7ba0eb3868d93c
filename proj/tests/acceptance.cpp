// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <cstring>

#include "tubeops/selftest.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    const auto results = tubeops::run_acceptance(quick, nullptr);
    bool all = true;
    int i = 1;
    for (const auto& r : results) {
        std::printf("criterion %2d  %-38s %s  (%.1fs)  %s\n", i++, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        all = all && r.passed;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: FAILURES above");
    return all ? 0 : 1;
}
