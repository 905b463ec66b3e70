// One line per acceptance criterion; nonzero exit when any fails.
#include <cstdio>

#include "qot/verify.hpp"

int main() {
    int failed = 0;
    for (const auto& r : qot::run_suite("all", 0)) {
        std::printf("%s [%d] %s: %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d/13 criteria passed\n", 13 - failed);
    return failed == 0 ? 0 : 1;
}
