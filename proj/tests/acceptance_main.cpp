// Acceptance gate: runs every claim at its stated tolerance and prints one
// pass/fail line per criterion. Exit code 0 only when all pass.

#include <cstdio>
#include <cstring>

#include "tightpath/claims.hpp"
#include "tightpath/util.hpp"

int main(int argc, char** argv) {
    using namespace tightpath;
    ClaimScale scale = ClaimScale::small;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--medium") == 0) scale = ClaimScale::medium;

    std::vector<ClaimResult> results = run_acceptance_claims(scale, effective_thread_count());
    int failures = 0;
    for (const ClaimResult& r : results) {
        std::printf("[%s] criterion %d: %s — %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
