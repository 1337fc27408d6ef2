#ifndef TIGHTPATH_CLAIMS_HPP
#define TIGHTPATH_CLAIMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tightpath/three_graph.hpp"

namespace tightpath {

enum class ClaimScale { small, medium };

struct ClaimResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the full acceptance suite: extremal regressions, oracle equivalences,
/// the two-component and K4- property suites, the orientation obstruction,
/// the divisibility barrier, index systems, deficiency, the pipeline success
/// rate, and the counterexample search. Deterministic; medium scale adds
/// larger instances.
std::vector<ClaimResult> run_acceptance_claims(ClaimScale scale, int threads = 0);

struct CounterexampleParams {
    int n = 9;
    long long samples = 10000;
    uint64_t seed = 1;
    int delta = -1;  // -1 = ceil(n/3)
    std::vector<ThreeGraph> planted;
    int threads = 0;
};

struct CounterexampleOutcome {
    long long sampled = 0;
    long long filtered_out = 0;  // instances rejected by the codegree filter
    long long hits = 0;          // covers requiring >= 3 paths, oracle-confirmed
    nlohmann::json certificates = nlohmann::json::array();
    int delta_used = 0;
};

/// Samples repaired random graphs with min codegree >= delta, runs the exact
/// cover solver, and reports instances needing >= 3 paths (each re-verified
/// by the brute-force oracle when n <= 9). Planted instances pass through the
/// same codegree filter as sampled ones.
CounterexampleOutcome search_counterexample(const CounterexampleParams& params);

}  // namespace tightpath

#endif
