#ifndef TIGHTPATH_PIPELINE_HPP
#define TIGHTPATH_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightpath/absorbing.hpp"
#include "tightpath/cover.hpp"
#include "tightpath/three_graph.hpp"

namespace tightpath {

struct ReserveOptions {
    double slack = 0.2;  // accepted shortfall below the expected gamma share
    int retries = 64;
    int min_floor = 0;  // below this measured guarantee the sample is rejected
};

struct ReservoirResult {
    enum class Status { met_target, best_effort, failed };
    Status status = Status::failed;
    VertexSet vertices;
    int guarantee = 0;   // measured min over all pairs of |N(uv) ∩ A|
    double target = 0;   // (delta2 - |excluded|) * gamma * (1 - slack)
};

/// Random reservoir: every vertex outside `excluded` is kept with probability
/// gamma. Samples are re-drawn until the measured per-pair guarantee reaches
/// the target; the best sample is returned with its measurement otherwise.
ReservoirResult reserve_sample(const ThreeGraph& g, double gamma, uint64_t seed,
                               const VertexSet& excluded, const ReserveOptions& opts = {});

struct PipelineConfig {
    double alpha = 0.05;            // codegree slack reported against (1/3 + alpha)n
    double gamma = 0.12;            // reservoir fraction
    double eta = 0.05;              // bulk-cover leftover target fraction
    long long witness_threshold = 0;  // 0 = default_witness_threshold(n)
    long long min_index_edges = 0;    // 0 = max(1, 0.01 n^3)
    int absorbers_per_index = 1;
    int connection_interior = 4;
    int greedy_restarts = 4;
    int max_segments = 64;
    long long search_budget = 100000;
    uint64_t seed = 1;
    bool allow_short = true;
};

struct PipelineStage {
    std::string name;
    bool ok = false;
    std::string detail;
    int uncovered_after = -1;  // vertices not yet inside a segment/chain
};

struct PipelineReport {
    int n = 0;
    int m = 0;
    int delta2 = 0;
    bool degree_condition_met = false;  // delta2 >= (1/3 + alpha) n; reported, not enforced
    int tight_component_count = 0;
    int partition_parts = 0;
    int absorbers_banked = 0;
    int reservoir_size = 0;
    int reservoir_guarantee = 0;
    std::vector<PipelineStage> stages;
    bool success = false;
    int final_path_count = 0;
    std::string failure_stage;
    std::string failure_reason;
    /// Set on failure when the graph has more than two tight components: the
    /// structural obstruction the sharpness construction exhibits.
    bool component_obstruction = false;
};

/// Constructive heuristic for a two-path cover: reachability partition,
/// per-index absorber harvest into absorbing chains, reservoir, greedy bulk
/// cover, reservoir-mediated connection with a parity fix, then leftover
/// absorption triple by triple. On success the returned cover is validated
/// and has at most two paths. Deterministic per (graph, config).
std::pair<std::optional<PathCover>, PipelineReport> heuristic_two_path_cover(
    const ThreeGraph& g, const PipelineConfig& cfg);

}  // namespace tightpath

#endif
