#ifndef TIGHTPATH_COVER_HPP
#define TIGHTPATH_COVER_HPP

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tightpath/tight_structure.hpp"

namespace tightpath {

/// A set of vertex-disjoint tight paths meant to cover V of a host graph.
struct PathCover {
    std::vector<TightPath> paths;
};

struct CoverValidation {
    bool ok = false;
    std::vector<std::string> violations;
    explicit operator bool() const { return ok; }
};

/// Disjointness + coverage of V + per-path tightness. With allow_short =
/// false, every path must have at least 3 vertices. Never throws; failures
/// come back as a violation list.
CoverValidation validate_cover(const ThreeGraph& g, const PathCover& cover, bool allow_short);

struct CoverOptions {
    bool allow_short = true;
    int k_cap = INT_MAX;
    int dp_cutoff = 16;
    std::size_t memory_cap_bytes = 512ull << 20;
};

/// All vertex subsets (as bitmasks) spannable by a single tight path,
/// from the forward DP over (mask, last ordered pair). Singletons and pairs
/// are included only when allow_short is set.
std::vector<uint32_t> path_realizable_masks(const ThreeGraph& g, bool allow_short,
                                            const CoverOptions& opts = {});

enum class CoverStatus {
    optimal,       // optimum is exact and witnessed
    cap_exceeded,  // true optimum computed but larger than k_cap
    infeasible,    // no cover exists under the policy (allow_short = false)
};

struct CoverResult {
    CoverStatus status = CoverStatus::infeasible;
    int optimum = -1;  // exact optimum (also the lower bound when cap_exceeded)
    PathCover witness;
    bool proved_optimal = false;
    long long states_explored = 0;
};

/// Exact minimum tight-path cover by subset DP: g(mask) = 1 + min over
/// realizable submasks containing mask's lowest vertex. Witnesses are
/// reconstructed by walking the pair DP backwards.
CoverResult exact_min_cover(const ThreeGraph& g, const CoverOptions& opts = {});

/// Independent oracle: recursive enumeration of path packings with
/// branch-and-bound, no bitmask-DP machinery shared with exact_min_cover.
/// Restricted to n <= 9.
CoverResult brute_force_min_cover(const ThreeGraph& g, bool allow_short);

/// Smallest t <= t_max with a tight Hamilton cycle in join_omni(g, t);
/// nullopt when none qualifies. Requires n + t_max within the DP cutoff.
std::optional<int> min_deficiency(const ThreeGraph& g, int t_max,
                                  const HamiltonOptions& opts = {});

}  // namespace tightpath

#endif
