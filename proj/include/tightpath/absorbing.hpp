#ifndef TIGHTPATH_ABSORBING_HPP
#define TIGHTPATH_ABSORBING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tightpath/cover.hpp"
#include "tightpath/three_graph.hpp"
#include "tightpath/tight_structure.hpp"

namespace tightpath {

/// Number of ordered 4-tuples (a,b,c,d) of fresh distinct vertices such that
/// both a,b,u,c,d and a,b,v,c,d are tight paths. Counting stops early at cap.
/// Symmetric in u and v by construction.
long long count_reach_witnesses(const ThreeGraph& g, int u, int v, long long cap);

struct ReachabilityGraph {
    int n = 0;
    long long threshold = 1;
    std::vector<VertexSet> adj;                    // u ~ v iff count >= threshold
    std::vector<std::vector<long long>> witness_count;  // counts capped at threshold

    bool adjacent(int u, int v) const { return adj[u].test(v); }
};

/// 2-graph with u ~ v iff count_reach_witnesses(g,u,v,threshold) >= threshold.
ReachabilityGraph reachability_graph(const ThreeGraph& g, long long threshold);

/// Default witness threshold: max(1, 0.001 n^4). The asymptotic theory fixes
/// no usable constant; this is a config choice, reported with results.
long long default_witness_threshold(int n);

struct ReachPartition {
    VertexPartition partition;
    std::vector<long long> closure_evidence;  // min intra-part witness count (capped)
    long long threshold = 1;
};

/// Connected components of the reachability graph; when delta_target > 0 the
/// smallest parts are merged greedily until at most floor(1/delta_target)
/// remain. Closure evidence is measured, never assumed.
ReachPartition reachability_partition(const ThreeGraph& g, long long threshold,
                                      double delta_target = 0.0);

/// S-absorber: tight paths `gadget` (Q) plus replacements (Q') with
/// V(Q) ∪ S = V(Q'), |Q| = |Q'|, pairwise equal ordered end pairs,
/// V(Q) ∩ S = ∅, all paths tight and each family vertex-disjoint.
struct Absorber {
    std::vector<int> target;             // S, |S| = 3
    std::vector<TightPath> gadget;       // Q: appears in a cover, S uncovered
    std::vector<TightPath> replacement;  // Q': covers V(Q) ∪ S with same ends
};

struct AbsorberCheck {
    bool ok = false;
    std::vector<std::string> violations;
    explicit operator bool() const { return ok; }
};

/// Checks every Absorber invariant literally, independent of how the gadget
/// was found.
AbsorberCheck verify_absorber(const ThreeGraph& g, const Absorber& a);

enum class AbsorberFailStage {
    none,
    witness_stage,       // some target vertex has no swap partner at all
    p4_stage,            // no partner triple forms an edge with an insertion frame
    no_compatible_edge,  // lattice: no edge matches the index vector of S
    k232_stage,          // lattice: no K_{2,3,2} extension of a compatible edge
    reachability_stage,  // lattice: no witness linkage for some v_i <-> w_i
    assembly_stage,      // pieces exist but no disjoint assembly was found
    budget_exhausted,    // randomized search ran out before any verdict
};

const char* to_string(AbsorberFailStage stage);

struct AbsorberSearchResult {
    std::optional<Absorber> absorber;
    AbsorberFailStage fail_stage = AbsorberFailStage::none;
    bool exhaustive = false;  // true: a not-found verdict is a proof of absence
    std::string detail;
};

struct AbsorberSearchOptions {
    uint64_t seed = 0;
    long long budget = 100000;   // randomized samples
    int exhaustive_cutoff = 24;  // n up to which stages enumerate completely
};

/// The 19-vertex gadget: per target vertex v_i a witness frame a_i b_i c_i d_i
/// swapping v_i <-> w_i, plus a 4-path u1 u2 u3 u4 that opens to
/// u1 u2 w1 w2 w3 u3 u4. Stage diagnostics identify what could not be built.
AbsorberSearchResult find_simple_absorber(const ThreeGraph& g, const std::vector<int>& target,
                                          const VertexSet& forbidden,
                                          const AbsorberSearchOptions& opts = {});

/// Lattice absorber: a K_{2,3,2} copy containing an edge e with
/// i_P(e) = i_P(S); the leftover K_{1,2,1} forms the insertion path; each
/// v_i <-> w_i is linked by a direct 4-set witness or by two witnesses
/// composed through an intermediate vertex.
AbsorberSearchResult find_lattice_absorber(const ThreeGraph& g, const VertexPartition& p,
                                           const std::vector<int>& target,
                                           const VertexSet& forbidden,
                                           const AbsorberSearchOptions& opts = {});

/// Splices each gadget path (located as a contiguous subpath of the cover,
/// forward or reversed) into its replacement. Throws when the gadget is not
/// embedded or S intersects the cover.
PathCover apply_absorber(const PathCover& cover, const Absorber& a);

/// Non-negative integer combination of the allowed triple-index vectors whose
/// part sums hit (count_x, count_y); lexicographically minimal in the fixed
/// order (3,0),(2,1),(1,2),(0,3). Requires count_x + count_y ≡ 0 (mod 3).
/// Absence is a legitimate answer (nullopt).
std::optional<std::vector<std::pair<IndexVector, int>>> solve_index_system(
    int count_x, int count_y, const std::vector<IndexVector>& allowed);

/// Index vectors attained by at least min_edges edges of g under a partition
/// with one or two parts.
std::vector<IndexVector> absorbable_index_vectors(const ThreeGraph& g, const VertexPartition& p,
                                                  long long min_edges);

}  // namespace tightpath

#endif
