#ifndef TIGHTPATH_TIGHT_STRUCTURE_HPP
#define TIGHTPATH_TIGHT_STRUCTURE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tightpath/three_graph.hpp"

namespace tightpath {

/// Ordered distinct vertices where every 3 consecutive ones form an edge of
/// the host graph (vacuous below 3 vertices). The ends of v1..vp are the
/// ordered pairs (v2,v1) and (v_{p-1},v_p): appending w to the end (a,b)
/// requires the edge {a,b,w} and yields the new end (b,w).
struct TightPath {
    std::vector<int> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    std::pair<int, int> front_end() const { return {vertices[1], vertices[0]}; }
    std::pair<int, int> back_end() const { return {vertices[size() - 2], vertices[size() - 1]}; }
    TightPath reversed() const { return {{vertices.rbegin(), vertices.rend()}}; }
};

/// View of the directed graph on ordered pairs with arc (a,b)->(b,c) per edge
/// {a,b,c}. Arcs are derived from pair neighborhoods, not stored.
class PairDigraph {
public:
    explicit PairDigraph(const ThreeGraph& g) : g_(&g) {}

    int out_degree(int a, int b) const { return g_->codegree(a, b); }
    const VertexSet& out_neighbors(int a, int b) const { return g_->pair_neighbors(a, b); }
    long long arc_count() const;  // = 6|E|: each edge yields one arc per ordering

private:
    const ThreeGraph* g_;
};

inline PairDigraph pair_digraph(const ThreeGraph& g) { return PairDigraph(g); }

/// Equivalence classes of edges under pseudo-path connectivity
/// (|e ∩ f| = 2 closure). Component ids are contiguous from 0, assigned in
/// order of first edge appearance.
struct TightComponents {
    int count = 0;
    std::vector<int> edge_component;  // parallel to g.edges()

    /// Component of the edges through pair (u,v); -1 when codegree(u,v) = 0.
    /// Well-defined: all edges through one pair are pseudo-path connected.
    int component_of_pair(const ThreeGraph& g, int u, int v) const;
    /// Vertices incident to at least one edge of each component.
    std::vector<std::vector<int>> vertex_support(const ThreeGraph& g) const;
};

TightComponents tight_components(const ThreeGraph& g);

/// Window check over consecutive triples. Throws on a repeated vertex.
/// Paths of 1 or 2 vertices are vacuously tight.
bool is_tight_path(const ThreeGraph& g, std::span<const int> seq);
/// Cyclic window check; sequences shorter than 5 are rejected as malformed
/// (their cyclic windows would repeat vertices).
bool is_tight_cycle(const ThreeGraph& g, std::span<const int> seq);

enum class SearchVerdict {
    found,
    proved_absent,     // exhaustive search completed without a hit
    budget_exhausted,  // randomized search gave up; "not found" only
};

struct PathSearchResult {
    SearchVerdict verdict;
    std::optional<TightPath> path;
    long long nodes_explored = 0;
};

struct PathSearchOptions {
    int exhaustive_cutoff = 24;  // allowed-vertex count up to which DFS is complete
    int restarts = 64;           // randomized mode: restart budget multiplier
    uint64_t seed = 0;
};

/// Searches for a tight path that literally begins with start.first,start.second
/// and ends with end.first,end.second, using at most max_interior fresh
/// vertices in between, all avoiding `forbidden` (which must exclude the four
/// pair vertices). Iterative-deepening DFS over the pair digraph; complete
/// when the allowed vertex count is at most exhaustive_cutoff, randomized with
/// restarts beyond that. A cross-component start/end is refuted immediately.
PathSearchResult find_tight_path_between(const ThreeGraph& g, std::pair<int, int> start,
                                         std::pair<int, int> end, int max_interior,
                                         const VertexSet& forbidden,
                                         const PathSearchOptions& opts = {});

struct HamiltonOptions {
    int dp_cutoff = 18;
    std::size_t memory_cap_bytes = 512ull << 20;
};

/// Exact decision by DP over (visited set, last ordered pair).
/// Throws budget_exceeded_error above the cutoff or the memory cap.
bool has_hamilton_tight_path(const ThreeGraph& g, const HamiltonOptions& opts = {});
/// Cycle variant: fixes vertex 0 and its successor, closes both wrap windows.
/// Tight cycles need at least 5 vertices; smaller graphs never qualify.
bool has_hamilton_tight_cycle(const ThreeGraph& g, const HamiltonOptions& opts = {});

/// A 4-set containing `edge` that spans >= 3 edges, or nullopt.
/// Throws if `edge` is not an edge of g.
std::optional<std::array<int, 4>> find_k4_minus_containing(const ThreeGraph& g, const Triple& edge);

/// Number of unlabeled part-triples (A,B,C) with the given sizes such that
/// every cross triple is an edge (copies of K_{a,b,c} as subgraphs; edges
/// inside parts are unconstrained). Counts are divided by the automorphisms
/// of the size multiset. Requires a+b+c <= 9.
long long count_complete_3partite_copies(const ThreeGraph& g, int a, int b, int c);

struct GreedyPathOptions {
    int restarts = 4;
    long long backtrack_budget = 0;  // 0 = 40n per restart
};

/// Maximal-under-extension tight path avoiding `forbidden`: random seed edge,
/// extension at both ends, bounded backtracking over alternative end choices
/// on stall. Deterministic per seed. Returns a 1-vertex path when no allowed
/// edge exists; throws when every vertex is forbidden.
TightPath longest_tight_path_greedy(const ThreeGraph& g, uint64_t seed, const VertexSet& forbidden,
                                    const GreedyPathOptions& opts = {});

}  // namespace tightpath

#endif
