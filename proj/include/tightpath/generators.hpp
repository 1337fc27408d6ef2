#ifndef TIGHTPATH_GENERATORS_HPP
#define TIGHTPATH_GENERATORS_HPP

#include <cstdint>

#include "tightpath/three_graph.hpp"

namespace tightpath {

struct PartitionedGraph {
    ThreeGraph graph;
    VertexPartition partition;
};

ThreeGraph gen_complete(int n);  // n >= 3

/// Complete 3-graph minus all triples with exactly one vertex in X.
/// X = {0..floor(n/2)-1}, Y the rest; n >= 5. delta_2 = ceil(n/2) - 2.
PartitionedGraph gen_h0(int n);

/// Parts V0,V1,V2 of size n/3; edges are the ViViV(i+1) triples (mod 3).
/// Requires 3 | n and n >= 6. Three tight components by construction.
PartitionedGraph gen_h1(int n);

/// Edges are all triples meeting X, |X| = x_size, 1 <= x_size <= n-2.
PartitionedGraph gen_h2(int n, int x_size);

/// Divisibility barrier: all triples inside X plus all triples with exactly
/// one vertex in X. Every edge meets X an odd number of times; Y spans no edge.
PartitionedGraph gen_h0_prime(int n, int x_size);  // x_size >= 3, n - x_size >= 3

/// Every triple meeting all three clusters is an edge.
PartitionedGraph gen_complete_3partite(int a, int b, int c);

/// Adds t universal vertices: new edges are every triple containing at least
/// one new vertex. join_omni(G, 0) == G.
ThreeGraph join_omni(const ThreeGraph& g, int t);

/// Deletion-repair sampler: start from the complete 3-graph and repeatedly
/// delete a random edge whose removal keeps every touched pair's codegree
/// >= delta. Stops at target_edges (0 = as sparse as possible) or after a
/// failure streak of 50|E| attempts. Deterministic per seed; the returned
/// graph always satisfies min_codegree >= delta.
ThreeGraph gen_random_min_codegree(int n, int delta, uint64_t seed, int target_edges = 0);

/// Repaired sampler for the strong-density predicate: every pair has
/// codegree 0 or >= ceil(n/3), with exactly zero_pairs pairs at 0.
/// Built by repairing to ceil(n/3) + zero_pairs and then deleting every edge
/// through zero_pairs randomly chosen pairs (each kill lowers any other
/// pair's codegree by at most 1).
ThreeGraph gen_random_strong_dense(int n, int zero_pairs, uint64_t seed);

}  // namespace tightpath

#endif
