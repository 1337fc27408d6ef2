#ifndef TIGHTPATH_THREE_GRAPH_HPP
#define TIGHTPATH_THREE_GRAPH_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tightpath {

using VertexSet = boost::dynamic_bitset<>;
using Triple = std::array<int, 3>;

/// 3-uniform hypergraph on vertices 0..n-1. Immutable after construction;
/// safe to read from many threads. Edges are kept canonically sorted and the
/// pair neighborhoods are bitsets, which makes N(u,v) intersections the cheap
/// primitive every search below leans on.
class ThreeGraph {
public:
    ThreeGraph() = default;
    ThreeGraph(int n, const std::vector<Triple>& triples);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Triple>& edges() const { return edges_; }

    bool has_edge(int u, int v, int w) const;
    /// Index of the canonical edge {u,v,w} in edges(), or -1.
    int edge_index(int u, int v, int w) const;

    /// N(u,v) = { w : {u,v,w} in E }, as a bitset of size n. u != v required.
    const VertexSet& pair_neighbors(int u, int v) const;

    int codegree(int u, int v) const;  // deg(u,v); throws if u == v
    int min_codegree() const;          // delta_2; throws if n < 2

    static std::size_t pair_count(int n) { return std::size_t(n) * (n - 1) / 2; }
    std::size_t pair_index(int u, int v) const;

private:
    int n_ = 0;
    std::vector<Triple> edges_;
    std::vector<VertexSet> pair_adj_;
    std::unordered_map<uint64_t, int> edge_lookup_;

    uint64_t edge_key(int u, int v, int w) const;
};

inline Triple sorted_triple(int a, int b, int c) {
    Triple t{a, b, c};
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    if (t[1] > t[2]) std::swap(t[1], t[2]);
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    return t;
}

/// Partition of a subset of [0,n) into labeled disjoint parts.
class VertexPartition {
public:
    VertexPartition() = default;
    explicit VertexPartition(std::vector<std::vector<int>> parts);

    int part_count() const { return static_cast<int>(parts_.size()); }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    const std::vector<int>& part(int i) const { return parts_.at(i); }
    /// Part index of v, or -1 when v is outside every part.
    int part_of(int v) const;

private:
    std::vector<std::vector<int>> parts_;
    std::vector<int> part_of_;
};

/// Per-part intersection sizes of a vertex set with a partition.
struct IndexVector {
    std::vector<int> coords;

    auto operator<=>(const IndexVector&) const = default;
};

/// i_P(S). Throws if some vertex of S lies outside every part.
IndexVector index_vector(const VertexPartition& p, std::span<const int> s);

}  // namespace tightpath

#endif
