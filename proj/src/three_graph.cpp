#include "tightpath/three_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tightpath {

ThreeGraph::ThreeGraph(int n, const std::vector<Triple>& triples) : n_(n) {
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    edges_.reserve(triples.size());
    for (const Triple& raw : triples) {
        Triple t = sorted_triple(raw[0], raw[1], raw[2]);
        if (t[0] < 0 || t[2] >= n)
            throw std::invalid_argument("edge vertex out of range [0," + std::to_string(n) + ")");
        if (t[0] == t[1] || t[1] == t[2])
            throw std::invalid_argument("edge has a repeated vertex");
        edges_.push_back(t);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    pair_adj_.assign(pair_count(n), VertexSet(n));
    edge_lookup_.reserve(edges_.size() * 2);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Triple& e = edges_[i];
        pair_adj_[pair_index(e[0], e[1])].set(e[2]);
        pair_adj_[pair_index(e[0], e[2])].set(e[1]);
        pair_adj_[pair_index(e[1], e[2])].set(e[0]);
        edge_lookup_.emplace(edge_key(e[0], e[1], e[2]), static_cast<int>(i));
    }
}

std::size_t ThreeGraph::pair_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::size_t(u) * n_ - std::size_t(u) * (u + 1) / 2 + (v - u - 1);
}

uint64_t ThreeGraph::edge_key(int u, int v, int w) const {
    return (uint64_t(u) * n_ + v) * n_ + w;
}

bool ThreeGraph::has_edge(int u, int v, int w) const {
    if (u == v || u == w || v == w) return false;
    if (u > v) std::swap(u, v);
    return pair_adj_[pair_index(u, v)].test(w);
}

int ThreeGraph::edge_index(int u, int v, int w) const {
    Triple t = sorted_triple(u, v, w);
    auto it = edge_lookup_.find(edge_key(t[0], t[1], t[2]));
    return it == edge_lookup_.end() ? -1 : it->second;
}

const VertexSet& ThreeGraph::pair_neighbors(int u, int v) const {
    if (u == v) throw std::invalid_argument("pair_neighbors requires two distinct vertices");
    return pair_adj_[pair_index(u, v)];
}

int ThreeGraph::codegree(int u, int v) const {
    if (u == v) throw std::invalid_argument("codegree requires two distinct vertices");
    return static_cast<int>(pair_adj_[pair_index(u, v)].count());
}

int ThreeGraph::min_codegree() const {
    if (n_ < 2) throw std::invalid_argument("min_codegree needs at least 2 vertices");
    std::size_t best = pair_adj_[0].count();
    for (std::size_t i = 1; i < pair_adj_.size() && best > 0; ++i)
        best = std::min(best, pair_adj_[i].count());
    return static_cast<int>(best);
}

VertexPartition::VertexPartition(std::vector<std::vector<int>> parts) : parts_(std::move(parts)) {
    int max_v = -1;
    for (const auto& part : parts_)
        for (int v : part) max_v = std::max(max_v, v);
    part_of_.assign(max_v + 1, -1);
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (int v : parts_[i]) {
            if (v < 0) throw std::invalid_argument("negative vertex in partition");
            if (part_of_[v] != -1) throw std::invalid_argument("partition parts overlap");
            part_of_[v] = static_cast<int>(i);
        }
}

int VertexPartition::part_of(int v) const {
    if (v < 0 || v >= static_cast<int>(part_of_.size())) return -1;
    return part_of_[v];
}

IndexVector index_vector(const VertexPartition& p, std::span<const int> s) {
    IndexVector iv;
    iv.coords.assign(p.part_count(), 0);
    for (int v : s) {
        int i = p.part_of(v);
        if (i < 0) throw std::invalid_argument("index_vector: vertex outside every part");
        ++iv.coords[i];
    }
    return iv;
}

}  // namespace tightpath
