#include "tightpath/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "tightpath/util.hpp"

namespace tightpath {

namespace {

std::vector<Triple> all_triples(int n) {
    std::vector<Triple> out;
    out.reserve(binomial(n, 3));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w) out.push_back({u, v, w});
    return out;
}

std::vector<int> iota_range(int lo, int hi) {
    std::vector<int> r(hi - lo);
    std::iota(r.begin(), r.end(), lo);
    return r;
}

}  // namespace

ThreeGraph gen_complete(int n) {
    if (n < 3) throw std::invalid_argument("gen_complete: n must be at least 3");
    return ThreeGraph(n, all_triples(n));
}

PartitionedGraph gen_h0(int n) {
    if (n < 5) throw std::invalid_argument("gen_h0: n must be at least 5");
    int x_size = n / 2;
    std::vector<Triple> edges;
    for (const Triple& t : all_triples(n)) {
        int in_x = (t[0] < x_size) + (t[1] < x_size) + (t[2] < x_size);
        if (in_x != 1) edges.push_back(t);
    }
    return {ThreeGraph(n, edges),
            VertexPartition({iota_range(0, x_size), iota_range(x_size, n)})};
}

PartitionedGraph gen_h1(int n) {
    if (n % 3 != 0 || n < 6) throw std::invalid_argument("gen_h1: n must be a multiple of 3, n >= 6");
    int s = n / 3;
    auto part_of = [s](int v) { return v / s; };
    std::vector<Triple> edges;
    for (const Triple& t : all_triples(n)) {
        int p0 = part_of(t[0]), p1 = part_of(t[1]), p2 = part_of(t[2]);
        // two vertices in V_i, one in V_{i+1 mod 3}
        bool ok = (p0 == p1 && p2 == (p0 + 1) % 3) || (p1 == p2 && p0 == (p1 + 1) % 3) ||
                  (p0 == p2 && p1 == (p0 + 1) % 3);
        if (ok) edges.push_back(t);
    }
    return {ThreeGraph(n, edges),
            VertexPartition({iota_range(0, s), iota_range(s, 2 * s), iota_range(2 * s, n)})};
}

PartitionedGraph gen_h2(int n, int x_size) {
    if (x_size < 1 || x_size > n)
        throw std::invalid_argument("gen_h2: need 1 <= x_size <= n");
    std::vector<Triple> edges;
    for (const Triple& t : all_triples(n))
        if (t[0] < x_size) edges.push_back(t);  // sorted, so t[0] is the smallest
    return {ThreeGraph(n, edges),
            VertexPartition({iota_range(0, x_size), iota_range(x_size, n)})};
}

PartitionedGraph gen_h0_prime(int n, int x_size) {
    if (x_size < 3 || n - x_size < 3)
        throw std::invalid_argument("gen_h0_prime: need x_size >= 3 and n - x_size >= 3");
    std::vector<Triple> edges;
    for (const Triple& t : all_triples(n)) {
        int in_x = (t[0] < x_size) + (t[1] < x_size) + (t[2] < x_size);
        if (in_x == 3 || in_x == 1) edges.push_back(t);
    }
    return {ThreeGraph(n, edges),
            VertexPartition({iota_range(0, x_size), iota_range(x_size, n)})};
}

PartitionedGraph gen_complete_3partite(int a, int b, int c) {
    if (a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("gen_complete_3partite: part sizes must be positive");
    int n = a + b + c;
    auto part_of = [a, b](int v) { return v < a ? 0 : (v < a + b ? 1 : 2); };
    std::vector<Triple> edges;
    for (const Triple& t : all_triples(n)) {
        int p0 = part_of(t[0]), p1 = part_of(t[1]), p2 = part_of(t[2]);
        if (p0 != p1 && p1 != p2 && p0 != p2) edges.push_back(t);
    }
    return {ThreeGraph(n, edges),
            VertexPartition({iota_range(0, a), iota_range(a, a + b), iota_range(a + b, n)})};
}

ThreeGraph join_omni(const ThreeGraph& g, int t) {
    if (t < 0) throw std::invalid_argument("join_omni: t must be non-negative");
    int n = g.vertex_count();
    std::vector<Triple> edges = g.edges();
    for (const Triple& triple : all_triples(n + t)) {
        if (triple[2] >= n) edges.push_back(triple);  // touches a new vertex
    }
    return ThreeGraph(n + t, edges);
}

ThreeGraph gen_random_min_codegree(int n, int delta, uint64_t seed, int target_edges) {
    if (n < 3) throw std::invalid_argument("gen_random_min_codegree: n must be at least 3");
    if (delta < 0 || delta > n - 2)
        throw std::invalid_argument("gen_random_min_codegree: need 0 <= delta <= n-2");

    std::vector<Triple> triples = all_triples(n);
    std::vector<char> present(triples.size(), 1);
    std::vector<int> deg(ThreeGraph::pair_count(n), n - 2);
    auto pidx = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return std::size_t(u) * n - std::size_t(u) * (u + 1) / 2 + (v - u - 1);
    };

    std::mt19937_64 rng(seed);
    // Once an edge becomes undeletable it stays so (degrees only drop), so
    // failed candidates are dropped instead of redrawn.
    std::vector<int> candidates(triples.size());
    std::iota(candidates.begin(), candidates.end(), 0);
    long long remaining = static_cast<long long>(triples.size());
    const long long streak_cap = 50 * remaining;
    long long streak = 0;

    while (!candidates.empty() && remaining > target_edges && streak < streak_cap) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        std::size_t slot = pick(rng);
        int ei = candidates[slot];
        const Triple& e = triples[ei];
        std::size_t p01 = pidx(e[0], e[1]), p02 = pidx(e[0], e[2]), p12 = pidx(e[1], e[2]);
        if (deg[p01] > delta && deg[p02] > delta && deg[p12] > delta) {
            present[ei] = 0;
            --deg[p01];
            --deg[p02];
            --deg[p12];
            --remaining;
            streak = 0;
        } else {
            ++streak;
        }
        candidates[slot] = candidates.back();
        candidates.pop_back();
    }

    std::vector<Triple> kept;
    kept.reserve(remaining);
    for (std::size_t i = 0; i < triples.size(); ++i)
        if (present[i]) kept.push_back(triples[i]);
    return ThreeGraph(n, kept);
}

ThreeGraph gen_random_strong_dense(int n, int zero_pairs, uint64_t seed) {
    int mu = (n + 2) / 3;  // ceil(n/3)
    if (zero_pairs < 0) throw std::invalid_argument("gen_random_strong_dense: zero_pairs >= 0");
    if (mu + zero_pairs > n - 2)
        throw std::invalid_argument("gen_random_strong_dense: zero_pairs too large for n");

    ThreeGraph base = gen_random_min_codegree(n, mu + zero_pairs, mix_seed(seed, 0));
    if (zero_pairs == 0) return base;

    // Pick the pairs to kill.
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::mt19937_64 rng(mix_seed(seed, 1));
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(zero_pairs);

    std::vector<Triple> kept;
    for (const Triple& e : base.edges()) {
        bool killed = false;
        for (const auto& [u, v] : pairs) {
            if ((e[0] == u || e[1] == u || e[2] == u) && (e[0] == v || e[1] == v || e[2] == v)) {
                killed = true;
                break;
            }
        }
        if (!killed) kept.push_back(e);
    }
    return ThreeGraph(n, kept);
}

}  // namespace tightpath
