#ifndef TIGHTPATH_SRC_PAIR_DP_HPP
#define TIGHTPATH_SRC_PAIR_DP_HPP

// Internal: shared DP substrate over (visited mask, last ordered pair)
// states, used by the Hamilton decisions and the cover solver.

#include <bit>
#include <cstdint>
#include <vector>

#include "tightpath/three_graph.hpp"
#include "tightpath/util.hpp"

namespace tightpath::detail {

struct PairMaskDp {
    int n = 0;
    std::size_t words_per_mask = 0;
    std::vector<uint64_t> bits;

    PairMaskDp(int n_, std::size_t memory_cap_bytes) : n(n_) {
        words_per_mask = (std::size_t(n) * n + 63) / 64;
        std::size_t total_words = (std::size_t(1) << n) * words_per_mask;
        if (total_words * 8 > memory_cap_bytes)
            throw budget_exceeded_error("pair DP would exceed the memory cap");
        bits.assign(total_words, 0);
    }

    void clear() { std::fill(bits.begin(), bits.end(), 0); }
    bool get(uint32_t mask, int u, int v) const {
        std::size_t pair = std::size_t(u) * n + v;
        return (bits[std::size_t(mask) * words_per_mask + pair / 64] >> (pair % 64)) & 1;
    }
    void set(uint32_t mask, int u, int v) {
        std::size_t pair = std::size_t(u) * n + v;
        bits[std::size_t(mask) * words_per_mask + pair / 64] |= uint64_t(1) << (pair % 64);
    }
};

/// adj[u][v] = bitmask of w with {u,v,w} an edge; requires n <= 32.
inline std::vector<std::vector<uint32_t>> adjacency_masks(const ThreeGraph& g) {
    int n = g.vertex_count();
    std::vector<std::vector<uint32_t>> adj(n, std::vector<uint32_t>(n, 0));
    for (const Triple& e : g.edges()) {
        const auto [a, b, c] = e;
        adj[a][b] |= 1u << c; adj[b][a] |= 1u << c;
        adj[a][c] |= 1u << b; adj[c][a] |= 1u << b;
        adj[b][c] |= 1u << a; adj[c][b] |= 1u << a;
    }
    return adj;
}

/// Forward pair DP from all ordered-pair seeds: afterwards dp.get(mask,u,v)
/// says a tight path spans `mask` ending with u,v. Masks of popcount < 2 are
/// not represented.
inline void run_spanning_dp(const ThreeGraph& g, PairMaskDp& dp,
                            const std::vector<std::vector<uint32_t>>& adj) {
    const int n = g.vertex_count();
    const uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) dp.set((1u << u) | (1u << v), u, v);
    for (uint32_t mask = 0; mask <= full; ++mask) {
        for (int u = 0; u < n; ++u) {
            if (!(mask & (1u << u))) continue;
            for (int v = 0; v < n; ++v) {
                if (v == u || !(mask & (1u << v))) continue;
                if (!dp.get(mask, u, v)) continue;
                uint32_t ext = adj[u][v] & ~mask;
                while (ext) {
                    int w = std::countr_zero(ext);
                    ext &= ext - 1;
                    dp.set(mask | (1u << w), v, w);
                }
            }
        }
        if (mask == full) break;
    }
}

}  // namespace tightpath::detail

#endif
