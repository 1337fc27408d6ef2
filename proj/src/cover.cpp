#include "tightpath/cover.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "pair_dp.hpp"
#include "tightpath/generators.hpp"
#include "tightpath/util.hpp"

namespace tightpath {

CoverValidation validate_cover(const ThreeGraph& g, const PathCover& cover, bool allow_short) {
    CoverValidation out;
    const int n = g.vertex_count();
    std::vector<int> covered(n, 0);
    for (std::size_t i = 0; i < cover.paths.size(); ++i) {
        const TightPath& p = cover.paths[i];
        std::string tag = "path " + std::to_string(i);
        if (p.vertices.empty()) {
            out.violations.push_back(tag + ": empty");
            continue;
        }
        if (!allow_short && p.size() < 3)
            out.violations.push_back(tag + ": shorter than 3 vertices (allow_short = false)");
        bool in_range = true;
        std::set<int> distinct;
        for (int v : p.vertices) {
            if (v < 0 || v >= n) {
                out.violations.push_back(tag + ": vertex out of range");
                in_range = false;
                break;
            }
            if (!distinct.insert(v).second) {
                out.violations.push_back(tag + ": repeated vertex");
                in_range = false;
                break;
            }
        }
        if (!in_range) continue;
        for (int j = 2; j < p.size(); ++j)
            if (!g.has_edge(p.vertices[j - 2], p.vertices[j - 1], p.vertices[j])) {
                out.violations.push_back(tag + ": window " + std::to_string(j - 2) + " is not an edge");
                break;
            }
        for (int v : p.vertices) ++covered[v];
    }
    for (int v = 0; v < n; ++v) {
        if (covered[v] == 0) {
            out.violations.push_back("disjointness/coverage: vertex " + std::to_string(v) + " uncovered");
        } else if (covered[v] > 1) {
            out.violations.push_back("disjointness: vertex " + std::to_string(v) + " covered " +
                                     std::to_string(covered[v]) + " times");
        }
    }
    out.ok = out.violations.empty();
    return out;
}

namespace {

struct SpannableTable {
    detail::PairMaskDp dp;
    std::vector<char> spannable;  // indexed by mask; honors allow_short
    int n;

    SpannableTable(const ThreeGraph& g, bool allow_short, const CoverOptions& opts)
        : dp(g.vertex_count(), opts.memory_cap_bytes), n(g.vertex_count()) {
        auto adj = detail::adjacency_masks(g);
        detail::run_spanning_dp(g, dp, adj);
        const uint32_t full = (1u << n) - 1;
        spannable.assign(std::size_t(full) + 1, 0);
        for (uint32_t mask = 1; mask <= full; ++mask) {
            int pc = std::popcount(mask);
            if (pc <= 2) {
                spannable[mask] = allow_short ? 1 : 0;
                continue;
            }
            bool any = false;
            for (int u = 0; u < n && !any; ++u) {
                if (!(mask & (1u << u))) continue;
                for (int v = 0; v < n; ++v) {
                    if (v == u || !(mask & (1u << v))) continue;
                    if (dp.get(mask, u, v)) {
                        any = true;
                        break;
                    }
                }
            }
            spannable[mask] = any ? 1 : 0;
        }
    }

    /// Reconstructs one tight path spanning `mask` by walking the DP backwards.
    TightPath reconstruct(const ThreeGraph& g, uint32_t mask) const {
        int pc = std::popcount(mask);
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) members.push_back(v);
        if (pc == 1) return {{members[0]}};
        if (pc == 2) return {{members[0], members[1]}};

        int u = -1, v = -1;
        for (int a = 0; a < n && u < 0; ++a) {
            if (!(mask & (1u << a))) continue;
            for (int b = 0; b < n; ++b) {
                if (b == a || !(mask & (1u << b))) continue;
                if (dp.get(mask, a, b)) {
                    u = a;
                    v = b;
                    break;
                }
            }
        }
        std::vector<int> rev;
        uint32_t m = mask;
        while (std::popcount(m) > 2) {
            rev.push_back(v);
            uint32_t prev = m & ~(1u << v);
            bool stepped = false;
            for (int t = 0; t < n; ++t) {
                if (t == u || !(prev & (1u << t))) continue;
                if (g.has_edge(t, u, v) && dp.get(prev, t, u)) {
                    m = prev;
                    v = u;
                    u = t;
                    stepped = true;
                    break;
                }
            }
            if (!stepped) throw std::logic_error("pair DP reconstruction lost its trail");
        }
        rev.push_back(v);
        rev.push_back(u);
        return {{rev.rbegin(), rev.rend()}};
    }
};

}  // namespace

std::vector<uint32_t> path_realizable_masks(const ThreeGraph& g, bool allow_short,
                                            const CoverOptions& opts) {
    const int n = g.vertex_count();
    if (n > opts.dp_cutoff)
        throw budget_exceeded_error("path_realizable_masks: n exceeds the DP cutoff");
    SpannableTable table(g, allow_short, opts);
    std::vector<uint32_t> out;
    for (uint32_t mask = 1; mask < table.spannable.size(); ++mask)
        if (table.spannable[mask]) out.push_back(mask);
    return out;
}

CoverResult exact_min_cover(const ThreeGraph& g, const CoverOptions& opts) {
    const int n = g.vertex_count();
    if (n > opts.dp_cutoff)
        throw budget_exceeded_error("exact_min_cover: n exceeds the DP cutoff of " +
                                    std::to_string(opts.dp_cutoff));
    CoverResult res;
    if (n == 0) {
        res.status = CoverStatus::optimal;
        res.optimum = 0;
        res.proved_optimal = true;
        return res;
    }

    SpannableTable table(g, opts.allow_short, opts);
    const uint32_t full = (1u << n) - 1;
    const int inf = n + 1;
    std::vector<int> best(std::size_t(full) + 1, inf);
    best[0] = 0;
    long long states = 0;

    for (uint32_t mask = 1; mask <= full; ++mask) {
        int low = std::countr_zero(mask);
        uint32_t lowbit = 1u << low;
        uint32_t rest = mask ^ lowbit;
        // the path covering the lowest vertex is canonical, killing permutations
        for (uint32_t s = rest;; s = (s - 1) & rest) {
            uint32_t sub = s | lowbit;
            ++states;
            if (table.spannable[sub] && best[mask ^ sub] + 1 < best[mask])
                best[mask] = best[mask ^ sub] + 1;
            if (s == 0) break;
        }
        if (mask == full) break;
    }

    res.states_explored = states;
    res.optimum = best[full];
    if (best[full] >= inf) {
        res.status = CoverStatus::infeasible;
        res.optimum = -1;
        res.proved_optimal = true;
        return res;
    }

    // witness: rewalk the DP choices
    uint32_t mask = full;
    while (mask) {
        int low = std::countr_zero(mask);
        uint32_t lowbit = 1u << low;
        uint32_t rest = mask ^ lowbit;
        bool chosen = false;
        for (uint32_t s = rest;; s = (s - 1) & rest) {
            uint32_t sub = s | lowbit;
            if (table.spannable[sub] && best[mask ^ sub] + 1 == best[mask]) {
                res.witness.paths.push_back(table.reconstruct(g, sub));
                mask ^= sub;
                chosen = true;
                break;
            }
            if (s == 0) break;
        }
        if (!chosen) throw std::logic_error("cover DP reconstruction lost its trail");
    }

    res.proved_optimal = true;
    res.status = res.optimum > opts.k_cap ? CoverStatus::cap_exceeded : CoverStatus::optimal;
    return res;
}

// ---------------------------------------------------------------------------
// independent brute-force oracle
// ---------------------------------------------------------------------------

namespace {

struct BruteForce {
    const ThreeGraph& g;
    bool allow_short;
    int n;
    int best;
    std::vector<std::vector<int>> best_paths;
    std::vector<std::vector<int>> current;
    long long nodes = 0;

    BruteForce(const ThreeGraph& g_, bool allow_short_)
        : g(g_), allow_short(allow_short_), n(g_.vertex_count()), best(n + 1) {}

    void cover(uint32_t uncovered, int count) {
        ++nodes;
        if (uncovered == 0) {
            if (count < best) {
                best = count;
                best_paths = current;
            }
            return;
        }
        if (count + 1 >= best) return;
        int low = std::countr_zero(uncovered);
        std::vector<int> seq;
        for (int s = 0; s < n; ++s) {
            if (!(uncovered & (1u << s))) continue;
            seq.assign(1, s);
            extend(uncovered, count, low, seq);
        }
    }

    // Emits tight sequences depth-first, longest continuations first, and
    // recurses into `cover` for each sequence that contains `low` exactly once
    // per unordered path (front < back for length >= 2).
    void extend(uint32_t uncovered, int count, int low, std::vector<int>& seq) {
        if (count + 1 >= best) return;
        std::size_t len = seq.size();
        for (int w = 0; w < n; ++w) {
            if (!(uncovered & (1u << w))) continue;
            if (std::find(seq.begin(), seq.end(), w) != seq.end()) continue;
            if (len >= 2 && !g.has_edge(seq[len - 2], seq[len - 1], w)) continue;
            if (len == 1 && !allow_short && g.codegree(seq[0], w) == 0)
                continue;  // this pair can never reach the required length 3
            seq.push_back(w);
            extend(uncovered, count, low, seq);
            seq.pop_back();
        }
        bool contains_low = std::find(seq.begin(), seq.end(), low) != seq.end();
        bool canonical = seq.size() == 1 || seq.front() < seq.back();
        bool long_enough = allow_short || seq.size() >= 3;
        if (contains_low && canonical && long_enough) {
            uint32_t used = 0;
            for (int v : seq) used |= 1u << v;
            current.push_back(seq);
            cover(uncovered & ~used, count + 1);
            current.pop_back();
        }
    }
};

}  // namespace

CoverResult brute_force_min_cover(const ThreeGraph& g, bool allow_short) {
    const int n = g.vertex_count();
    if (n > 9) throw budget_exceeded_error("brute_force_min_cover is restricted to n <= 9");
    CoverResult res;
    if (n == 0) {
        res.status = CoverStatus::optimal;
        res.optimum = 0;
        res.proved_optimal = true;
        return res;
    }
    BruteForce bf(g, allow_short);
    bf.cover((1u << n) - 1, 0);
    res.states_explored = bf.nodes;
    res.proved_optimal = true;
    if (bf.best > n) {
        res.status = CoverStatus::infeasible;
        res.optimum = -1;
        return res;
    }
    res.status = CoverStatus::optimal;
    res.optimum = bf.best;
    for (auto& seq : bf.best_paths) res.witness.paths.push_back({seq});
    return res;
}

std::optional<int> min_deficiency(const ThreeGraph& g, int t_max, const HamiltonOptions& opts) {
    if (t_max < 0) throw std::invalid_argument("min_deficiency: t_max must be non-negative");
    if (g.vertex_count() + t_max > opts.dp_cutoff)
        throw budget_exceeded_error("min_deficiency: n + t_max exceeds the DP cutoff");
    for (int t = 0; t <= t_max; ++t) {
        if (has_hamilton_tight_cycle(join_omni(g, t), opts)) return t;
    }
    return std::nullopt;
}

}  // namespace tightpath
