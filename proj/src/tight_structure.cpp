#include "tightpath/tight_structure.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "tightpath/util.hpp"

#include "pair_dp.hpp"

namespace tightpath {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

long long PairDigraph::arc_count() const {
    // each edge {a,b,c} contributes the six arcs over its orderings
    return 6LL * g_->edge_count();
}

TightComponents tight_components(const ThreeGraph& g) {
    const int m = g.edge_count();
    Dsu dsu(m);
    const int n = g.vertex_count();
    // all edges through one pair form a clique of the |e ∩ f| = 2 relation
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const VertexSet& nb = g.pair_neighbors(u, v);
            int first = -1;
            for (std::size_t w = nb.find_first(); w != VertexSet::npos; w = nb.find_next(w)) {
                int ei = g.edge_index(u, v, static_cast<int>(w));
                if (first < 0)
                    first = ei;
                else
                    dsu.unite(first, ei);
            }
        }
    }
    TightComponents out;
    out.edge_component.assign(m, -1);
    std::vector<int> label(m, -1);
    for (int i = 0; i < m; ++i) {
        int root = dsu.find(i);
        if (label[root] < 0) label[root] = out.count++;
        out.edge_component[i] = label[root];
    }
    return out;
}

int TightComponents::component_of_pair(const ThreeGraph& g, int u, int v) const {
    const VertexSet& nb = g.pair_neighbors(u, v);
    std::size_t w = nb.find_first();
    if (w == VertexSet::npos) return -1;
    return edge_component[g.edge_index(u, v, static_cast<int>(w))];
}

std::vector<std::vector<int>> TightComponents::vertex_support(const ThreeGraph& g) const {
    std::vector<std::set<int>> acc(count);
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        for (int v : g.edges()[i]) acc[edge_component[i]].insert(v);
    std::vector<std::vector<int>> out(count);
    for (int c = 0; c < count; ++c) out[c].assign(acc[c].begin(), acc[c].end());
    return out;
}

namespace {

void check_distinct(std::span<const int> seq) {
    std::set<int> seen(seq.begin(), seq.end());
    if (seen.size() != seq.size())
        throw std::invalid_argument("vertex sequence has a repeated vertex");
}

}  // namespace

bool is_tight_path(const ThreeGraph& g, std::span<const int> seq) {
    check_distinct(seq);
    for (int v : seq)
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    for (std::size_t i = 2; i < seq.size(); ++i)
        if (!g.has_edge(seq[i - 2], seq[i - 1], seq[i])) return false;
    return true;
}

bool is_tight_cycle(const ThreeGraph& g, std::span<const int> seq) {
    check_distinct(seq);
    for (int v : seq)
        if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    if (seq.size() < 5) return false;  // cyclic windows would repeat vertices
    std::size_t p = seq.size();
    for (std::size_t i = 0; i < p; ++i)
        if (!g.has_edge(seq[i], seq[(i + 1) % p], seq[(i + 2) % p])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// find_tight_path_between
// ---------------------------------------------------------------------------

namespace {

struct BetweenSearch {
    const ThreeGraph& g;
    int e0, e1;
    VertexSet allowed;   // candidate interior vertices
    VertexSet visited;   // current path vertices (start pair + interiors)
    std::vector<int> stack;
    long long nodes = 0;
    long long node_budget = -1;  // randomized mode only
    std::mt19937_64* rng = nullptr;

    bool closes(int u, int v) const {
        return g.has_edge(u, v, e0) && g.has_edge(v, e0, e1);
    }

    // Depth-limited DFS: success is tested exactly at `left == 0` so that the
    // iterative-deepening driver never re-reports shorter solutions.
    bool dfs(int u, int v, int left) {
        ++nodes;
        if (node_budget >= 0 && nodes > node_budget) return false;
        if (left == 0) return closes(u, v);
        VertexSet cand = g.pair_neighbors(u, v);
        cand &= allowed;
        cand -= visited;
        std::vector<int> order;
        for (std::size_t w = cand.find_first(); w != VertexSet::npos; w = cand.find_next(w))
            order.push_back(static_cast<int>(w));
        if (rng) std::shuffle(order.begin(), order.end(), *rng);
        for (int w : order) {
            visited.set(w);
            stack.push_back(w);
            if (dfs(v, w, left - 1)) return true;
            stack.pop_back();
            visited.reset(w);
        }
        return false;
    }
};

}  // namespace

PathSearchResult find_tight_path_between(const ThreeGraph& g, std::pair<int, int> start,
                                         std::pair<int, int> end, int max_interior,
                                         const VertexSet& forbidden, const PathSearchOptions& opts) {
    const int n = g.vertex_count();
    std::array<int, 4> ends{start.first, start.second, end.first, end.second};
    std::set<int> distinct(ends.begin(), ends.end());
    if (distinct.size() != 4) throw std::invalid_argument("start and end pairs overlap");
    for (int v : ends) {
        if (v < 0 || v >= n) throw std::invalid_argument("pair vertex out of range");
        if (forbidden.size() == static_cast<std::size_t>(n) && forbidden.test(v))
            throw std::invalid_argument("start/end pair vertex is forbidden");
    }
    if (max_interior < 0) throw std::invalid_argument("max_interior must be non-negative");

    PathSearchResult res{SearchVerdict::proved_absent, std::nullopt, 0};
    // A connecting path needs an edge through each pair, and all its window
    // edges form a pseudo-path, so both pairs must sit in one tight component.
    if (g.codegree(start.first, start.second) == 0 || g.codegree(end.first, end.second) == 0)
        return res;
    TightComponents comps = tight_components(g);
    if (comps.component_of_pair(g, start.first, start.second) !=
        comps.component_of_pair(g, end.first, end.second))
        return res;

    BetweenSearch search{g, end.first, end.second, VertexSet(n), VertexSet(n), {}, 0, -1, nullptr};
    search.allowed.set();
    if (forbidden.size() == static_cast<std::size_t>(n)) search.allowed -= forbidden;
    for (int v : ends) search.allowed.reset(v);
    search.visited.set(start.first);
    search.visited.set(start.second);

    const int interior_pool = static_cast<int>(search.allowed.count());
    const int depth_cap = std::min(max_interior, interior_pool);
    const bool exhaustive =
        n <= opts.exhaustive_cutoff || interior_pool + 4 <= opts.exhaustive_cutoff;

    auto build_path = [&](int used_depth) {
        TightPath p;
        p.vertices = {start.first, start.second};
        p.vertices.insert(p.vertices.end(), search.stack.begin(), search.stack.end());
        p.vertices.push_back(end.first);
        p.vertices.push_back(end.second);
        (void)used_depth;
        return p;
    };

    if (exhaustive) {
        for (int depth = 0; depth <= depth_cap; ++depth) {
            if (search.dfs(start.first, start.second, depth)) {
                res.verdict = SearchVerdict::found;
                res.path = build_path(depth);
                res.nodes_explored = search.nodes;
                return res;
            }
        }
        res.nodes_explored = search.nodes;
        return res;  // proved_absent
    }

    std::mt19937_64 rng(mix_seed(opts.seed, 0x7061746873ULL));
    search.rng = &rng;
    for (int r = 0; r < opts.restarts; ++r) {
        for (int depth = 0; depth <= depth_cap; ++depth) {
            search.node_budget = search.nodes + 200LL * (depth + 1);
            if (search.dfs(start.first, start.second, depth)) {
                res.verdict = SearchVerdict::found;
                res.path = build_path(depth);
                res.nodes_explored = search.nodes;
                return res;
            }
        }
    }
    res.verdict = SearchVerdict::budget_exhausted;
    res.nodes_explored = search.nodes;
    return res;
}

// ---------------------------------------------------------------------------
// Hamilton decisions: DP over (visited mask, last ordered pair)
// ---------------------------------------------------------------------------

namespace {

void check_dp_budget(const ThreeGraph& g, const HamiltonOptions& opts, const char* who) {
    if (g.vertex_count() > opts.dp_cutoff)
        throw budget_exceeded_error(std::string(who) + ": n exceeds the DP cutoff of " +
                                    std::to_string(opts.dp_cutoff));
}

}  // namespace

bool has_hamilton_tight_path(const ThreeGraph& g, const HamiltonOptions& opts) {
    const int n = g.vertex_count();
    if (n <= 2) return true;  // degenerate spanning paths
    check_dp_budget(g, opts, "has_hamilton_tight_path");

    auto adj = detail::adjacency_masks(g);
    detail::PairMaskDp dp(n, opts.memory_cap_bytes);
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) dp.set((1u << u) | (1u << v), u, v);

    for (uint32_t mask = 0; mask <= full; ++mask) {
        for (int u = 0; u < n; ++u) {
            if (!(mask & (1u << u))) continue;
            for (int v = 0; v < n; ++v) {
                if (v == u || !(mask & (1u << v))) continue;
                if (!dp.get(mask, u, v)) continue;
                if (mask == full) return true;
                uint32_t ext = adj[u][v] & ~mask;
                while (ext) {
                    int w = std::countr_zero(ext);
                    ext &= ext - 1;
                    dp.set(mask | (1u << w), v, w);
                }
            }
        }
    }
    return false;
}

bool has_hamilton_tight_cycle(const ThreeGraph& g, const HamiltonOptions& opts) {
    const int n = g.vertex_count();
    if (n < 5) return false;  // shorter cyclic windows repeat vertices
    check_dp_budget(g, opts, "has_hamilton_tight_cycle");

    auto adj = detail::adjacency_masks(g);
    detail::PairMaskDp dp(n, opts.memory_cap_bytes);
    const uint32_t full = (1u << n) - 1;

    // Fix vertex 0 and enumerate its cycle successor a; both wrap windows
    // {u,v,0} and {v,0,a} close the cycle at the full mask.
    for (int a = 1; a < n; ++a) {
        if (g.codegree(0, a) == 0) continue;
        dp.clear();
        dp.set((1u) | (1u << a), 0, a);
        for (uint32_t mask = 0; mask <= full; ++mask) {
            if (!(mask & 1u)) continue;
            for (int u = 0; u < n; ++u) {
                if (!(mask & (1u << u))) continue;
                for (int v = 0; v < n; ++v) {
                    if (v == u || !(mask & (1u << v))) continue;
                    if (!dp.get(mask, u, v)) continue;
                    if (mask == full) {
                        if (g.has_edge(u, v, 0) && g.has_edge(v, 0, a)) return true;
                        continue;
                    }
                    uint32_t ext = adj[u][v] & ~mask;
                    while (ext) {
                        int w = std::countr_zero(ext);
                        ext &= ext - 1;
                        dp.set(mask | (1u << w), v, w);
                    }
                }
            }
        }
    }
    return false;
}

std::optional<std::array<int, 4>> find_k4_minus_containing(const ThreeGraph& g, const Triple& edge) {
    Triple e = sorted_triple(edge[0], edge[1], edge[2]);
    if (!g.has_edge(e[0], e[1], e[2]))
        throw std::invalid_argument("find_k4_minus_containing: not an edge of the graph");
    VertexSet cand = g.pair_neighbors(e[0], e[1]);
    cand &= g.pair_neighbors(e[0], e[2]);
    VertexSet t = g.pair_neighbors(e[0], e[1]);
    t &= g.pair_neighbors(e[1], e[2]);
    cand |= t;
    t = g.pair_neighbors(e[0], e[2]);
    t &= g.pair_neighbors(e[1], e[2]);
    cand |= t;
    std::size_t x = cand.find_first();
    if (x == VertexSet::npos) return std::nullopt;
    std::array<int, 4> out{e[0], e[1], e[2], static_cast<int>(x)};
    std::sort(out.begin(), out.end());
    return out;
}

long long count_complete_3partite_copies(const ThreeGraph& g, int a, int b, int c) {
    if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("part sizes must be positive");
    if (a + b + c > 9) throw std::invalid_argument("oversized pattern: a+b+c must be at most 9");
    std::array<int, 3> sizes{a, b, c};
    std::sort(sizes.begin(), sizes.end());
    long long sym = 1;  // automorphisms of the size multiset
    if (sizes[0] == sizes[1] && sizes[1] == sizes[2]) sym = 6;
    else if (sizes[0] == sizes[1] || sizes[1] == sizes[2]) sym = 2;

    const int n = g.vertex_count();
    long long ordered = 0;

    std::vector<int> setA, setB;
    // enumerate A and B as ordered combinations; C is counted via the common
    // cross-neighborhood, which captures all 3-partite cross triples
    std::function<void()> countC = [&]() {
        VertexSet cand(n);
        cand.set();
        for (int x : setA)
            for (int y : setB) {
                cand &= g.pair_neighbors(x, y);
                if (cand.none()) return;
            }
        for (int x : setA) cand.reset(x);
        for (int y : setB) cand.reset(y);
        ordered += static_cast<long long>(binomial(static_cast<int>(cand.count()), sizes[2]));
    };
    std::function<void(int)> chooseB = [&](int from) {
        if (static_cast<int>(setB.size()) == sizes[1]) {
            countC();
            return;
        }
        for (int v = from; v < n; ++v) {
            if (std::find(setA.begin(), setA.end(), v) != setA.end()) continue;
            setB.push_back(v);
            chooseB(v + 1);
            setB.pop_back();
        }
    };
    std::function<void(int)> chooseA = [&](int from) {
        if (static_cast<int>(setA.size()) == sizes[0]) {
            chooseB(0);
            return;
        }
        for (int v = from; v < n; ++v) {
            setA.push_back(v);
            chooseA(v + 1);
            setA.pop_back();
        }
    };
    chooseA(0);

    // ordered counts each unordered copy once per ordered placement of the
    // equal-size parts among (A, B, C-combination); exact division by design
    return ordered / sym;
}

// ---------------------------------------------------------------------------
// greedy longest path
// ---------------------------------------------------------------------------

namespace {

int pick_bit(const VertexSet& set, std::mt19937_64& rng) {
    std::size_t k = set.count();
    if (k == 0) return -1;
    std::uniform_int_distribution<std::size_t> d(0, k - 1);
    std::size_t target = d(rng);
    std::size_t v = set.find_first();
    for (std::size_t i = 0; i < target; ++i) v = set.find_next(v);
    return static_cast<int>(v);
}

}  // namespace

TightPath longest_tight_path_greedy(const ThreeGraph& g, uint64_t seed, const VertexSet& forbidden,
                                    const GreedyPathOptions& opts) {
    const int n = g.vertex_count();
    VertexSet allowed(n);
    allowed.set();
    if (forbidden.size() == static_cast<std::size_t>(n)) allowed -= forbidden;
    if (allowed.none())
        throw std::invalid_argument("longest_tight_path_greedy: every vertex is forbidden");

    std::vector<int> seed_edges;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Triple& e = g.edges()[i];
        if (allowed.test(e[0]) && allowed.test(e[1]) && allowed.test(e[2]))
            seed_edges.push_back(static_cast<int>(i));
    }

    std::mt19937_64 seed_rng(mix_seed(seed, 0x677265656479ULL));
    if (seed_edges.empty()) {
        // no usable edge: a single vertex is the longest tight path available
        return {{pick_bit(allowed, seed_rng)}};
    }

    const long long budget_per_restart =
        opts.backtrack_budget > 0 ? opts.backtrack_budget : 40LL * n;
    std::deque<int> best;

    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        std::mt19937_64 rng(mix_seed(seed, restart + 1));
        const Triple& e = g.edges()[seed_edges[rng() % seed_edges.size()]];
        std::array<int, 3> ord{e[0], e[1], e[2]};
        std::shuffle(ord.begin(), ord.end(), rng);
        std::deque<int> path(ord.begin(), ord.end());
        VertexSet used(n);
        for (int v : ord) used.set(v);

        long long budget = budget_per_restart;
        int last_popped = -1;
        while (true) {
            // extend at the back, then at the front
            bool extended = false;
            {
                VertexSet cand = g.pair_neighbors(path[path.size() - 2], path.back());
                cand &= allowed;
                cand -= used;
                if (last_popped >= 0) cand.reset(last_popped);
                int w = pick_bit(cand, rng);
                if (w >= 0) {
                    path.push_back(w);
                    used.set(w);
                    extended = true;
                    last_popped = -1;
                }
            }
            if (!extended) {
                VertexSet cand = g.pair_neighbors(path[1], path[0]);
                cand &= allowed;
                cand -= used;
                int w = pick_bit(cand, rng);
                if (w >= 0) {
                    path.push_front(w);
                    used.set(w);
                    extended = true;
                    last_popped = -1;
                }
            }
            if (extended) continue;

            if (path.size() > best.size()) best = path;
            // stalled at both ends: back off one vertex and re-choose
            if (budget-- <= 0 || path.size() <= 3) break;
            if (rng() & 1) {
                last_popped = path.back();
                path.pop_back();
            } else {
                last_popped = path.front();
                path.pop_front();
            }
            used.reset(last_popped);
        }
        if (path.size() > best.size()) best = path;
        if (static_cast<int>(best.size()) == static_cast<int>(allowed.count())) break;
    }

    // re-extend deterministically so the result is maximal under extension
    TightPath out{{best.begin(), best.end()}};
    VertexSet used(n);
    for (int v : out.vertices) used.set(v);
    bool grew = true;
    while (grew) {
        grew = false;
        if (out.size() >= 2) {
            VertexSet cand = g.pair_neighbors(out.vertices[out.size() - 2], out.vertices.back());
            cand &= allowed;
            cand -= used;
            std::size_t w = cand.find_first();
            if (w != VertexSet::npos) {
                out.vertices.push_back(static_cast<int>(w));
                used.set(w);
                grew = true;
                continue;
            }
            cand = g.pair_neighbors(out.vertices[1], out.vertices[0]);
            cand &= allowed;
            cand -= used;
            w = cand.find_first();
            if (w != VertexSet::npos) {
                out.vertices.insert(out.vertices.begin(), static_cast<int>(w));
                used.set(w);
                grew = true;
            }
        }
    }
    return out;
}

}  // namespace tightpath
