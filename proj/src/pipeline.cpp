#include "tightpath/pipeline.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "tightpath/generators.hpp"
#include "tightpath/tight_structure.hpp"
#include "tightpath/util.hpp"

namespace tightpath {

ReservoirResult reserve_sample(const ThreeGraph& g, double gamma, uint64_t seed,
                               const VertexSet& excluded, const ReserveOptions& opts) {
    if (!(gamma > 0.0) || !(gamma < 0.5))
        throw std::invalid_argument("reserve_sample: gamma must lie in (0, 1/2)");
    const int n = g.vertex_count();
    if (n < 3) throw std::invalid_argument("reserve_sample: graph too small");

    long long excluded_count = 0;
    if (excluded.size() == static_cast<std::size_t>(n)) excluded_count = excluded.count();
    const double target =
        std::max(0.0, (g.min_codegree() - double(excluded_count)) * gamma * (1.0 - opts.slack));

    auto measure = [&](const VertexSet& a) {
        int guarantee = n;
        VertexSet tmp(n);
        for (int u = 0; u < n && guarantee > 0; ++u)
            for (int v = u + 1; v < n; ++v) {
                tmp = g.pair_neighbors(u, v);
                tmp &= a;
                guarantee = std::min(guarantee, static_cast<int>(tmp.count()));
                if (guarantee == 0) break;
            }
        return guarantee;
    };

    ReservoirResult best;
    best.target = target;
    best.guarantee = -1;
    for (int attempt = 0; attempt < std::max(1, opts.retries); ++attempt) {
        std::mt19937_64 rng(mix_seed(seed, attempt));
        std::bernoulli_distribution keep(gamma);
        VertexSet a(n);
        for (int v = 0; v < n; ++v) {
            bool in = keep(rng);
            if (excluded.size() == static_cast<std::size_t>(n) && excluded.test(v)) continue;
            if (in) a.set(v);
        }
        int guarantee = measure(a);
        if (guarantee > best.guarantee) {
            best.guarantee = guarantee;
            best.vertices = a;
        }
        if (guarantee >= target) {
            best.status = ReservoirResult::Status::met_target;
            best.guarantee = guarantee;
            best.vertices = a;
            return best;
        }
    }
    best.status = best.guarantee >= opts.min_floor ? ReservoirResult::Status::best_effort
                                                   : ReservoirResult::Status::failed;
    return best;
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

namespace {

struct PipelineState {
    const ThreeGraph& g;
    const PipelineConfig& cfg;
    int n;
    PipelineReport report;
    TightComponents comps;

    VertexSet covered;    // vertices inside some segment/chain
    VertexSet planted;    // banked absorber targets; stay uncovered until stage 6
    VertexSet reservoir;  // unused reservoir vertices
    VertexSet loose;      // uncovered, unreserved, unplanted vertices
    std::vector<TightPath> segments;
    std::vector<Absorber> bank;
    VertexPartition partition;
    std::vector<IndexVector> absorbable;

    explicit PipelineState(const ThreeGraph& g_, const PipelineConfig& cfg_)
        : g(g_), cfg(cfg_), n(g_.vertex_count()), covered(n), planted(n), reservoir(n), loose(n) {
        loose.set();
    }

    int uncovered_count() const { return n - static_cast<int>(covered.count()); }

    void stage(const std::string& name, bool ok, const std::string& detail) {
        report.stages.push_back({name, ok, detail, uncovered_count()});
    }

    void fail(const std::string& stage_name, const std::string& reason) {
        report.stages.push_back({stage_name, false, reason, uncovered_count()});
        report.failure_stage = stage_name;
        report.failure_reason = reason;
        report.component_obstruction = comps.count > 2;
        if (report.component_obstruction)
            report.failure_reason +=
                " [graph has " + std::to_string(comps.count) + " tight components]";
    }

    void absorb_segment(const TightPath& p) {
        for (int v : p.vertices) {
            covered.set(v);
            loose.reset(v);
            reservoir.reset(v);
        }
        segments.push_back(p);
    }

    int segment_component(const TightPath& p) const {
        if (p.size() < 3) return -1;
        return comps.edge_component[g.edge_index(p.vertices[0], p.vertices[1], p.vertices[2])];
    }
};

/// Connector interiors may come from the reservoir or from loose vertices.
VertexSet connect_pool(const PipelineState& st) {
    VertexSet pool = st.reservoir;
    pool |= st.loose;
    return pool;
}

/// Joins `left` + interior + `right` if a connector exists; interiors are
/// consumed from the pool. Orientation of `right` is the caller's business.
std::optional<TightPath> connect_pair(PipelineState& st, const TightPath& left,
                                      const TightPath& right, uint64_t seed) {
    if (left.size() < 2 || right.size() < 2) return std::nullopt;
    VertexSet pool = connect_pool(st);
    VertexSet forbidden(st.n);
    forbidden.set();
    forbidden -= pool;
    std::pair<int, int> start{left.vertices[left.size() - 2], left.vertices[left.size() - 1]};
    std::pair<int, int> end{right.vertices[0], right.vertices[1]};
    forbidden.reset(start.first);
    forbidden.reset(start.second);
    forbidden.reset(end.first);
    forbidden.reset(end.second);
    PathSearchOptions opts;
    opts.seed = seed;
    PathSearchResult res =
        find_tight_path_between(st.g, start, end, st.cfg.connection_interior, forbidden, opts);
    if (res.verdict != SearchVerdict::found) return std::nullopt;
    TightPath joined = left;
    const auto& conn = res.path->vertices;
    for (std::size_t i = 2; i + 2 < conn.size(); ++i) {
        joined.vertices.push_back(conn[i]);
        st.covered.set(conn[i]);
        st.reservoir.reset(conn[i]);
        st.loose.reset(conn[i]);
    }
    joined.vertices.insert(joined.vertices.end(), right.vertices.begin(), right.vertices.end());
    return joined;
}

/// All four orientations of attaching `seg` to `chain`.
bool attach_segment(PipelineState& st, TightPath& chain, const TightPath& seg, uint64_t seed) {
    const TightPath rev = seg.reversed();
    const TightPath chain_rev = chain.reversed();
    struct Attempt {
        const TightPath* left;
        const TightPath* right;
    };
    Attempt attempts[4] = {{&chain, &seg}, {&chain, &rev}, {&seg, &chain}, {&rev, &chain}};
    for (int i = 0; i < 4; ++i) {
        if (auto joined = connect_pair(st, *attempts[i].left, *attempts[i].right,
                                       mix_seed(seed, 100 + i)))
            return chain = std::move(*joined), true;
    }
    (void)chain_rev;
    return false;
}

/// The turn trick: when no orientation connects, grow the segment by one
/// vertex at an end (preferring the fourth vertex of a K4- through the end
/// edge, which is what flips orientations) and retry. Consumed extension
/// vertices are returned to their pools when every retry fails.
bool attach_with_turn(PipelineState& st, TightPath& chain, TightPath seg, uint64_t seed) {
    if (attach_segment(st, chain, seg, seed)) return true;
    if (seg.size() < 3) return false;
    std::vector<std::pair<int, bool>> consumed;  // (vertex, came from reservoir)
    auto take = [&](int x) {
        consumed.emplace_back(x, st.reservoir.test(x));
        st.covered.set(x);
        st.reservoir.reset(x);
        st.loose.reset(x);
    };
    auto revert = [&]() {
        for (auto& [x, from_reservoir] : consumed) {
            st.covered.reset(x);
            (from_reservoir ? st.reservoir : st.loose).set(x);
        }
    };
    for (int round = 0; round < 2; ++round) {
        // candidate head extensions: K4-'s fourth vertex first, then any
        VertexSet pool = connect_pool(st);
        Triple head{seg.vertices[0], seg.vertices[1], seg.vertices[2]};
        std::vector<int> cands;
        if (auto k4 = find_k4_minus_containing(st.g, head)) {
            for (int x : *k4)
                if (pool.test(x)) cands.push_back(x);
        }
        VertexSet pre = st.g.pair_neighbors(seg.vertices[0], seg.vertices[1]);
        pre &= pool;
        for (std::size_t x = pre.find_first(); x != VertexSet::npos; x = pre.find_next(x))
            if (cands.size() < 6) cands.push_back(static_cast<int>(x));
        bool grew = false;
        for (int x : cands) {
            if (!st.g.has_edge(x, seg.vertices[0], seg.vertices[1])) continue;
            TightPath longer;
            longer.vertices.push_back(x);
            longer.vertices.insert(longer.vertices.end(), seg.vertices.begin(), seg.vertices.end());
            take(x);
            if (attach_segment(st, chain, longer, mix_seed(seed, 200 + round))) return true;
            seg = longer;  // keep the growth; it may help the next round
            grew = true;
            break;
        }
        if (!grew) break;
        seg = TightPath{{seg.vertices.rbegin(), seg.vertices.rend()}};  // alternate ends
    }
    revert();
    return false;
}

struct Span {
    std::size_t path;
    std::size_t lo, hi;  // inclusive vertex-index range of a gadget subpath
    bool overlaps(const Span& o) const {
        return path == o.path && lo <= o.hi && o.lo <= hi;
    }
};

/// One vertex's absorption plan: either a direct insertion into a 4-window,
/// or a swap that frees an on-path vertex plus an insertion window for it.
struct VertexPlan {
    std::vector<Span> spans;
    std::vector<TightPath> gadget;
    std::vector<TightPath> replacement;
};

bool spans_clash(const std::vector<Span>& used, const VertexPlan& plan) {
    for (const Span& s : used)
        for (const Span& t : plan.spans)
            if (s.overlaps(t)) return true;
    return false;
}

std::optional<VertexPlan> plan_insertion(const ThreeGraph& g, const PathCover& cover, int v,
                                         const std::vector<Span>& used) {
    for (std::size_t pi = 0; pi < cover.paths.size(); ++pi) {
        const auto& seq = cover.paths[pi].vertices;
        for (std::size_t j = 1; j + 2 < seq.size(); ++j) {
            VertexPlan plan;
            plan.spans.push_back({pi, j - 1, j + 2});
            if (spans_clash(used, plan)) continue;
            if (g.has_edge(seq[j - 1], seq[j], v) && g.has_edge(seq[j], v, seq[j + 1]) &&
                g.has_edge(v, seq[j + 1], seq[j + 2])) {
                plan.gadget.push_back({{seq[j - 1], seq[j], seq[j + 1], seq[j + 2]}});
                plan.replacement.push_back({{seq[j - 1], seq[j], v, seq[j + 1], seq[j + 2]}});
                return plan;
            }
        }
    }
    return std::nullopt;
}

/// Swap v for an interior vertex w, then insert the released w elsewhere.
std::optional<VertexPlan> plan_swap(const ThreeGraph& g, const PathCover& cover, int v,
                                    const std::vector<Span>& used) {
    for (std::size_t pi = 0; pi < cover.paths.size(); ++pi) {
        const auto& seq = cover.paths[pi].vertices;
        for (std::size_t i = 2; i + 2 < seq.size(); ++i) {
            VertexPlan plan;
            plan.spans.push_back({pi, i - 2, i + 2});
            if (spans_clash(used, plan)) continue;
            if (!(g.has_edge(seq[i - 2], seq[i - 1], v) && g.has_edge(seq[i - 1], v, seq[i + 1]) &&
                  g.has_edge(v, seq[i + 1], seq[i + 2])))
                continue;
            int w = seq[i];
            // the released vertex needs its own insertion window
            std::vector<Span> blocked = used;
            blocked.push_back(plan.spans[0]);
            for (std::size_t qi = 0; qi < cover.paths.size(); ++qi) {
                const auto& host = cover.paths[qi].vertices;
                for (std::size_t j = 1; j + 2 < host.size(); ++j) {
                    Span ins{qi, j - 1, j + 2};
                    bool clash = false;
                    for (const Span& s : blocked)
                        if (s.overlaps(ins)) clash = true;
                    if (clash) continue;
                    if (g.has_edge(host[j - 1], host[j], w) && g.has_edge(host[j], w, host[j + 1]) &&
                        g.has_edge(w, host[j + 1], host[j + 2])) {
                        plan.spans.push_back(ins);
                        plan.gadget.push_back(
                            {{seq[i - 2], seq[i - 1], w, seq[i + 1], seq[i + 2]}});
                        plan.replacement.push_back(
                            {{seq[i - 2], seq[i - 1], v, seq[i + 1], seq[i + 2]}});
                        plan.gadget.push_back({{host[j - 1], host[j], host[j + 1], host[j + 2]}});
                        plan.replacement.push_back(
                            {{host[j - 1], host[j], w, host[j + 1], host[j + 2]}});
                        return plan;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

/// Combines per-vertex plans (insertions first, swaps as backup) over all
/// vertex orders into one verified-disjoint triple absorber.
std::optional<Absorber> build_triple_absorber(const ThreeGraph& g, const PathCover& cover,
                                              const std::vector<int>& triple) {
    static const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& order : orders) {
        std::vector<Span> used;
        Absorber a;
        a.target = triple;
        bool ok = true;
        for (int oi = 0; oi < 3 && ok; ++oi) {
            int v = triple[order[oi]];
            std::optional<VertexPlan> plan = plan_insertion(g, cover, v, used);
            if (!plan) plan = plan_swap(g, cover, v, used);
            if (!plan) {
                ok = false;
                break;
            }
            used.insert(used.end(), plan->spans.begin(), plan->spans.end());
            for (auto& p : plan->gadget) a.gadget.push_back(std::move(p));
            for (auto& p : plan->replacement) a.replacement.push_back(std::move(p));
        }
        if (ok) return a;
    }
    return std::nullopt;
}

/// Appends one vertex beyond a chain end; needs a single window edge.
bool append_vertex_at_end(const ThreeGraph& g, PathCover& cover, int v) {
    for (std::size_t pi = 0; pi < cover.paths.size(); ++pi) {
        for (int side = 0; side < 2; ++side) {
            TightPath oriented = side == 0 ? cover.paths[pi] : cover.paths[pi].reversed();
            if (oriented.size() < 2) continue;
            int a = oriented.vertices[oriented.size() - 2];
            int b = oriented.vertices[oriented.size() - 1];
            if (!g.has_edge(a, b, v)) continue;
            oriented.vertices.push_back(v);
            cover.paths[pi] = side == 0 ? oriented : oriented.reversed();
            return true;
        }
    }
    return false;
}

bool append_singles_at_ends(const ThreeGraph& g, PathCover& cover, const std::vector<int>& triple) {
    static const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& order : orders) {
        PathCover scratch = cover;
        bool ok = true;
        for (int oi = 0; oi < 3 && ok; ++oi)
            ok = append_vertex_at_end(g, scratch, triple[order[oi]]);
        if (ok) {
            cover = std::move(scratch);
            return true;
        }
    }
    return false;
}

/// Last resort: append the whole triple beyond a chain end (three new window
/// edges, including the triple itself as an edge).
bool append_triple_at_end(const ThreeGraph& g, PathCover& cover, const std::vector<int>& triple) {
    static const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                     {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (std::size_t pi = 0; pi < cover.paths.size(); ++pi) {
        for (int side = 0; side < 2; ++side) {
            TightPath oriented =
                side == 0 ? cover.paths[pi] : cover.paths[pi].reversed();
            if (oriented.size() < 2) continue;
            int a = oriented.vertices[oriented.size() - 2];
            int b = oriented.vertices[oriented.size() - 1];
            for (const auto& order : orders) {
                int v1 = triple[order[0]], v2 = triple[order[1]], v3 = triple[order[2]];
                if (g.has_edge(a, b, v1) && g.has_edge(b, v1, v2) && g.has_edge(v1, v2, v3)) {
                    oriented.vertices.push_back(v1);
                    oriented.vertices.push_back(v2);
                    oriented.vertices.push_back(v3);
                    cover.paths[pi] = side == 0 ? oriented : oriented.reversed();
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

std::pair<std::optional<PathCover>, PipelineReport> heuristic_two_path_cover(
    const ThreeGraph& g, const PipelineConfig& cfg) {
    PipelineState st(g, cfg);
    PipelineReport& rep = st.report;
    const int n = st.n;
    rep.n = n;
    rep.m = g.edge_count();
    if (n < 5) {
        st.fail("precheck", "pipeline needs at least 5 vertices");
        return {std::nullopt, rep};
    }
    rep.delta2 = g.min_codegree();
    rep.degree_condition_met = rep.delta2 >= (1.0 / 3.0 + cfg.alpha) * n;
    st.comps = tight_components(g);
    rep.tight_component_count = st.comps.count;

    // Stage 1: reachability partition.
    const long long threshold =
        cfg.witness_threshold > 0 ? cfg.witness_threshold : default_witness_threshold(n);
    ReachPartition reach = reachability_partition(g, threshold, 1.0 / 3.0 + cfg.alpha / 2.0);
    st.partition = reach.partition;
    rep.partition_parts = st.partition.part_count();
    st.stage("partition", true,
             std::to_string(rep.partition_parts) + " parts at witness threshold " +
                 std::to_string(threshold));

    // Stage 2: absorber harvest and absorbing chains.
    const long long min_edges =
        cfg.min_index_edges > 0
            ? cfg.min_index_edges
            : std::max<long long>(1, static_cast<long long>(0.01 * double(n) * n * n));
    st.absorbable = absorbable_index_vectors(g, st.partition, min_edges);
    std::mt19937_64 harvest_rng(mix_seed(cfg.seed, 2));
    int banked = 0;
    for (const IndexVector& iv : st.absorbable) {
        for (int k = 0; k < cfg.absorbers_per_index; ++k) {
            // plant a random triple with this index among untouched vertices
            std::vector<std::vector<int>> free_by_part(st.partition.part_count());
            for (std::size_t v = st.loose.find_first(); v != VertexSet::npos;
                 v = st.loose.find_next(v)) {
                int part = st.partition.part_of(static_cast<int>(v));
                if (part >= 0) free_by_part[part].push_back(static_cast<int>(v));
            }
            std::vector<int> target;
            bool plantable = true;
            for (int part = 0; part < st.partition.part_count() && plantable; ++part) {
                auto& pool = free_by_part[part];
                std::shuffle(pool.begin(), pool.end(), harvest_rng);
                int need = part < static_cast<int>(iv.coords.size()) ? iv.coords[part] : 0;
                if (static_cast<int>(pool.size()) < need) plantable = false;
                for (int i = 0; i < need && plantable; ++i) target.push_back(pool[i]);
            }
            if (!plantable || target.size() != 3) continue;
            std::sort(target.begin(), target.end());

            VertexSet forbidden(n);
            forbidden.set();
            forbidden -= st.loose;
            for (int v : target) forbidden.reset(v);
            AbsorberSearchOptions aopts;
            aopts.seed = mix_seed(cfg.seed, 20 + banked);
            aopts.budget = cfg.search_budget;
            AbsorberSearchResult found = find_lattice_absorber(g, st.partition, target, forbidden, aopts);
            if (!found.absorber) {
                aopts.seed = mix_seed(cfg.seed, 40 + banked);
                found = find_simple_absorber(g, target, forbidden, aopts);
            }
            if (!found.absorber) continue;
            for (const TightPath& p : found.absorber->gadget) st.absorb_segment(p);
            for (int v : target) {
                st.planted.set(v);
                st.loose.reset(v);
            }
            st.bank.push_back(std::move(*found.absorber));
            ++banked;
        }
    }
    rep.absorbers_banked = banked;

    // connect the gadget paths into at most two absorbing chains
    if (banked > 0 && st.segments.size() > 2) {
        std::vector<TightPath> chains;
        std::sort(st.segments.begin(), st.segments.end(),
                  [](const TightPath& a, const TightPath& b) { return a.size() > b.size(); });
        for (const TightPath& seg : st.segments) {
            bool placed = false;
            for (TightPath& chain : chains) {
                if (st.segment_component(chain) != st.segment_component(seg)) continue;
                if (attach_segment(st, chain, seg, mix_seed(cfg.seed, 60 + chains.size()))) {
                    placed = true;
                    break;
                }
            }
            if (!placed) chains.push_back(seg);
        }
        st.segments = std::move(chains);
    }
    st.stage("absorbers", true,
             std::to_string(banked) + " banked, " + std::to_string(st.segments.size()) +
                 " absorbing chains");

    // Stage 3: reservoir.
    VertexSet excluded(n);
    excluded.set();
    excluded -= st.loose;
    ReserveOptions ropts;
    ReservoirResult reservoir = reserve_sample(g, cfg.gamma, mix_seed(cfg.seed, 3), excluded, ropts);
    if (reservoir.status == ReservoirResult::Status::failed) {
        st.fail("reservoir", "no sample met the floor guarantee");
        return {std::nullopt, rep};
    }
    st.reservoir = reservoir.vertices;
    st.loose -= st.reservoir;
    rep.reservoir_size = static_cast<int>(st.reservoir.count());
    rep.reservoir_guarantee = reservoir.guarantee;
    st.stage("reservoir", true,
             "size " + std::to_string(rep.reservoir_size) + ", per-pair guarantee " +
                 std::to_string(reservoir.guarantee));

    // Stage 4: bulk cover by greedy longest paths.
    int greedy_round = 0;
    while (static_cast<int>(st.loose.count()) >= std::max(1.0, cfg.eta * n) &&
           static_cast<int>(st.segments.size()) < cfg.max_segments) {
        VertexSet forbidden(n);
        forbidden.set();
        forbidden -= st.loose;
        GreedyPathOptions gopts;
        gopts.restarts = cfg.greedy_restarts;
        TightPath p = longest_tight_path_greedy(g, mix_seed(cfg.seed, 400 + greedy_round),
                                                forbidden, gopts);
        ++greedy_round;
        if (p.size() < 3) break;  // stall: remainder spans no usable edge
        st.absorb_segment(p);
    }
    st.stage("bulk_cover", true,
             std::to_string(st.segments.size()) + " segments, " +
                 std::to_string(st.loose.count()) + " loose vertices left");

    // Stage 5: connect all segments into at most two paths.
    std::vector<TightPath> work = st.segments;
    std::vector<TightPath> small_segments;
    work.erase(std::remove_if(work.begin(), work.end(),
                              [&](const TightPath& p) {
                                  if (p.size() >= 3) return false;
                                  small_segments.push_back(p);
                                  return true;
                              }),
               work.end());
    for (const TightPath& p : small_segments)
        for (int v : p.vertices) {
            st.covered.reset(v);
            st.loose.set(v);  // short remnants are absorbed, not connected
        }

    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < work.size(); ++i)
        groups[st.segment_component(work[i])].push_back(i);
    if (groups.size() > 2) {
        st.fail("connection", "segments span " + std::to_string(groups.size()) +
                                  " tight components; a two-path cover cannot connect them");
        return {std::nullopt, rep};
    }

    std::vector<TightPath> chains;
    std::vector<std::vector<std::size_t>> group_rest;
    for (auto& [comp, idxs] : groups) {
        std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            return work[a].size() > work[b].size();
        });
        chains.push_back(work[idxs[0]]);
        group_rest.push_back({idxs.begin() + 1, idxs.end()});
    }
    if (chains.empty()) {
        st.fail("connection", "no segment of length >= 3 to build a path from");
        return {std::nullopt, rep};
    }
    // with a single component group, a second chain seed keeps connections short
    if (chains.size() == 1 && group_rest[0].size() >= 1) {
        chains.push_back(work[group_rest[0][0]]);
        group_rest[0].erase(group_rest[0].begin());
    }
    for (std::size_t gi = 0; gi < group_rest.size(); ++gi) {
        for (std::size_t idx : group_rest[gi]) {
            const TightPath& seg = work[idx];
            bool placed = false;
            for (std::size_t ci = 0; ci < chains.size() && !placed; ++ci) {
                if (st.segment_component(chains[ci]) != st.segment_component(seg)) continue;
                placed = attach_with_turn(st, chains[ci], seg, mix_seed(cfg.seed, 500 + idx));
            }
            if (!placed) {
                st.fail("connection",
                        "could not connect a segment to a chain in its tight component");
                return {std::nullopt, rep};
            }
        }
    }

    // parity fix: leftover (loose + reservoir + planted) must be 0 mod 3
    auto leftover_count = [&]() {
        return static_cast<int>(st.loose.count() + st.reservoir.count() + st.planted.count());
    };
    // banked gadget vertices must stay contiguous in the chains, so the
    // parity fix may not pop them off an end
    VertexSet protected_vertices(n);
    for (const Absorber& a : st.bank)
        for (const TightPath& p : a.gadget)
            for (int v : p.vertices) protected_vertices.set(v);

    if (int r = leftover_count() % 3; r != 0) {
        // grow a chain end by r vertices, or shrink by 3-r on stall
        int grown = 0;
        for (int step = 0; step < r; ++step) {
            bool extended = false;
            for (TightPath& chain : chains) {
                for (int side = 0; side < 2 && !extended; ++side) {
                    TightPath oriented = side == 0 ? chain : chain.reversed();
                    int a = oriented.vertices[oriented.size() - 2];
                    int b = oriented.vertices[oriented.size() - 1];
                    VertexSet cand = g.pair_neighbors(a, b);
                    VertexSet pool = st.loose;
                    pool |= st.reservoir;
                    cand &= pool;
                    std::size_t w = cand.find_first();
                    if (w == VertexSet::npos) continue;
                    oriented.vertices.push_back(static_cast<int>(w));
                    st.covered.set(w);
                    st.loose.reset(w);
                    st.reservoir.reset(w);
                    chain = side == 0 ? oriented : oriented.reversed();
                    extended = true;
                }
                if (extended) break;
            }
            if (!extended) break;
            ++grown;
        }
        if (grown < r) {
            // revert partial growth, then pop 3-r fresh unprotected vertices
            for (int undo = 0; undo < grown; ++undo) {
                for (TightPath& chain : chains) {
                    int w = chain.vertices.back();
                    if (st.covered.test(w) && !protected_vertices.test(w) && chain.size() > 3) {
                        chain.vertices.pop_back();
                        st.covered.reset(w);
                        st.loose.set(w);
                        break;
                    }
                }
            }
            int need = (3 - leftover_count() % 3) % 3;
            for (int step = 0; step < need; ++step) {
                bool popped = false;
                for (TightPath& chain : chains) {
                    for (int side = 0; side < 2 && !popped; ++side) {
                        TightPath oriented = side == 0 ? chain : chain.reversed();
                        if (oriented.size() < 4) continue;
                        int w = oriented.vertices.back();
                        if (protected_vertices.test(w)) continue;
                        oriented.vertices.pop_back();
                        st.covered.reset(w);
                        st.loose.set(w);
                        chain = side == 0 ? oriented : oriented.reversed();
                        popped = true;
                    }
                    if (popped) break;
                }
                if (!popped) {
                    st.fail("connection",
                            "could not adjust a chain end to fix leftover size mod 3");
                    return {std::nullopt, rep};
                }
            }
        }
    }
    if (leftover_count() % 3 != 0) {
        st.fail("connection", "leftover size still not a multiple of 3 after the parity fix");
        return {std::nullopt, rep};
    }
    st.stage("connection", true,
             std::to_string(chains.size()) + " chains, leftover " +
                 std::to_string(leftover_count()));

    // Stage 6: absorb the leftover.
    PathCover cover;
    cover.paths = chains;
    for (const Absorber& a : st.bank) {
        cover = apply_absorber(cover, a);
        for (int v : a.target) {
            st.planted.reset(v);
            st.covered.set(v);
        }
    }

    std::vector<int> leftover;
    VertexSet leftover_set = st.loose;
    leftover_set |= st.reservoir;
    leftover_set |= st.planted;  // planted vertices whose absorber fell through
    for (std::size_t v = leftover_set.find_first(); v != VertexSet::npos;
         v = leftover_set.find_next(v))
        leftover.push_back(static_cast<int>(v));

    if (leftover.size() % 3 != 0) {
        st.fail("absorption", "leftover size is not a multiple of 3");
        return {std::nullopt, rep};
    }

    // group leftover into triples along the index system, then absorb each by
    // three disjoint single-vertex insertions into the chains
    std::vector<std::vector<int>> triples;
    if (st.partition.part_count() == 2 && !leftover.empty()) {
        std::vector<int> xs, ys;
        for (int v : leftover)
            (st.partition.part_of(v) == 0 ? xs : ys).push_back(v);
        std::vector<IndexVector> allowed;
        for (const IndexVector& iv : st.absorbable)
            if (iv.coords.size() == 2) allowed.push_back(iv);
        auto sol = solve_index_system(static_cast<int>(xs.size()), static_cast<int>(ys.size()),
                                      allowed);
        if (!sol) {
            st.fail("absorption", "leftover index system has no solution over absorbable indices");
            return {std::nullopt, rep};
        }
        std::size_t xi = 0, yi = 0;
        for (const auto& [iv, count] : *sol)
            for (int c = 0; c < count; ++c) {
                std::vector<int> t;
                for (int i = 0; i < iv.coords[0]; ++i) t.push_back(xs[xi++]);
                for (int i = 0; i < iv.coords[1]; ++i) t.push_back(ys[yi++]);
                triples.push_back(t);
            }
    } else {
        for (std::size_t i = 0; i + 2 < leftover.size(); i += 3)
            triples.push_back({leftover[i], leftover[i + 1], leftover[i + 2]});
    }

    int absorbed = 0, appended = 0;
    for (const std::vector<int>& triple : triples) {
        std::optional<Absorber> built = build_triple_absorber(g, cover, triple);
        if (built) {
            AbsorberCheck chk = verify_absorber(g, *built);
            if (!chk.ok) {
                st.fail("absorption", "constructed absorber failed verification: " +
                                          chk.violations.front());
                return {std::nullopt, rep};
            }
            cover = apply_absorber(cover, *built);
            ++absorbed;
        } else if (append_triple_at_end(g, cover, triple) ||
                   append_singles_at_ends(g, cover, triple)) {
            ++appended;  // fallback: the triple extends chain ends instead
        } else {
            st.fail("absorption", "no insertion windows for a leftover triple");
            return {std::nullopt, rep};
        }
        for (int v : triple) {
            st.covered.set(v);
            st.loose.reset(v);
            st.reservoir.reset(v);
            st.planted.reset(v);
        }
    }
    st.stage("absorption", true,
             std::to_string(st.bank.size()) + " banked + " + std::to_string(absorbed) +
                 " on-path absorbers applied" +
                 (appended ? ", " + std::to_string(appended) + " triples appended at ends" : ""));

    CoverValidation val = validate_cover(g, cover, cfg.allow_short);
    if (!val.ok || cover.paths.size() > 2) {
        st.fail("validation", val.ok ? "more than two paths" : val.violations.front());
        return {std::nullopt, rep};
    }
    rep.success = true;
    rep.final_path_count = static_cast<int>(cover.paths.size());
    return {cover, rep};
}

}  // namespace tightpath
