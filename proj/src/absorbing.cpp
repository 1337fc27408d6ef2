#include "tightpath/absorbing.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "tightpath/util.hpp"

namespace tightpath {

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

VertexSet base_allowed(const ThreeGraph& g, const VertexSet& forbidden) {
    VertexSet allowed(g.vertex_count());
    allowed.set();
    if (forbidden.size() == allowed.size()) allowed -= forbidden;
    return allowed;
}

/// Core witness count: ordered tuples (a,b,c,d) from `allowed` (u,v excluded
/// defensively) with a b u c d and a b v c d both tight. Early exit at cap.
long long count_witnesses_in(const ThreeGraph& g, int u, int v, long long cap,
                             const VertexSet& allowed_in) {
    if (u == v) throw std::invalid_argument("reach witnesses need two distinct vertices");
    if (cap <= 0) return 0;
    VertexSet allowed = allowed_in;
    allowed.reset(u);
    allowed.reset(v);
    long long total = 0;
    const int n = g.vertex_count();
    VertexSet bs(n), cs(n), ds(n);
    for (std::size_t a = allowed.find_first(); a != VertexSet::npos; a = allowed.find_next(a)) {
        bs = g.pair_neighbors(static_cast<int>(a), u);
        bs &= g.pair_neighbors(static_cast<int>(a), v);
        bs &= allowed;
        for (std::size_t b = bs.find_first(); b != VertexSet::npos; b = bs.find_next(b)) {
            cs = g.pair_neighbors(static_cast<int>(b), u);
            cs &= g.pair_neighbors(static_cast<int>(b), v);
            cs &= allowed;
            cs.reset(a);
            for (std::size_t c = cs.find_first(); c != VertexSet::npos; c = cs.find_next(c)) {
                ds = g.pair_neighbors(static_cast<int>(c), u);
                ds &= g.pair_neighbors(static_cast<int>(c), v);
                ds &= allowed;
                ds.reset(a);
                ds.reset(b);
                total += static_cast<long long>(ds.count());
                if (total >= cap) return cap;
            }
        }
    }
    return total;
}

using Frame = std::array<int, 4>;  // (a,b,c,d)

/// Enumerates witness frames in ascending order; fn returning true stops.
template <typename Fn>
bool for_each_witness(const ThreeGraph& g, int u, int v, const VertexSet& allowed_in, Fn fn) {
    VertexSet allowed = allowed_in;
    allowed.reset(u);
    allowed.reset(v);
    const int n = g.vertex_count();
    VertexSet bs(n), cs(n), ds(n);
    for (std::size_t a = allowed.find_first(); a != VertexSet::npos; a = allowed.find_next(a)) {
        bs = g.pair_neighbors(static_cast<int>(a), u);
        bs &= g.pair_neighbors(static_cast<int>(a), v);
        bs &= allowed;
        for (std::size_t b = bs.find_first(); b != VertexSet::npos; b = bs.find_next(b)) {
            cs = g.pair_neighbors(static_cast<int>(b), u);
            cs &= g.pair_neighbors(static_cast<int>(b), v);
            cs &= allowed;
            cs.reset(a);
            for (std::size_t c = cs.find_first(); c != VertexSet::npos; c = cs.find_next(c)) {
                ds = g.pair_neighbors(static_cast<int>(c), u);
                ds &= g.pair_neighbors(static_cast<int>(c), v);
                ds &= allowed;
                ds.reset(a);
                ds.reset(b);
                for (std::size_t d = ds.find_first(); d != VertexSet::npos; d = ds.find_next(d)) {
                    if (fn(Frame{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c),
                                 static_cast<int>(d)}))
                        return true;
                }
            }
        }
    }
    return false;
}

std::optional<Frame> sample_witness(const ThreeGraph& g, int u, int v, const VertexSet& allowed_in,
                                    std::mt19937_64& rng, int tries) {
    VertexSet allowed = allowed_in;
    allowed.reset(u);
    allowed.reset(v);
    if (allowed.count() < 4) return std::nullopt;
    const int n = g.vertex_count();
    VertexSet cand(n);
    for (int t = 0; t < tries; ++t) {
        int a = pick_bit(allowed, rng);
        cand = g.pair_neighbors(a, u);
        cand &= g.pair_neighbors(a, v);
        cand &= allowed;
        int b = pick_bit(cand, rng);
        if (b < 0) continue;
        cand = g.pair_neighbors(b, u);
        cand &= g.pair_neighbors(b, v);
        cand &= allowed;
        cand.reset(a);
        int c = pick_bit(cand, rng);
        if (c < 0) continue;
        cand = g.pair_neighbors(c, u);
        cand &= g.pair_neighbors(c, v);
        cand &= allowed;
        cand.reset(a);
        cand.reset(b);
        int d = pick_bit(cand, rng);
        if (d < 0) continue;
        return Frame{a, b, c, d};
    }
    return std::nullopt;
}

}  // namespace

long long count_reach_witnesses(const ThreeGraph& g, int u, int v, long long cap) {
    VertexSet allowed(g.vertex_count());
    allowed.set();
    return count_witnesses_in(g, u, v, cap, allowed);
}

long long default_witness_threshold(int n) {
    double t = 0.001 * double(n) * n * n * n;
    return std::max<long long>(1, static_cast<long long>(t));
}

ReachabilityGraph reachability_graph(const ThreeGraph& g, long long threshold) {
    if (threshold < 1) throw std::invalid_argument("reachability threshold must be positive");
    const int n = g.vertex_count();
    ReachabilityGraph out;
    out.n = n;
    out.threshold = threshold;
    out.adj.assign(n, VertexSet(n));
    out.witness_count.assign(n, std::vector<long long>(n, 0));
    VertexSet allowed(n);
    allowed.set();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            long long c = count_witnesses_in(g, u, v, threshold, allowed);
            out.witness_count[u][v] = out.witness_count[v][u] = c;
            if (c >= threshold) {
                out.adj[u].set(v);
                out.adj[v].set(u);
            }
        }
    }
    return out;
}

ReachPartition reachability_partition(const ThreeGraph& g, long long threshold,
                                      double delta_target) {
    ReachabilityGraph rg = reachability_graph(g, threshold);
    const int n = g.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int u = 0; u < n; ++u)
        for (std::size_t v = rg.adj[u].find_first(); v != VertexSet::npos;
             v = rg.adj[u].find_next(v))
            parent[find(u)] = find(static_cast<int>(v));

    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> parts;
    for (auto& [root, members] : groups) parts.push_back(members);
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    if (delta_target > 0) {
        std::size_t max_parts = static_cast<std::size_t>(1.0 / delta_target);
        max_parts = std::max<std::size_t>(max_parts, 1);
        while (parts.size() > max_parts) {
            // merge the two smallest parts (ties by smallest member)
            auto smaller = [&](std::size_t i, std::size_t j) {
                if (parts[i].size() != parts[j].size()) return parts[i].size() < parts[j].size();
                return parts[i].front() < parts[j].front();
            };
            std::size_t s0 = 0;
            for (std::size_t i = 1; i < parts.size(); ++i)
                if (smaller(i, s0)) s0 = i;
            std::size_t s1 = s0 == 0 ? 1 : 0;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (i != s0 && smaller(i, s1)) s1 = i;
            parts[s0].insert(parts[s0].end(), parts[s1].begin(), parts[s1].end());
            std::sort(parts[s0].begin(), parts[s0].end());
            parts.erase(parts.begin() + static_cast<long>(s1));
        }
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    ReachPartition out;
    out.threshold = threshold;
    out.partition = VertexPartition(parts);
    out.closure_evidence.assign(parts.size(), threshold);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        long long evidence = threshold;  // capped measurement
        const auto& part = parts[i];
        for (std::size_t a = 0; a < part.size(); ++a)
            for (std::size_t b = a + 1; b < part.size(); ++b)
                evidence = std::min(evidence, rg.witness_count[part[a]][part[b]]);
        if (part.size() < 2) evidence = threshold;  // vacuous closure
        out.closure_evidence[i] = evidence;
    }
    return out;
}

// ---------------------------------------------------------------------------
// absorbers
// ---------------------------------------------------------------------------

const char* to_string(AbsorberFailStage stage) {
    switch (stage) {
        case AbsorberFailStage::none: return "none";
        case AbsorberFailStage::witness_stage: return "witness-stage exhaustion";
        case AbsorberFailStage::p4_stage: return "P4-stage exhaustion";
        case AbsorberFailStage::no_compatible_edge: return "no edge matches the index vector";
        case AbsorberFailStage::k232_stage: return "K_{2,3,2}-stage exhaustion";
        case AbsorberFailStage::reachability_stage: return "reachability-stage exhaustion";
        case AbsorberFailStage::assembly_stage: return "frame-assembly exhaustion";
        case AbsorberFailStage::budget_exhausted: return "search budget exhausted";
    }
    return "?";
}

AbsorberCheck verify_absorber(const ThreeGraph& g, const Absorber& a) {
    AbsorberCheck out;
    auto note = [&](const std::string& s) { out.violations.push_back(s); };

    if (a.target.size() != 3 || std::set<int>(a.target.begin(), a.target.end()).size() != 3)
        note("target S must be a 3-set of distinct vertices");
    if (a.gadget.size() != a.replacement.size() || a.gadget.empty())
        note("gadget and replacement must be nonempty families of equal size");

    auto family_vertices = [&](const std::vector<TightPath>& fam, const char* name) {
        std::set<int> all;
        std::size_t total = 0;
        for (const TightPath& p : fam) {
            if (p.size() < 2) note(std::string(name) + ": path shorter than 2 has no ends");
            try {
                if (!is_tight_path(g, p.vertices)) note(std::string(name) + ": path not tight");
            } catch (const std::exception& e) {
                note(std::string(name) + ": " + e.what());
            }
            all.insert(p.vertices.begin(), p.vertices.end());
            total += p.vertices.size();
        }
        if (all.size() != total) note(std::string(name) + ": paths are not vertex-disjoint");
        return all;
    };
    std::set<int> q_verts = family_vertices(a.gadget, "gadget");
    std::set<int> r_verts = family_vertices(a.replacement, "replacement");

    for (int s : a.target)
        if (q_verts.count(s)) note("gadget intersects S");

    std::set<int> expect = q_verts;
    expect.insert(a.target.begin(), a.target.end());
    if (expect != r_verts) note("vertex-set equation V(Q) ∪ S = V(Q') violated");

    for (std::size_t i = 0; i < std::min(a.gadget.size(), a.replacement.size()); ++i) {
        const TightPath& q = a.gadget[i];
        const TightPath& r = a.replacement[i];
        if (q.size() < 2 || r.size() < 2) continue;
        if (q.front_end() != r.front_end() || q.back_end() != r.back_end())
            note("pair " + std::to_string(i) + ": ends differ between Q and Q'");
    }

    out.ok = out.violations.empty();
    return out;
}

namespace {

struct SimpleParts {
    std::array<int, 3> w;
    std::array<int, 4> u;
};

Absorber assemble_simple(const std::vector<int>& target, const SimpleParts& parts,
                         const std::array<Frame, 3>& frames) {
    Absorber a;
    a.target = target;
    for (int i = 0; i < 3; ++i) {
        const Frame& f = frames[i];
        a.gadget.push_back({{f[0], f[1], parts.w[i], f[2], f[3]}});
        a.replacement.push_back({{f[0], f[1], target[i], f[2], f[3]}});
    }
    a.gadget.push_back({{parts.u[0], parts.u[1], parts.u[2], parts.u[3]}});
    a.replacement.push_back(
        {{parts.u[0], parts.u[1], parts.w[0], parts.w[1], parts.w[2], parts.u[2], parts.u[3]}});
    return a;
}

/// Backtracking search for three pairwise-disjoint witness frames, one per
/// (target[i], w[i]) pair, inside `pool`. Complete given a complete
/// enumerator; the pool-size prune keeps hopeless branches cheap.
bool assemble_frames(const ThreeGraph& g, const std::vector<int>& target,
                     const std::array<int, 3>& w, VertexSet pool, int i,
                     std::array<Frame, 3>& frames, long long& nodes, long long node_cap) {
    if (i == 3) return true;
    if (pool.count() < std::size_t(4) * (3 - i)) return false;
    bool found = for_each_witness(g, target[i], w[i], pool, [&](const Frame& f) {
        if (++nodes > node_cap) return true;  // give up; caller checks nodes
        VertexSet next = pool;
        for (int x : f) next.reset(x);
        frames[i] = f;
        return assemble_frames(g, target, w, next, i + 1, frames, nodes, node_cap);
    });
    return found && nodes <= node_cap;
}

void validate_target(const ThreeGraph& g, const std::vector<int>& target,
                     const VertexSet& forbidden) {
    if (target.size() != 3) throw std::invalid_argument("absorber target must have 3 vertices");
    std::set<int> s(target.begin(), target.end());
    if (s.size() != 3) throw std::invalid_argument("absorber target has repeated vertices");
    for (int v : target) {
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("absorber target vertex out of range");
        if (forbidden.size() == static_cast<std::size_t>(g.vertex_count()) && forbidden.test(v))
            throw std::invalid_argument("absorber target meets the forbidden set");
    }
}

}  // namespace

AbsorberSearchResult find_simple_absorber(const ThreeGraph& g, const std::vector<int>& target,
                                          const VertexSet& forbidden,
                                          const AbsorberSearchOptions& opts) {
    validate_target(g, target, forbidden);
    const int n = g.vertex_count();
    AbsorberSearchResult res;
    res.exhaustive = n <= opts.exhaustive_cutoff;

    VertexSet allowed = base_allowed(g, forbidden);
    for (int v : target) allowed.reset(v);

    // Stage A: swap partners per target vertex (complete by enumeration).
    std::array<VertexSet, 3> partners{VertexSet(n), VertexSet(n), VertexSet(n)};
    for (int i = 0; i < 3; ++i) {
        for (std::size_t w = allowed.find_first(); w != VertexSet::npos; w = allowed.find_next(w)) {
            if (count_witnesses_in(g, target[i], static_cast<int>(w), 1, allowed) > 0)
                partners[i].set(w);
        }
        if (partners[i].none()) {
            res.fail_stage = AbsorberFailStage::witness_stage;
            res.exhaustive = true;  // the partner scan is always complete
            res.detail = "no swap partner for target vertex " + std::to_string(target[i]);
            return res;
        }
    }

    // Stage B feeds stage C: partner triples that span an edge, with an
    // insertion frame u1..u4, then three disjoint witness frames.
    bool p4_candidate_seen = false;
    long long assembly_nodes = 0;
    const long long assembly_cap = res.exhaustive ? 50'000'000LL : 200'000LL;
    long long work = 0;
    const long long work_cap = res.exhaustive ? 500'000'000LL : 100LL * opts.budget;

    std::mt19937_64 rng(mix_seed(opts.seed, 0x73696d706cULL));
    std::vector<int> edge_order(g.edges().size());
    std::iota(edge_order.begin(), edge_order.end(), 0);
    if (!res.exhaustive) std::shuffle(edge_order.begin(), edge_order.end(), rng);

    long long samples = 0;
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

    for (int ei : edge_order) {
        const Triple& e = g.edges()[ei];
        if (!allowed.test(e[0]) || !allowed.test(e[1]) || !allowed.test(e[2])) continue;
        for (const auto& perm : perms) {
            std::array<int, 3> w{e[perm[0]], e[perm[1]], e[perm[2]]};
            if (!partners[0].test(w[0]) || !partners[1].test(w[1]) || !partners[2].test(w[2]))
                continue;
            // insertion frame: u2 u3 first, then u1 (two windows) and u4
            VertexSet used(n);
            for (int x : w) used.set(x);
            VertexSet u2s = g.pair_neighbors(w[0], w[1]);
            u2s &= allowed;
            u2s -= used;
            for (std::size_t u2 = u2s.find_first(); u2 != VertexSet::npos; u2 = u2s.find_next(u2)) {
                VertexSet u3s = g.pair_neighbors(w[1], w[2]);
                u3s &= allowed;
                u3s -= used;
                u3s.reset(u2);
                for (std::size_t u3 = u3s.find_first(); u3 != VertexSet::npos;
                     u3 = u3s.find_next(u3)) {
                    if (++work > work_cap) {
                        res.fail_stage = AbsorberFailStage::budget_exhausted;
                        res.exhaustive = false;
                        res.detail = "insertion-frame scan exceeded its work cap";
                        return res;
                    }
                    VertexSet u1s = g.pair_neighbors(static_cast<int>(u2), w[0]);
                    u1s &= g.pair_neighbors(static_cast<int>(u2), static_cast<int>(u3));
                    u1s &= allowed;
                    u1s -= used;
                    u1s.reset(u2);
                    u1s.reset(u3);
                    for (std::size_t u1 = u1s.find_first(); u1 != VertexSet::npos;
                         u1 = u1s.find_next(u1)) {
                        VertexSet u4s = g.pair_neighbors(w[2], static_cast<int>(u3));
                        u4s &= g.pair_neighbors(static_cast<int>(u2), static_cast<int>(u3));
                        u4s &= allowed;
                        u4s -= used;
                        u4s.reset(u1);
                        u4s.reset(u2);
                        u4s.reset(u3);
                        for (std::size_t u4 = u4s.find_first(); u4 != VertexSet::npos;
                             u4 = u4s.find_next(u4)) {
                            p4_candidate_seen = true;
                            SimpleParts parts{w,
                                              {static_cast<int>(u1), static_cast<int>(u2),
                                               static_cast<int>(u3), static_cast<int>(u4)}};
                            VertexSet pool = allowed;
                            for (int x : parts.w) pool.reset(x);
                            for (int x : parts.u) pool.reset(x);
                            std::array<Frame, 3> frames;
                            if (assemble_frames(g, target, w, pool, 0, frames, assembly_nodes,
                                                assembly_cap)) {
                                Absorber a = assemble_simple(target, parts, frames);
                                AbsorberCheck chk = verify_absorber(g, a);
                                if (!chk.ok)
                                    throw std::logic_error("simple absorber failed verification: " +
                                                           chk.violations.front());
                                res.absorber = std::move(a);
                                res.fail_stage = AbsorberFailStage::none;
                                return res;
                            }
                            if (assembly_nodes > assembly_cap) {
                                res.fail_stage = AbsorberFailStage::budget_exhausted;
                                res.exhaustive = false;
                                res.detail = "frame assembly exceeded its node cap";
                                return res;
                            }
                            if (!res.exhaustive && ++samples >= opts.budget) {
                                res.fail_stage = AbsorberFailStage::budget_exhausted;
                                res.detail = "sample budget exhausted";
                                return res;
                            }
                        }
                    }
                }
            }
        }
    }

    res.fail_stage =
        p4_candidate_seen ? AbsorberFailStage::assembly_stage : AbsorberFailStage::p4_stage;
    res.detail = p4_candidate_seen
                     ? "insertion frames exist but no disjoint witness assembly"
                     : "no partner triple spans an edge with an insertion frame";
    return res;
}

// ---------------------------------------------------------------------------
// lattice absorber
// ---------------------------------------------------------------------------

namespace {

struct K232 {
    // parts A = {a1,a2}, B = {b1,b2,b3}, C = {c1,c2}; e = {a1,b2,c1} is the
    // replaceable edge, inserted between b1 a2 · c2 b3 in the order c1 b2 a1.
    int a1, a2, b1, b2, b3, c1, c2;

    std::array<int, 3> insertion_order() const { return {c1, b2, a1}; }
    std::array<int, 4> residual_path() const { return {b1, a2, c2, b3}; }
    std::array<int, 7> all() const { return {a1, a2, b1, b2, b3, c1, c2}; }
};

/// One reach linkage: either a direct witness frame for (v,w) or two frames
/// composed through an intermediate vertex z.
struct Linkage {
    bool direct = true;
    Frame f1{};  // direct: witness(v,w). composed: witness(v,z)
    Frame f2{};  // composed: witness(z,w)
    int z = -1;

    std::vector<int> vertices(int w) const {
        std::vector<int> out(f1.begin(), f1.end());
        if (!direct) {
            out.insert(out.end(), f2.begin(), f2.end());
            out.push_back(z);
        }
        out.push_back(w);
        return out;
    }
};

void append_linkage_paths(const Linkage& l, int v, int w, std::vector<TightPath>& gadget,
                          std::vector<TightPath>& replacement) {
    if (l.direct) {
        gadget.push_back({{l.f1[0], l.f1[1], w, l.f1[2], l.f1[3]}});
        replacement.push_back({{l.f1[0], l.f1[1], v, l.f1[2], l.f1[3]}});
    } else {
        // before: z sits in frame1, w in frame2; after: v in frame1, z in frame2
        gadget.push_back({{l.f1[0], l.f1[1], l.z, l.f1[2], l.f1[3]}});
        replacement.push_back({{l.f1[0], l.f1[1], v, l.f1[2], l.f1[3]}});
        gadget.push_back({{l.f2[0], l.f2[1], w, l.f2[2], l.f2[3]}});
        replacement.push_back({{l.f2[0], l.f2[1], l.z, l.f2[2], l.f2[3]}});
    }
}

/// Finds a linkage for (v,w) inside pool; direct frames are preferred.
std::optional<Linkage> find_linkage(const ThreeGraph& g, int v, int w, const VertexSet& pool,
                                    std::mt19937_64* rng, long long& nodes, long long node_cap) {
    Linkage out;
    if (rng) {
        if (auto f = sample_witness(g, v, w, pool, *rng, 40)) {
            out.f1 = *f;
            return out;
        }
    } else {
        bool found = for_each_witness(g, v, w, pool, [&](const Frame& f) {
            out.f1 = f;
            return true;
        });
        if (found) return out;
    }
    // composed route through an intermediate vertex
    out.direct = false;
    VertexSet zs = pool;
    zs.reset(v);
    zs.reset(w);
    std::vector<int> z_order;
    for (std::size_t z = zs.find_first(); z != VertexSet::npos; z = zs.find_next(z))
        z_order.push_back(static_cast<int>(z));
    if (rng) std::shuffle(z_order.begin(), z_order.end(), *rng);
    for (int z : z_order) {
        if (++nodes > node_cap) return std::nullopt;
        VertexSet sub = pool;
        sub.reset(z);
        std::optional<Frame> f1;
        if (rng) {
            f1 = sample_witness(g, v, z, sub, *rng, 10);
        } else {
            for_each_witness(g, v, z, sub, [&](const Frame& f) {
                f1 = f;
                return true;
            });
        }
        if (!f1) continue;
        VertexSet sub2 = sub;
        for (int x : *f1) sub2.reset(x);
        std::optional<Frame> f2;
        if (rng) {
            f2 = sample_witness(g, z, w, sub2, *rng, 10);
        } else {
            for_each_witness(g, z, w, sub2, [&](const Frame& f) {
                f2 = f;
                return true;
            });
        }
        if (!f2) continue;
        out.z = z;
        out.f1 = *f1;
        out.f2 = *f2;
        return out;
    }
    return std::nullopt;
}

}  // namespace

AbsorberSearchResult find_lattice_absorber(const ThreeGraph& g, const VertexPartition& p,
                                           const std::vector<int>& target,
                                           const VertexSet& forbidden,
                                           const AbsorberSearchOptions& opts) {
    validate_target(g, target, forbidden);
    const int n = g.vertex_count();
    AbsorberSearchResult res;
    // Apart from the complete index-vector filter, the lattice search is a
    // sampler: its not-found verdicts are never proofs of absence.
    const bool small = n <= opts.exhaustive_cutoff;
    res.exhaustive = false;

    VertexSet allowed = base_allowed(g, forbidden);
    for (int v : target) allowed.reset(v);

    const IndexVector want = index_vector(p, target);
    std::vector<int> compatible;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Triple& e = g.edges()[i];
        if (!allowed.test(e[0]) || !allowed.test(e[1]) || !allowed.test(e[2])) continue;
        if (index_vector(p, e) == want) compatible.push_back(static_cast<int>(i));
    }
    if (compatible.empty()) {
        res.fail_stage = AbsorberFailStage::no_compatible_edge;
        res.exhaustive = true;  // the filter scanned every edge
        res.detail = "no edge attains the index vector of S";
        return res;
    }

    std::mt19937_64 rng(mix_seed(opts.seed, 0x6c61747469ULL));
    std::mt19937_64* rng_ptr = small ? nullptr : &rng;
    if (!small) std::shuffle(compatible.begin(), compatible.end(), rng);

    bool k232_seen = false, pairing_linked = false;
    long long nodes = 0;
    const long long node_cap = 4 * opts.budget;
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

    for (int ei : compatible) {
        const Triple& e = g.edges()[ei];
        for (const auto& role : perms) {
            if (++nodes > node_cap) {
                res.fail_stage = AbsorberFailStage::budget_exhausted;
                res.detail = "search budget exhausted";
                return res;
            }
            K232 k{};
            k.a1 = e[role[0]];
            k.b2 = e[role[1]];
            k.c1 = e[role[2]];
            VertexSet used(n);
            used.set(k.a1);
            used.set(k.b2);
            used.set(k.c1);

            auto choose = [&](VertexSet cand) -> int {
                cand &= allowed;
                cand -= used;
                if (rng_ptr) return pick_bit(cand, *rng_ptr);
                std::size_t f = cand.find_first();
                return f == VertexSet::npos ? -1 : static_cast<int>(f);
            };
            VertexSet tmp = g.pair_neighbors(k.a1, k.b2);
            k.c2 = choose(tmp);
            if (k.c2 < 0) continue;
            used.set(k.c2);
            tmp = g.pair_neighbors(k.b2, k.c1);
            tmp &= g.pair_neighbors(k.b2, k.c2);
            k.a2 = choose(tmp);
            if (k.a2 < 0) continue;
            used.set(k.a2);
            tmp = g.pair_neighbors(k.a1, k.c1);
            tmp &= g.pair_neighbors(k.a1, k.c2);
            tmp &= g.pair_neighbors(k.a2, k.c1);
            tmp &= g.pair_neighbors(k.a2, k.c2);
            k.b1 = choose(tmp);
            if (k.b1 < 0) continue;
            used.set(k.b1);
            k.b3 = choose(tmp);
            if (k.b3 < 0) continue;
            used.set(k.b3);
            k232_seen = true;

            // part-preserving pairings of S with the inserted edge vertices
            std::array<int, 3> ws = k.insertion_order();
            for (const auto& perm : perms) {
                std::array<int, 3> assigned{target[perm[0]], target[perm[1]], target[perm[2]]};
                bool compat = true;
                for (int i = 0; i < 3 && compat; ++i)
                    compat = p.part_of(assigned[i]) == p.part_of(ws[i]);
                if (!compat) continue;

                VertexSet pool = allowed;
                for (int x : k.all()) pool.reset(x);
                std::array<std::optional<Linkage>, 3> link;
                bool all_linked = true;
                for (int i = 0; i < 3 && all_linked; ++i) {
                    link[i] = find_linkage(g, assigned[i], ws[i], pool, rng_ptr, nodes, node_cap);
                    if (!link[i]) {
                        all_linked = false;
                        break;
                    }
                    for (int x : link[i]->vertices(ws[i])) pool.reset(x);
                }
                if (!all_linked) continue;
                pairing_linked = true;

                Absorber a;
                a.target = {assigned[0], assigned[1], assigned[2]};
                for (int i = 0; i < 3; ++i)
                    append_linkage_paths(*link[i], assigned[i], ws[i], a.gadget, a.replacement);
                auto rp = k.residual_path();
                a.gadget.push_back({{rp[0], rp[1], rp[2], rp[3]}});
                a.replacement.push_back({{rp[0], rp[1], ws[0], ws[1], ws[2], rp[2], rp[3]}});
                AbsorberCheck chk = verify_absorber(g, a);
                if (!chk.ok)
                    throw std::logic_error("lattice absorber failed verification: " +
                                           chk.violations.front());
                res.absorber = std::move(a);
                res.fail_stage = AbsorberFailStage::none;
                return res;
            }
        }
    }

    if (!k232_seen) {
        res.fail_stage = AbsorberFailStage::k232_stage;
        res.detail = "no compatible edge extends to a K_{2,3,2}";
    } else if (!pairing_linked) {
        res.fail_stage = AbsorberFailStage::reachability_stage;
        res.detail = "no witness linkage for some v_i <-> w_i pairing";
    } else {
        res.fail_stage = AbsorberFailStage::assembly_stage;
        res.detail = "linkages found but never disjointly assembled";
    }
    return res;
}

PathCover apply_absorber(const PathCover& cover, const Absorber& a) {
    // locate every gadget path as a contiguous subpath, forward or reversed
    struct Placement {
        std::size_t path;
        std::size_t pos;
        std::size_t len;
        bool reversed;
        std::size_t gadget_index;
    };
    if (a.gadget.size() != a.replacement.size())
        throw std::invalid_argument("apply_absorber: gadget/replacement size mismatch");
    for (std::size_t i = 0; i < a.gadget.size(); ++i) {
        const TightPath& q = a.gadget[i];
        const TightPath& r = a.replacement[i];
        if (q.size() < 2 || r.size() < 2 || q.front_end() != r.front_end() ||
            q.back_end() != r.back_end())
            throw std::invalid_argument("apply_absorber: corrupted absorber, ends mismatch at " +
                                        std::to_string(i));
    }
    std::set<int> cover_vertices;
    for (const TightPath& p : cover.paths)
        cover_vertices.insert(p.vertices.begin(), p.vertices.end());
    for (int s : a.target)
        if (cover_vertices.count(s))
            throw std::invalid_argument("apply_absorber: S intersects the cover");

    std::vector<Placement> placements;
    for (std::size_t gi = 0; gi < a.gadget.size(); ++gi) {
        const std::vector<int>& q = a.gadget[gi].vertices;
        std::vector<int> qr(q.rbegin(), q.rend());
        bool located = false;
        for (std::size_t pi = 0; pi < cover.paths.size() && !located; ++pi) {
            const std::vector<int>& host = cover.paths[pi].vertices;
            if (host.size() < q.size()) continue;
            for (std::size_t pos = 0; pos + q.size() <= host.size(); ++pos) {
                if (std::equal(q.begin(), q.end(), host.begin() + pos)) {
                    placements.push_back({pi, pos, q.size(), false, gi});
                    located = true;
                    break;
                }
                if (std::equal(qr.begin(), qr.end(), host.begin() + pos)) {
                    placements.push_back({pi, pos, q.size(), true, gi});
                    located = true;
                    break;
                }
            }
        }
        if (!located)
            throw std::invalid_argument("apply_absorber: gadget path " + std::to_string(gi) +
                                        " is not a contiguous subpath of the cover");
    }

    PathCover out = cover;
    // splice back-to-front so earlier positions stay valid
    std::sort(placements.begin(), placements.end(), [](const Placement& x, const Placement& y) {
        return x.path != y.path ? x.path < y.path : x.pos > y.pos;
    });
    for (const Placement& pl : placements) {
        std::vector<int>& host = out.paths[pl.path].vertices;
        std::vector<int> repl = a.replacement[pl.gadget_index].vertices;
        if (pl.reversed) std::reverse(repl.begin(), repl.end());
        host.erase(host.begin() + pl.pos, host.begin() + pl.pos + pl.len);
        host.insert(host.begin() + pl.pos, repl.begin(), repl.end());
    }
    return out;
}

std::optional<std::vector<std::pair<IndexVector, int>>> solve_index_system(
    int count_x, int count_y, const std::vector<IndexVector>& allowed) {
    if (count_x < 0 || count_y < 0) throw std::invalid_argument("negative counts");
    if ((count_x + count_y) % 3 != 0)
        throw std::invalid_argument("count_x + count_y must be divisible by 3");

    static const std::array<std::array<int, 2>, 4> order{{{3, 0}, {2, 1}, {1, 2}, {0, 3}}};
    std::array<bool, 4> allow{};
    for (const IndexVector& iv : allowed) {
        if (iv.coords.size() != 2 || iv.coords[0] + iv.coords[1] != 3 || iv.coords[0] < 0 ||
            iv.coords[1] < 0)
            throw std::invalid_argument("allowed vectors must be 2-part triple indices");
        for (std::size_t i = 0; i < 4; ++i)
            if (iv.coords[0] == order[i][0] && iv.coords[1] == order[i][1]) allow[i] = true;
    }

    const int total = (count_x + count_y) / 3;
    for (int c30 = 0; c30 <= (allow[0] ? total : 0); ++c30)
        for (int c21 = 0; c30 + c21 <= total && c21 <= (allow[1] ? total : 0); ++c21)
            for (int c12 = 0; c30 + c21 + c12 <= total && c12 <= (allow[2] ? total : 0); ++c12) {
                int c03 = total - c30 - c21 - c12;
                if (c03 > 0 && !allow[3]) continue;
                if (3 * c30 + 2 * c21 + c12 != count_x) continue;
                if (c21 + 2 * c12 + 3 * c03 != count_y) continue;
                std::vector<std::pair<IndexVector, int>> out;
                std::array<int, 4> counts{c30, c21, c12, c03};
                for (std::size_t i = 0; i < 4; ++i)
                    if (counts[i] > 0)
                        out.emplace_back(IndexVector{{order[i][0], order[i][1]}}, counts[i]);
                return out;
            }
    return std::nullopt;
}

std::vector<IndexVector> absorbable_index_vectors(const ThreeGraph& g, const VertexPartition& p,
                                                  long long min_edges) {
    std::map<IndexVector, long long> counts;
    for (const Triple& e : g.edges()) ++counts[index_vector(p, e)];
    std::vector<IndexVector> out;
    for (const auto& [iv, c] : counts)
        if (c >= min_edges) out.push_back(iv);
    return out;
}

}  // namespace tightpath
