#include "tightpath/claims.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "tightpath/absorbing.hpp"
#include "tightpath/cover.hpp"
#include "tightpath/generators.hpp"
#include "tightpath/io.hpp"
#include "tightpath/pipeline.hpp"
#include "tightpath/report.hpp"
#include "tightpath/tight_structure.hpp"
#include "tightpath/util.hpp"

namespace tightpath {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

ClaimResult finish(int id, const std::string& name, Check& chk, Clock::time_point t0,
                   const std::string& pass_detail) {
    ClaimResult r;
    r.id = id;
    r.name = name;
    r.pass = chk.pass;
    r.detail = chk.pass && chk.detail.tellp() == 0 ? pass_detail : chk.detail.str();
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

/// Random graph as a uniform edge subset with a seeded density.
ThreeGraph random_edge_subset(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> density_dist(0.1, 0.9);
    double density = density_dist(rng);
    std::bernoulli_distribution keep(density);
    std::vector<Triple> triples;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if (keep(rng)) triples.push_back({u, v, w});
    return ThreeGraph(n, triples);
}

/// Independent Hamilton oracle: checks all n! orderings.
bool hamilton_path_by_permutations(const ThreeGraph& g) {
    const int n = g.vertex_count();
    if (n <= 2) return true;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 2; i < n && ok; ++i)
            ok = g.has_edge(perm[i - 2], perm[i - 1], perm[i]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Independent index-system oracle: complete enumeration, lex-minimal pick.
std::optional<std::array<int, 4>> index_system_oracle(int cx, int cy,
                                                      const std::array<bool, 4>& allow) {
    static const int vx[4] = {3, 2, 1, 0};
    static const int vy[4] = {0, 1, 2, 3};
    std::optional<std::array<int, 4>> best;
    int cap = (cx + cy) / 3;
    for (int a = 0; a <= (allow[0] ? cap : 0); ++a)
        for (int b = 0; b <= (allow[1] ? cap : 0); ++b)
            for (int c = 0; c <= (allow[2] ? cap : 0); ++c)
                for (int d = 0; d <= (allow[3] ? cap : 0); ++d) {
                    if (a * vx[0] + b * vx[1] + c * vx[2] + d * vx[3] != cx) continue;
                    if (a * vy[0] + b * vy[1] + c * vy[2] + d * vy[3] != cy) continue;
                    std::array<int, 4> sol{a, b, c, d};
                    if (!best || sol < *best) best = sol;
                }
    return best;
}

std::array<int, 4> to_counts(const std::vector<std::pair<IndexVector, int>>& sol) {
    std::array<int, 4> counts{0, 0, 0, 0};
    for (const auto& [iv, c] : sol) {
        if (iv.coords[0] == 3) counts[0] = c;
        else if (iv.coords[0] == 2) counts[1] = c;
        else if (iv.coords[0] == 1) counts[2] = c;
        else counts[3] = c;
    }
    return counts;
}

// ---------------------------------------------------------------------------

ClaimResult claim_extremal_regression(ClaimScale scale) {
    auto t0 = Clock::now();
    Check chk;
    std::vector<int> h0_sizes{8, 10, 12};
    std::vector<int> h1_sizes{9, 12};
    if (scale == ClaimScale::medium) {
        h0_sizes.push_back(14);
        h0_sizes.push_back(16);
        h1_sizes.push_back(15);
    }
    for (int n : h0_sizes) {
        auto [g, part] = gen_h0(n);
        chk.expect(g.min_codegree() == (n + 1) / 2 - 2,
                   "H0(" + std::to_string(n) + "): delta2 != ceil(n/2)-2");
        chk.expect(tight_components(g).count == 2,
                   "H0(" + std::to_string(n) + "): components != 2");
        if (n <= 16) {
            chk.expect(!has_hamilton_tight_path(g),
                       "H0(" + std::to_string(n) + "): unexpected Hamilton tight path");
            CoverResult res = exact_min_cover(g);
            chk.expect(res.status == CoverStatus::optimal && res.optimum == 2,
                       "H0(" + std::to_string(n) + "): exact_min_cover != 2");
            chk.expect(static_cast<bool>(validate_cover(g, res.witness, true)),
                       "H0(" + std::to_string(n) + "): witness invalid");
        }
    }
    for (int n : h1_sizes) {
        auto [g, part] = gen_h1(n);
        chk.expect(tight_components(g).count == 3,
                   "H1(" + std::to_string(n) + "): components != 3");
        chk.expect(g.min_codegree() == n / 3 - 1,
                   "H1(" + std::to_string(n) + "): delta2 != n/3-1");
        if (n <= 15) {
            CoverResult res = exact_min_cover(g);
            chk.expect(res.status == CoverStatus::optimal && res.optimum == 3,
                       "H1(" + std::to_string(n) + "): exact_min_cover != 3");
        }
    }
    return finish(1, "extremal regression (H0, H1)", chk, t0,
                  "delta2, components, Hamiltonicity and cover optima all match");
}

ClaimResult claim_oracle_equivalence(int threads) {
    auto t0 = Clock::now();
    Check chk;

    // all 1024 graphs on 5 vertices, both policies
    std::vector<Triple> base;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            for (int w = v + 1; w < 5; ++w) base.push_back({u, v, w});
    std::atomic<long long> disagreements{0};
    parallel_for_indexed(1024, threads, [&](std::size_t mask) {
        std::vector<Triple> triples;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (1ull << i)) triples.push_back(base[i]);
        ThreeGraph g(5, triples);
        for (bool allow_short : {true, false}) {
            CoverOptions opts;
            opts.allow_short = allow_short;
            CoverResult dp = exact_min_cover(g, opts);
            CoverResult bf = brute_force_min_cover(g, allow_short);
            bool same_status = dp.status == bf.status;
            bool same_opt = dp.status != CoverStatus::optimal || dp.optimum == bf.optimum;
            if (!same_status || !same_opt) ++disagreements;
            if (dp.status == CoverStatus::optimal &&
                !validate_cover(g, dp.witness, allow_short).ok)
                ++disagreements;
        }
        if (has_hamilton_tight_path(g) != hamilton_path_by_permutations(g)) ++disagreements;
    });
    chk.expect(disagreements == 0, "n=5 exhaustive: " + std::to_string(disagreements) +
                                       " oracle disagreements");

    // 500 seeded random graphs at n=7
    std::atomic<long long> disagreements7{0};
    parallel_for_indexed(500, threads, [&](std::size_t i) {
        ThreeGraph g = random_edge_subset(7, mix_seed(0xc1a11, i));
        for (bool allow_short : {true, false}) {
            CoverOptions opts;
            opts.allow_short = allow_short;
            CoverResult dp = exact_min_cover(g, opts);
            CoverResult bf = brute_force_min_cover(g, allow_short);
            if (dp.status != bf.status ||
                (dp.status == CoverStatus::optimal && dp.optimum != bf.optimum))
                ++disagreements7;
        }
        if (has_hamilton_tight_path(g) != hamilton_path_by_permutations(g)) ++disagreements7;
    });
    chk.expect(disagreements7 == 0,
               "n=7 random: " + std::to_string(disagreements7) + " oracle disagreements");
    return finish(2, "oracle equivalence (DP vs brute force vs permutations)", chk, t0,
                  "1024 exhaustive n=5 graphs and 500 random n=7 graphs, zero disagreements");
}

ClaimResult claim_two_component_lemma(int threads) {
    auto t0 = Clock::now();
    Check chk;
    const int instances = 500;
    std::atomic<long long> violations{0}, predicate_misses{0};
    parallel_for_indexed(instances, threads, [&](std::size_t i) {
        int n = 9 + static_cast<int>(i % 10);  // 9..18
        int mu = (n + 2) / 3;
        int zp_cap = std::min<int>(static_cast<int>(0.05 * (n * (n - 1) / 2)),
                                   (n - 2) - mu);
        int zp = zp_cap > 0 ? static_cast<int>(i % (zp_cap + 1)) : 0;
        ThreeGraph g = gen_random_strong_dense(n, zp, mix_seed(0x2c0, i));
        // verify the predicate instead of trusting the sampler
        int zero_pairs = 0;
        bool predicate = true;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int d = g.codegree(u, v);
                if (d == 0)
                    ++zero_pairs;
                else if (d < mu)
                    predicate = false;
            }
        if (!predicate || zero_pairs > 0.05 * (n * (n - 1) / 2)) {
            ++predicate_misses;
            return;
        }
        if (tight_components(g).count > 2) ++violations;
    });
    chk.expect(predicate_misses == 0,
               std::to_string(predicate_misses) + " instances missed the density predicate");
    chk.expect(violations == 0,
               std::to_string(violations) + " strong-dense instances with > 2 tight components");
    return finish(3, "two-component property on strong-dense instances", chk, t0,
                  std::to_string(instances) + " instances, n in [9,18], all with <= 2 components");
}

ClaimResult claim_k4_minus_property(int threads) {
    auto t0 = Clock::now();
    Check chk;
    const int instances = 200;
    std::atomic<long long> violations{0};
    parallel_for_indexed(instances, threads, [&](std::size_t i) {
        int n = 9 + static_cast<int>(i % 7);  // 9..15
        int delta = n / 3 + 1;
        ThreeGraph g = gen_random_min_codegree(n, delta, mix_seed(0x4b4, i));
        for (const Triple& e : g.edges())
            if (!find_k4_minus_containing(g, e)) {
                ++violations;
                break;
            }
    });
    chk.expect(violations == 0,
               std::to_string(violations) + " graphs with an edge in no K4-minus");

    auto [neg, part] = gen_complete_3partite(2, 2, 2);
    int copies = 0;
    for (const Triple& e : neg.edges())
        if (find_k4_minus_containing(neg, e)) ++copies;
    chk.expect(copies == 0, "complete 3-partite (2,2,2) negative control found a K4-minus");
    return finish(4, "K4-minus property at delta2 >= floor(n/3)+1", chk, t0,
                  "200 random graphs, every edge in a K4-minus; negative control clean");
}

ClaimResult claim_orientation_obstruction() {
    auto t0 = Clock::now();
    Check chk;
    auto [g, part] = gen_complete_3partite(2, 2, 2);
    const auto& v1 = part.part(0);
    const auto& v2 = part.part(1);
    VertexSet forbidden(g.vertex_count());
    int refuted = 0, total = 0;
    for (int a : v1)
        for (int b : v1) {
            if (a == b) continue;
            for (int c : v2)
                for (int d : v2) {
                    if (c == d) continue;
                    ++total;
                    PathSearchResult res =
                        find_tight_path_between(g, {a, c}, {d, b}, g.vertex_count(), forbidden);
                    if (res.verdict == SearchVerdict::proved_absent) ++refuted;
                }
        }
    chk.expect(refuted == total, "only " + std::to_string(refuted) + "/" + std::to_string(total) +
                                     " orientations exhaustively refuted");
    return finish(5, "complete 3-partite orientation obstruction", chk, t0,
                  "all v1v2...u2u1 orientations exhaustively refuted at n=6");
}

ClaimResult claim_divisibility_barrier() {
    auto t0 = Clock::now();
    Check chk;
    auto [g, part] = gen_h0_prime(20, 10);
    VertexSet forbidden(g.vertex_count());

    AbsorberSearchResult in_y = find_simple_absorber(g, {10, 11, 12}, forbidden);
    chk.expect(!in_y.absorber && in_y.fail_stage == AbsorberFailStage::p4_stage,
               std::string("S in Y: expected the P4-stage diagnostic, got ") +
                   to_string(in_y.fail_stage));
    chk.expect(in_y.exhaustive, "S in Y: verdict was not exhaustive");

    // As specified this half asserts success at (20,10). The 19-vertex gadget
    // plus S needs 22 vertices, and the parity of H0' forces all three witness
    // frames into Y, which has only 10; the assertion is kept literal and the
    // measured diagnostic is reported alongside a feasible-scale run.
    AbsorberSearchResult in_x = find_simple_absorber(g, {0, 1, 2}, forbidden);
    chk.expect(static_cast<bool>(in_x.absorber),
               std::string("S in X at (20,10): not found (") + to_string(in_x.fail_stage) +
                   "); the gadget plus S needs 22 > 20 vertices and 12 Y-frame vertices > |Y| = 10");

    auto [g26, part26] = gen_h0_prime(26, 13);
    VertexSet forbidden26(g26.vertex_count());
    AbsorberSearchResult in_x26 = find_simple_absorber(g26, {0, 1, 2}, forbidden26);
    if (in_x26.absorber)
        chk.note("supplementary: S in X succeeds at (26,13) where the gadget fits");
    else
        chk.expect(false, "supplementary S in X at (26,13) also failed: " +
                              std::string(to_string(in_x26.fail_stage)));
    return finish(6, "divisibility barrier on H0'", chk, t0,
                  "P4-stage diagnostic for S in Y; S in X succeeds");
}

ClaimResult claim_index_systems() {
    auto t0 = Clock::now();
    Check chk;
    static const IndexVector vec30{{3, 0}}, vec21{{2, 1}}, vec12{{1, 2}}, vec03{{0, 3}};
    const std::array<IndexVector, 4> all{vec30, vec21, vec12, vec03};
    long long mismatches = 0, cases = 0;
    for (int total = 0; total <= 30; total += 3)
        for (int cx = 0; cx <= total; ++cx) {
            int cy = total - cx;
            for (int subset = 0; subset < 16; ++subset) {
                std::vector<IndexVector> allowed;
                std::array<bool, 4> allow{};
                for (int b = 0; b < 4; ++b)
                    if (subset & (1 << b)) {
                        allowed.push_back(all[b]);
                        allow[b] = true;
                    }
                ++cases;
                auto mine = solve_index_system(cx, cy, allowed);
                auto oracle = index_system_oracle(cx, cy, allow);
                if (mine.has_value() != oracle.has_value())
                    ++mismatches;
                else if (mine && to_counts(*mine) != *oracle)
                    ++mismatches;
            }
        }
    chk.expect(mismatches == 0, std::to_string(mismatches) + "/" + std::to_string(cases) +
                                    " index-system cases disagree with the oracle");
    return finish(7, "index systems vs exhaustive oracle", chk, t0,
                  std::to_string(cases) + " cases up to count 30, exact agreement");
}

ClaimResult claim_deficiency(int threads) {
    auto t0 = Clock::now();
    Check chk;
    auto [h0, part] = gen_h0(8);
    auto d_h0 = min_deficiency(h0, 3);
    chk.expect(d_h0 && *d_h0 == 2, "min_deficiency(H0(8), 3) != 2");
    auto d_complete = min_deficiency(gen_complete(6), 2);
    chk.expect(d_complete && *d_complete == 0, "min_deficiency(K6) != 0");

    std::atomic<long long> mismatches{0};
    parallel_for_indexed(100, threads, [&](std::size_t i) {
        int n = 6 + static_cast<int>(i % 4);  // 6..9
        ThreeGraph g = random_edge_subset(n, mix_seed(0xdef, i));
        auto d = min_deficiency(g, 3);
        if (!d) return;
        auto lhs = min_deficiency(join_omni(g, 1), 2);
        if (!lhs || *lhs != std::max(*d - 1, 0)) ++mismatches;
    });
    chk.expect(mismatches == 0,
               std::to_string(mismatches) + " monotone-identity violations under join_omni");
    return finish(8, "deficiency values and join_omni monotonicity", chk, t0,
                  "H0(8) -> 2, complete -> 0, monotone identity on 100 random instances");
}

ClaimResult claim_pipeline_success(int threads, ClaimScale scale) {
    auto t0 = Clock::now();
    Check chk;
    const int runs = scale == ClaimScale::medium ? 50 : 50;
    const int n = 60;
    const int delta = static_cast<int>((1.0 / 3.0 + 0.10) * n) + 1;  // 26

    std::vector<int> success(runs, 0), validated(runs, 0);
    parallel_for_indexed(runs, threads, [&](std::size_t i) {
        ThreeGraph g = gen_random_min_codegree(n, delta, mix_seed(0x9199, i));
        PipelineConfig cfg;
        cfg.seed = mix_seed(0x9199cf9, i);
        auto [cover, rep] = heuristic_two_path_cover(g, cfg);
        if (rep.success && cover) {
            success[i] = 1;
            CoverValidation val = validate_cover(g, *cover, true);
            if (val.ok && cover->paths.size() <= 2) validated[i] = 1;
        }
    });
    int succ = std::accumulate(success.begin(), success.end(), 0);
    int valid = std::accumulate(validated.begin(), validated.end(), 0);
    chk.expect(succ >= (runs * 8) / 10, "success rate " + std::to_string(succ) + "/" +
                                            std::to_string(runs) + " below 80%");
    chk.expect(valid == succ, "a returned cover failed validation");

    const int h1_runs = 10;
    std::vector<int> h1_component_fail(h1_runs, 0);
    parallel_for_indexed(h1_runs, threads, [&](std::size_t i) {
        auto [g, part] = gen_h1(60);
        PipelineConfig cfg;
        cfg.seed = mix_seed(0x9199aa, i);
        auto [cover, rep] = heuristic_two_path_cover(g, cfg);
        if (!rep.success && rep.component_obstruction) h1_component_fail[i] = 1;
    });
    int h1_ok = std::accumulate(h1_component_fail.begin(), h1_component_fail.end(), 0);
    chk.expect(h1_ok == h1_runs, "H1(60): only " + std::to_string(h1_ok) + "/" +
                                     std::to_string(h1_runs) +
                                     " runs failed with the component diagnostic");
    return finish(9, "pipeline success rate at n=60", chk, t0,
                  std::to_string(succ) + "/" + std::to_string(runs) +
                      " random runs succeeded with validated covers; all H1(60) runs failed "
                      "with the component diagnostic");
}

ClaimResult claim_counterexample_search(int threads) {
    auto t0 = Clock::now();
    Check chk;

    CounterexampleParams params;
    params.n = 9;
    params.samples = 10000;
    params.seed = 0xce5;
    params.threads = threads;
    CounterexampleOutcome out = search_counterexample(params);
    chk.expect(out.hits == 0, std::to_string(out.hits) +
                                  " covers needing >= 3 paths at delta2 >= 3 (certificates in "
                                  "report)");

    // planted H1(9) has delta2 = 2: filtered at 3, flagged at 2
    auto [h1, part] = gen_h1(9);
    CounterexampleParams strict = params;
    strict.samples = 50;
    strict.planted.push_back(h1);
    CounterexampleOutcome strict_out = search_counterexample(strict);
    chk.expect(strict_out.filtered_out >= 1, "planted H1(9) was not excluded by the filter");
    chk.expect(strict_out.hits == 0, "strict filter run unexpectedly produced hits");

    CounterexampleParams relaxed = strict;
    relaxed.delta = 2;  // relax by one: H1(9) passes the filter and is sharp
    CounterexampleOutcome relaxed_out = search_counterexample(relaxed);
    chk.expect(relaxed_out.hits >= 1, "relaxed filter did not flag the planted H1(9)");
    return finish(10, "counterexample search at n=9", chk, t0,
                  "10^4 samples, zero hits; planted H1(9) filtered at delta 3 and flagged at 2");
}

}  // namespace

CounterexampleOutcome search_counterexample(const CounterexampleParams& params) {
    if (params.n > 16) throw budget_exceeded_error("search-counterexample: n above solver cutoff");
    CounterexampleOutcome out;
    out.delta_used = params.delta >= 0 ? params.delta : (params.n + 2) / 3;

    const std::size_t total = static_cast<std::size_t>(params.samples) + params.planted.size();
    std::vector<int> hit(total, 0), filtered(total, 0);
    std::vector<nlohmann::json> certs(total);

    parallel_for_indexed(total, params.threads, [&](std::size_t i) {
        ThreeGraph g = i < static_cast<std::size_t>(params.samples)
                           ? gen_random_min_codegree(params.n, out.delta_used,
                                                     mix_seed(params.seed, i))
                           : params.planted[i - params.samples];
        // the filter re-checks sampled instances rather than trusting them
        if (g.vertex_count() < 2 || g.min_codegree() < out.delta_used) {
            filtered[i] = 1;
            return;
        }
        CoverResult res = exact_min_cover(g);
        if (res.status == CoverStatus::optimal && res.optimum >= 3) {
            if (g.vertex_count() <= 9) {
                CoverResult confirm = brute_force_min_cover(g, true);
                if (confirm.optimum != res.optimum) return;  // never expected; drop unconfirmed
            }
            hit[i] = 1;
            std::ostringstream edges;
            write_graph(g, edges);
            certs[i] = {{"sample_index", i},
                        {"optimum", res.optimum},
                        {"witness", to_json(res.witness)},
                        {"edge_list", edges.str()},
                        {"planted", i >= static_cast<std::size_t>(params.samples)}};
        }
    });

    out.sampled = params.samples;
    for (std::size_t i = 0; i < total; ++i) {
        out.filtered_out += filtered[i];
        out.hits += hit[i];
        if (hit[i]) out.certificates.push_back(certs[i]);
    }
    return out;
}

std::vector<ClaimResult> run_acceptance_claims(ClaimScale scale, int threads) {
    std::vector<ClaimResult> results;
    results.push_back(claim_extremal_regression(scale));
    results.push_back(claim_oracle_equivalence(threads));
    results.push_back(claim_two_component_lemma(threads));
    results.push_back(claim_k4_minus_property(threads));
    results.push_back(claim_orientation_obstruction());
    results.push_back(claim_divisibility_barrier());
    results.push_back(claim_index_systems());
    results.push_back(claim_deficiency(threads));
    results.push_back(claim_pipeline_success(threads, scale));
    results.push_back(claim_counterexample_search(threads));
    return results;
}

}  // namespace tightpath
