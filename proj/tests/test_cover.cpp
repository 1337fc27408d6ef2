#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "tightpath/cover.hpp"
#include "tightpath/tight_structure.hpp"
#include "tightpath/generators.hpp"
#include "tightpath/util.hpp"

using namespace tightpath;

namespace {

ThreeGraph random_subset_graph(int n, uint64_t seed, double density) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(density);
    std::vector<Triple> triples;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                if (keep(rng)) triples.push_back({u, v, w});
    return ThreeGraph(n, triples);
}

}  // namespace

TEST_SUITE_BEGIN("cover");

TEST_CASE("validate_cover") {
    ThreeGraph k5 = gen_complete(5);
    PathCover single{{TightPath{{0, 1, 2, 3, 4}}}};
    CHECK(validate_cover(k5, single, true).ok);
    CHECK(validate_cover(k5, single, false).ok);

    auto [h0, part] = gen_h0(8);
    PathCover xy{{TightPath{part.part(0)}, TightPath{part.part(1)}}};
    CHECK(validate_cover(h0, xy, true).ok);  // all-X and all-Y triples are edges

    PathCover overlapping{{TightPath{{0, 1, 2, 3}}, TightPath{{3, 4}}}};
    CoverValidation v = validate_cover(k5, overlapping, true);
    CHECK(!v.ok);
    bool mentions_disjoint = false;
    for (const auto& s : v.violations) mentions_disjoint |= s.find("disjoint") != std::string::npos;
    CHECK(mentions_disjoint);

    PathCover missing{{TightPath{{0, 1, 2}}}};
    CHECK(!validate_cover(k5, missing, true).ok);
    PathCover short_paths{{TightPath{{0, 1, 2}}, TightPath{{3, 4}}}};
    CHECK(validate_cover(k5, short_paths, true).ok);
    CHECK(!validate_cover(k5, short_paths, false).ok);
    PathCover not_tight{{TightPath{{0, 1, 2, 3, 4}}}};
    CHECK(!validate_cover(ThreeGraph(5, {}), not_tight, true).ok);
}

TEST_CASE("path_realizable_masks") {
    // empty graph: exactly the subsets of size <= 2
    std::vector<uint32_t> masks = path_realizable_masks(ThreeGraph(4, {}), true);
    std::set<uint32_t> set(masks.begin(), masks.end());
    CHECK(set.size() == 4 + 6);
    for (uint32_t m : masks) CHECK(std::popcount(m) <= 2);

    // complete K4: all 15 nonempty subsets
    CHECK(path_realizable_masks(gen_complete(4), true).size() == 15);

    // policy: short masks excluded when disallowed
    std::vector<uint32_t> strict = path_realizable_masks(gen_complete(4), false);
    for (uint32_t m : strict) CHECK(std::popcount(m) >= 3);
    CHECK(strict.size() == 5);  // the 4 triples and the full set

    // H1(9): every realizable mask of >= 3 vertices stays inside one
    // component's two-part pattern
    auto [h1, part] = gen_h1(9);
    uint32_t parts[3] = {0, 0, 0};
    for (int v = 0; v < 9; ++v) parts[part.part_of(v)] |= 1u << v;
    for (uint32_t m : path_realizable_masks(h1, true)) {
        if (std::popcount(m) < 3) continue;
        bool inside = false;
        for (int i = 0; i < 3; ++i)
            inside = inside || (m & ~(parts[i] | parts[(i + 1) % 3])) == 0;
        CHECK(inside);
    }
}

TEST_CASE("exact_min_cover on the named families") {
    CHECK(exact_min_cover(gen_complete(6)).optimum == 1);

    auto [h1, p1] = gen_h1(9);
    CoverResult r1 = exact_min_cover(h1);
    CHECK(r1.optimum == 3);
    CHECK(r1.proved_optimal);
    CHECK(validate_cover(h1, r1.witness, true).ok);

    auto [h0, p0] = gen_h0(10);
    CoverResult r0 = exact_min_cover(h0);
    CHECK(r0.optimum == 2);
    CHECK(validate_cover(h0, r0.witness, true).ok);

    // empty graph, allow_short: ceil(n/2) two-vertex paths
    CoverResult empty4 = exact_min_cover(ThreeGraph(4, {}));
    CHECK(empty4.optimum == 2);
    // allow_short = false: infeasible without edges
    CoverOptions strict;
    strict.allow_short = false;
    CHECK(exact_min_cover(ThreeGraph(4, {}), strict).status == CoverStatus::infeasible);

    // k_cap reporting
    CoverOptions capped;
    capped.k_cap = 2;
    CoverResult h1_capped = exact_min_cover(h1, capped);
    CHECK(h1_capped.status == CoverStatus::cap_exceeded);
    CHECK(h1_capped.optimum == 3);

    CoverOptions tiny;
    tiny.dp_cutoff = 8;
    CHECK_THROWS_AS(exact_min_cover(gen_complete(9), tiny), budget_exceeded_error);
}

TEST_CASE("brute force oracle agrees with the DP") {
    // a slice of the n=5 exhaustive corpus (the full 1024 runs in acceptance)
    std::vector<Triple> base;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v)
            for (int w = v + 1; w < 5; ++w) base.push_back({u, v, w});
    for (uint32_t mask = 0; mask < 1024; mask += 7) {
        std::vector<Triple> triples;
        for (std::size_t i = 0; i < base.size(); ++i)
            if (mask & (1u << i)) triples.push_back(base[i]);
        ThreeGraph g(5, triples);
        for (bool allow_short : {true, false}) {
            CAPTURE(mask);
            CAPTURE(allow_short);
            CoverOptions opts;
            opts.allow_short = allow_short;
            CoverResult dp = exact_min_cover(g, opts);
            CoverResult bf = brute_force_min_cover(g, allow_short);
            CHECK(dp.status == bf.status);
            if (dp.status == CoverStatus::optimal) CHECK(dp.optimum == bf.optimum);
        }
    }

    CHECK(brute_force_min_cover(gen_h1(9).graph, true).optimum == 3);
    CHECK(brute_force_min_cover(ThreeGraph(4, {}), true).optimum == 2);
    CHECK_THROWS_AS(brute_force_min_cover(gen_complete(10), true), budget_exceeded_error);
}

TEST_CASE("monotonicity: adding an edge never increases the optimum") {
    std::mt19937_64 rng(99);
    int checked = 0;
    for (uint64_t seed = 0; checked < 200; ++seed) {
        int n = 6 + static_cast<int>(seed % 4);
        ThreeGraph g = random_subset_graph(n, mix_seed(0x303, seed), 0.3);
        // pick a random non-edge
        std::vector<Triple> non_edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                for (int w = v + 1; w < n; ++w)
                    if (!g.has_edge(u, v, w)) non_edges.push_back({u, v, w});
        if (non_edges.empty()) continue;
        Triple add = non_edges[rng() % non_edges.size()];
        std::vector<Triple> bigger = g.edges();
        bigger.push_back(add);
        ThreeGraph g2(n, bigger);
        CHECK(exact_min_cover(g2).optimum <= exact_min_cover(g).optimum);
        ++checked;
    }
}

TEST_CASE("component count lower-bounds the strict cover on H1") {
    for (int n : {9, 12}) {
        auto [h1, part] = gen_h1(n);
        CoverOptions strict;
        strict.allow_short = false;
        CoverResult res = exact_min_cover(h1, strict);
        CHECK(res.status == CoverStatus::optimal);
        CHECK(res.optimum >= tight_components(h1).count);
        CHECK(res.optimum == 3);
    }
}

TEST_CASE("min_deficiency") {
    auto [h0, part] = gen_h0(8);
    auto t = min_deficiency(h0, 3);
    REQUIRE(t.has_value());
    CHECK(*t == 2);

    CHECK(min_deficiency(gen_complete(6), 2) == 0);
    CHECK(!min_deficiency(ThreeGraph(5, {}), 2).has_value());
    CHECK_THROWS_AS(min_deficiency(gen_complete(17), 5), budget_exceeded_error);
}

TEST_CASE("deficiency monotone under join_omni") {
    int both_defined = 0;
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 6 + static_cast<int>(seed % 3);
        ThreeGraph g = random_subset_graph(n, mix_seed(0xdef0, seed), 0.35);
        auto d = min_deficiency(g, 3);
        if (!d) continue;
        auto lhs = min_deficiency(join_omni(g, 1), 2);
        REQUIRE(lhs.has_value());
        CHECK(*lhs == std::max(*d - 1, 0));
        ++both_defined;
    }
    CHECK(both_defined > 5);
}

TEST_SUITE_END();
