#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "tightpath/absorbing.hpp"
#include "tightpath/generators.hpp"
#include "tightpath/util.hpp"

using namespace tightpath;

namespace {

// brute-force witness oracle: every ordered 4-tuple, checked by edge lookups
long long witness_count_oracle(const ThreeGraph& g, int u, int v) {
    const int n = g.vertex_count();
    long long count = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    std::set<int> s{a, b, c, d, u, v};
                    if (s.size() != 6) continue;
                    bool path_u = g.has_edge(a, b, u) && g.has_edge(b, u, c) && g.has_edge(u, c, d);
                    bool path_v = g.has_edge(a, b, v) && g.has_edge(b, v, c) && g.has_edge(v, c, d);
                    if (path_u && path_v) ++count;
                }
    return count;
}

std::vector<std::pair<IndexVector, int>> index_multiset(std::vector<std::pair<int, int>> entries) {
    std::vector<std::pair<IndexVector, int>> out;
    for (auto& [x, count] : entries) out.push_back({IndexVector{{x, 3 - x}}, count});
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("absorbing");

TEST_CASE("witness counts") {
    ThreeGraph k8 = gen_complete(8);
    CHECK(count_reach_witnesses(k8, 0, 1, 1000000) == 360);  // 6*5*4*3
    CHECK(count_reach_witnesses(k8, 0, 1, 100) == 100);      // early exit at cap
    CHECK(count_reach_witnesses(ThreeGraph(8, {}), 0, 1, 10) == 0);
    CHECK_THROWS_AS(count_reach_witnesses(k8, 2, 2, 10), std::invalid_argument);

    for (uint64_t seed = 0; seed < 6; ++seed) {
        ThreeGraph g = gen_random_min_codegree(8, 3, seed);
        for (auto [u, v] : {std::pair{0, 1}, {2, 5}, {3, 7}}) {
            CAPTURE(u);
            CAPTURE(v);
            long long mine = count_reach_witnesses(g, u, v, 1 << 20);
            CHECK(mine == witness_count_oracle(g, u, v));
            CHECK(mine == count_reach_witnesses(g, v, u, 1 << 20));  // symmetry
        }
    }
}

TEST_CASE("witness counts on the parity barrier") {
    auto [g, part] = gen_h0_prime(10, 5);
    int y0 = part.part(1)[0], y1 = part.part(1)[1];
    // pairs inside Y are reachable even though Y spans no edge: frames route
    // through X in a forced pattern
    CHECK(count_reach_witnesses(g, y0, y1, 1 << 20) > 0);
    int x0 = part.part(0)[0], x1 = part.part(0)[1];
    CHECK(count_reach_witnesses(g, x0, x1, 1 << 20) > 0);
    // cross pairs are never reachable: a frame would need an edge with even
    // intersection with X
    CHECK(count_reach_witnesses(g, x0, y0, 1 << 20) == 0);
}

TEST_CASE("witness counts are monotone under edge addition") {
    std::mt19937_64 rng(5);
    for (uint64_t seed = 0; seed < 8; ++seed) {
        ThreeGraph g = gen_random_min_codegree(9, 2, seed, /*target_edges=*/40);
        std::vector<Triple> non_edges;
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                for (int w = v + 1; w < 9; ++w)
                    if (!g.has_edge(u, v, w)) non_edges.push_back({u, v, w});
        if (non_edges.empty()) continue;
        std::vector<Triple> bigger = g.edges();
        bigger.push_back(non_edges[rng() % non_edges.size()]);
        ThreeGraph g2(9, bigger);
        CHECK(count_reach_witnesses(g2, 0, 1, 1 << 20) >= count_reach_witnesses(g, 0, 1, 1 << 20));
    }
}

TEST_CASE("reachability graph and partition") {
    ThreeGraph k8 = gen_complete(8);
    ReachabilityGraph one = reachability_graph(k8, 1);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) CHECK(one.adjacent(u, v));
    ReachabilityGraph over = reachability_graph(k8, 361);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) CHECK(!over.adjacent(u, v));

    CHECK(reachability_partition(gen_complete(9), 1).partition.part_count() == 1);
    ReachPartition singletons = reachability_partition(ThreeGraph(5, {}), 1);
    CHECK(singletons.partition.part_count() == 5);

    // the divisibility barrier keeps X and Y apart but each side together
    auto [hp, part] = gen_h0_prime(12, 6);
    ReachPartition rp = reachability_partition(hp, 1);
    CHECK(rp.partition.part_count() <= 2);

    // greedy merge to a target part count
    ReachPartition merged = reachability_partition(ThreeGraph(5, {}), 1, 0.5);
    CHECK(merged.partition.part_count() <= 2);
}

TEST_CASE("solve_index_system examples and errors") {
    auto sol = solve_index_system(4, 5, {IndexVector{{2, 1}}, IndexVector{{1, 2}}});
    REQUIRE(sol.has_value());
    CHECK(*sol == index_multiset({{2, 1}, {1, 2}}));  // (2,1) x1 and (1,2) x2

    auto sol2 = solve_index_system(4, 5, {IndexVector{{2, 1}}, IndexVector{{0, 3}}});
    REQUIRE(sol2.has_value());
    CHECK(*sol2 == index_multiset({{2, 2}, {0, 1}}));  // (2,1) x2 and (0,3) x1

    CHECK(!solve_index_system(5, 4, {IndexVector{{0, 3}}}).has_value());
    CHECK_THROWS_AS(solve_index_system(1, 1, {IndexVector{{2, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(solve_index_system(3, 0, {IndexVector{{1, 1}}}), std::invalid_argument);

    // soundness: any returned multiset re-sums to the requested counts
    for (int cx = 0; cx <= 12; ++cx)
        for (int cy = 0; (cx + cy) <= 12; ++cy) {
            if ((cx + cy) % 3) continue;
            auto s = solve_index_system(cx, cy,
                                        {IndexVector{{3, 0}}, IndexVector{{2, 1}},
                                         IndexVector{{1, 2}}, IndexVector{{0, 3}}});
            REQUIRE(s.has_value());
            int sx = 0, sy = 0;
            for (auto& [iv, c] : *s) {
                sx += iv.coords[0] * c;
                sy += iv.coords[1] * c;
            }
            CHECK(sx == cx);
            CHECK(sy == cy);
        }
}

TEST_CASE("absorbable_index_vectors") {
    auto [h0, part] = gen_h0(12);
    std::vector<IndexVector> got = absorbable_index_vectors(h0, part, 1);
    std::vector<IndexVector> expect{IndexVector{{0, 3}}, IndexVector{{2, 1}}, IndexVector{{3, 0}}};
    std::sort(got.begin(), got.end());
    CHECK(got == expect);  // H0 lacks exactly the (1,2) triples

    auto complete = gen_complete(8);
    VertexPartition balanced({{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(absorbable_index_vectors(complete, balanced, 1).size() == 4);
    CHECK(absorbable_index_vectors(ThreeGraph(6, {}), balanced, 1).empty());
}

TEST_CASE("coverage guarantee for balanced partitions at high codegree") {
    // at delta2 >= (1/3+0.05)n each side of the case analysis keeps at least
    // one absorbable index available
    const int n = 30;
    const long long min_edges = static_cast<long long>(0.01 * n * n * n);
    for (uint64_t seed = 0; seed < 5; ++seed) {
        ThreeGraph g = gen_random_min_codegree(n, static_cast<int>(n / 3.0 + 0.05 * n) + 1,
                                               mix_seed(0xabc, seed));
        for (int x_size : {14, 15, 16}) {
            std::vector<int> xs, ys;
            for (int v = 0; v < n; ++v) (v < x_size ? xs : ys).push_back(v);
            VertexPartition part({xs, ys});
            std::vector<IndexVector> iv = absorbable_index_vectors(g, part, min_edges);
            auto has = [&](int a, int b) {
                return std::find(iv.begin(), iv.end(), IndexVector{{a, b}}) != iv.end();
            };
            CAPTURE(seed);
            CAPTURE(x_size);
            CHECK((has(3, 0) || has(2, 1)));
            CHECK((has(1, 2) || has(2, 1)));
            CHECK((has(1, 2) || has(0, 3)));
        }
    }
}

TEST_CASE("simple absorber on a complete graph, plus verification") {
    ThreeGraph k25 = gen_complete(25);
    VertexSet none(25);
    AbsorberSearchResult res = find_simple_absorber(k25, {0, 1, 2}, none);
    REQUIRE(res.absorber.has_value());
    CHECK(res.fail_stage == AbsorberFailStage::none);
    AbsorberCheck chk = verify_absorber(k25, *res.absorber);
    CHECK(chk.ok);
    CHECK(res.absorber->gadget.size() == 4);
    std::set<int> gadget_vertices;
    for (const TightPath& p : res.absorber->gadget)
        gadget_vertices.insert(p.vertices.begin(), p.vertices.end());
    CHECK(gadget_vertices.size() == 19);

    VertexSet block(25);
    block.set(0);
    CHECK_THROWS_AS(find_simple_absorber(k25, {0, 1, 2}, block), std::invalid_argument);
}

TEST_CASE("verify_absorber catches corruption") {
    ThreeGraph k25 = gen_complete(25);
    VertexSet none(25);
    Absorber a = *find_simple_absorber(k25, {0, 1, 2}, none).absorber;

    // delete one window edge of the gadget from the host graph
    std::vector<Triple> edges = gen_complete(25).edges();
    const auto& p = a.gadget[0].vertices;
    Triple victim = sorted_triple(p[0], p[1], p[2]);
    edges.erase(std::remove(edges.begin(), edges.end(), victim), edges.end());
    ThreeGraph damaged(25, edges);
    CHECK(!verify_absorber(damaged, a).ok);

    // drop a replacement vertex: vertex-set equation breaks
    Absorber b = a;
    b.replacement[0].vertices[2] = b.gadget[0].vertices[2];
    AbsorberCheck chk = verify_absorber(k25, b);
    CHECK(!chk.ok);
    bool mentions_equation = false;
    for (const auto& s : chk.violations)
        mentions_equation |= s.find("vertex-set equation") != std::string::npos;
    CHECK(mentions_equation);
}

TEST_CASE("divisibility barrier: absorbers in H0'") {
    auto [g, part] = gen_h0_prime(20, 10);
    VertexSet none(20);

    // S inside Y: partners exist but no partner triple is an edge
    AbsorberSearchResult in_y = find_simple_absorber(g, {10, 11, 12}, none);
    CHECK(!in_y.absorber.has_value());
    CHECK(in_y.fail_stage == AbsorberFailStage::p4_stage);
    CHECK(in_y.exhaustive);

    // at a scale where the 22 needed vertices fit, the X side assembles
    auto [g26, part26] = gen_h0_prime(26, 13);
    VertexSet none26(26);
    AbsorberSearchResult in_x = find_simple_absorber(g26, {0, 1, 2}, none26);
    REQUIRE(in_x.absorber.has_value());
    CHECK(verify_absorber(g26, *in_x.absorber).ok);
    AbsorberSearchResult y26 = find_simple_absorber(g26, {13, 14, 15}, none26);
    CHECK(!y26.absorber.has_value());
    CHECK(y26.fail_stage == AbsorberFailStage::p4_stage);
}

TEST_CASE("lattice absorber") {
    ThreeGraph k25 = gen_complete(25);
    std::vector<int> all(25);
    std::iota(all.begin(), all.end(), 0);
    VertexPartition trivial({all});
    VertexSet none(25);
    AbsorberSearchResult res = find_lattice_absorber(k25, trivial, {0, 1, 2}, none);
    REQUIRE(res.absorber.has_value());
    CHECK(verify_absorber(k25, *res.absorber).ok);

    // no edge with the index vector of S: instant refusal
    auto [h1, part1] = gen_h1(30);
    VertexSet none30(30);
    AbsorberSearchResult bad =
        find_lattice_absorber(h1, part1, {0, 10, 20}, none30);  // index (1,1,1)
    CHECK(!bad.absorber.has_value());
    CHECK(bad.fail_stage == AbsorberFailStage::no_compatible_edge);
    CHECK(bad.exhaustive);

    // H0(40), S inside the dense closed side
    auto [h0, part0] = gen_h0(40);
    VertexSet none40(40);
    AbsorberSearchOptions opts;
    opts.seed = 3;
    AbsorberSearchResult x_side = find_lattice_absorber(h0, part0, {0, 1, 2}, none40, opts);
    REQUIRE(x_side.absorber.has_value());
    CHECK(verify_absorber(h0, *x_side.absorber).ok);
}

TEST_CASE("every returned absorber verifies, across random hosts") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        int n = 26 + 2 * static_cast<int>(seed);
        ThreeGraph g = gen_random_min_codegree(n, n / 3 + 2, mix_seed(0xf22, seed));
        VertexSet none(n);
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        VertexPartition trivial({all});
        AbsorberSearchOptions opts;
        opts.seed = seed;
        AbsorberSearchResult simple = find_simple_absorber(g, {0, 1, 2}, none, opts);
        if (simple.absorber) CHECK(verify_absorber(g, *simple.absorber).ok);
        AbsorberSearchResult lattice = find_lattice_absorber(g, trivial, {3, 4, 5}, none, opts);
        if (lattice.absorber) CHECK(verify_absorber(g, *lattice.absorber).ok);
        CHECK((simple.absorber || lattice.absorber));  // dense hosts admit gadgets
    }
}

TEST_CASE("apply_absorber splices and commutes") {
    ThreeGraph k25 = gen_complete(25);
    VertexSet none(25);
    Absorber a = *find_simple_absorber(k25, {0, 1, 2}, none).absorber;

    // a cover made of exactly the gadget paths plus the rest as singletons
    PathCover cover;
    std::set<int> in_gadget;
    for (const TightPath& p : a.gadget) {
        cover.paths.push_back(p);
        in_gadget.insert(p.vertices.begin(), p.vertices.end());
    }
    std::vector<int> rest;
    for (int v = 3; v < 25; ++v)
        if (!in_gadget.count(v)) rest.push_back(v);
    for (int v : rest) cover.paths.push_back(TightPath{{v}});

    PathCover after = apply_absorber(cover, a);
    CHECK(validate_cover(k25, after, true).ok);  // S absorbed, everything covered

    std::set<int> covered_before, covered_after;
    for (const auto& p : cover.paths)
        covered_before.insert(p.vertices.begin(), p.vertices.end());
    for (const auto& p : after.paths)
        covered_after.insert(p.vertices.begin(), p.vertices.end());
    CHECK(covered_after.size() == covered_before.size() + 3);

    // errors: S already covered / gadget missing
    CHECK_THROWS_AS(apply_absorber(after, a), std::invalid_argument);
    PathCover empty;
    CHECK_THROWS_AS(apply_absorber(empty, a), std::invalid_argument);

    // corrupted ends are rejected
    Absorber corrupt = a;
    std::swap(corrupt.replacement[0].vertices.front(), corrupt.replacement[0].vertices.back());
    CHECK_THROWS_AS(apply_absorber(cover, corrupt), std::invalid_argument);

    // disjoint applications commute (a bigger host so both gadgets fit)
    ThreeGraph k48 = gen_complete(48);
    VertexSet none48(48);
    Absorber first48 = *find_simple_absorber(k48, {0, 1, 2}, none48).absorber;
    VertexSet forbid(48);
    for (const TightPath& p : first48.gadget)
        for (int v : p.vertices) forbid.set(v);
    for (int v : {0, 1, 2}) forbid.set(v);
    std::vector<int> s2;
    for (int v = 3; v < 48 && s2.size() < 3; ++v)
        if (!forbid.test(v)) s2.push_back(v);
    AbsorberSearchResult second = find_simple_absorber(k48, s2, forbid);
    REQUIRE(second.absorber.has_value());
    PathCover base;
    for (const TightPath& p : first48.gadget) base.paths.push_back(p);
    for (const TightPath& p : second.absorber->gadget) base.paths.push_back(p);
    PathCover ab = apply_absorber(apply_absorber(base, first48), *second.absorber);
    PathCover ba = apply_absorber(apply_absorber(base, *second.absorber), first48);
    auto key = [](const PathCover& c) {
        std::set<std::vector<int>> s;
        for (const auto& p : c.paths) s.insert(p.vertices);
        return s;
    };
    CHECK(key(ab) == key(ba));
}

TEST_SUITE_END();
