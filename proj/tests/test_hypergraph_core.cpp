#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "tightpath/generators.hpp"
#include "tightpath/io.hpp"
#include "tightpath/three_graph.hpp"
#include "tightpath/util.hpp"

using namespace tightpath;

namespace {

// scan-based codegree oracle, independent of the bitset adjacency
int codegree_by_scan(const ThreeGraph& g, int u, int v) {
    int count = 0;
    for (const Triple& e : g.edges()) {
        bool has_u = e[0] == u || e[1] == u || e[2] == u;
        bool has_v = e[0] == v || e[1] == v || e[2] == v;
        if (has_u && has_v) ++count;
    }
    return count;
}

long long codegree_sum(const ThreeGraph& g) {
    long long sum = 0;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) sum += g.codegree(u, v);
    return sum;
}

}  // namespace

TEST_SUITE_BEGIN("hypergraph_core");

TEST_CASE("build_graph basics") {
    ThreeGraph g(3, {{0, 1, 2}});
    CHECK(g.edge_count() == 1);
    CHECK(g.codegree(0, 1) == 1);

    ThreeGraph empty(4, {});
    CHECK(empty.edge_count() == 0);
    CHECK(empty.min_codegree() == 0);

    ThreeGraph k5 = gen_complete(5);
    CHECK(k5.edge_count() == 10);
    CHECK(k5.min_codegree() == 3);

    // deduplication and canonicalization
    ThreeGraph dup(4, {{2, 1, 0}, {0, 1, 2}, {1, 2, 3}});
    CHECK(dup.edge_count() == 2);
    CHECK(dup.has_edge(1, 0, 2));

    CHECK_THROWS_AS(ThreeGraph(3, {{0, 1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(ThreeGraph(3, {{0, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(gen_complete(5).codegree(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(ThreeGraph(1, {}).min_codegree(), std::invalid_argument);
}

TEST_CASE("codegree on generated families") {
    auto [h0, part] = gen_h0(10);
    // pairs inside Y keep |Y|-2 extensions; pairs inside X keep everything
    int y0 = part.part(1)[0], y1 = part.part(1)[1];
    int x0 = part.part(0)[0], x1 = part.part(0)[1];
    CHECK(h0.codegree(y0, y1) == 3);
    CHECK(h0.codegree(x0, x1) == 8);
    CHECK(h0.codegree(x0, x1) == codegree_by_scan(h0, x0, x1));

    CHECK(gen_complete(6).codegree(1, 4) == 4);
    CHECK(gen_complete(7).min_codegree() == 5);
}

TEST_CASE("H0 family: delta2 = ceil(n/2) - 2 for n = 5..20") {
    for (int n = 5; n <= 20; ++n) {
        auto [g, part] = gen_h0(n);
        CAPTURE(n);
        CHECK(g.min_codegree() == (n + 1) / 2 - 2);
        CHECK(part.part(0).size() == static_cast<std::size_t>(n / 2));
        CHECK(part.part(1).size() == static_cast<std::size_t>((n + 1) / 2));
    }
    CHECK_THROWS_AS(gen_h0(4), std::invalid_argument);
}

TEST_CASE("H1 family: delta2 = n/3 - 1 for n = 6..21") {
    for (int n = 6; n <= 21; n += 3) {
        auto [g, part] = gen_h1(n);
        CAPTURE(n);
        CHECK(g.min_codegree() == n / 3 - 1);
    }
    // 27 edges at n=9: 3 patterns x 3 pairs x 3 third-vertices
    CHECK(gen_h1(9).graph.edge_count() == 27);
    CHECK_THROWS_AS(gen_h1(10), std::invalid_argument);
}

TEST_CASE("H2 and H0' constructions") {
    CHECK(gen_h2(6, 6).graph.edge_count() == gen_complete(6).edge_count());
    auto [h2, part2] = gen_h2(7, 2);
    CHECK(h2.min_codegree() == 2);  // a pair inside Y extends only through X
    auto [h2b, part2b] = gen_h2(6, 1);
    CHECK(h2b.codegree(part2b.part(1)[0], part2b.part(1)[1]) == 1);

    auto [hp, partp] = gen_h0_prime(10, 5);
    for (std::size_t i = 0; i < partp.part(1).size(); ++i)
        for (std::size_t j = i + 1; j < partp.part(1).size(); ++j)
            for (std::size_t k = j + 1; k < partp.part(1).size(); ++k)
                CHECK(!hp.has_edge(partp.part(1)[i], partp.part(1)[j], partp.part(1)[k]));
    CHECK(hp.min_codegree() > 0);
    CHECK(gen_h0_prime(8, 4).graph.edge_count() == 28);  // C(4,3) + 4*C(4,2)
    CHECK_THROWS_AS(gen_h0_prime(5, 2), std::invalid_argument);
}

TEST_CASE("complete 3-partite") {
    CHECK(gen_complete_3partite(2, 2, 2).graph.edge_count() == 8);
    CHECK(gen_complete_3partite(1, 1, 1).graph.edge_count() == 1);
    CHECK(gen_complete(4).edge_count() == 4);
    CHECK_THROWS_AS(gen_complete_3partite(0, 1, 1), std::invalid_argument);
}

TEST_CASE("join_omni") {
    auto [h0, part] = gen_h0(8);
    ThreeGraph same = join_omni(h0, 0);
    CHECK(same.edges() == h0.edges());

    ThreeGraph joined = join_omni(ThreeGraph(3, {}), 3);
    CHECK(joined.vertex_count() == 6);
    CHECK(joined.edge_count() == 19);  // C(6,3) minus the all-old triple
    CHECK(!joined.has_edge(0, 1, 2));

    // every pair touching a new vertex is universal
    ThreeGraph j2 = join_omni(h0, 2);
    for (int v = 0; v < j2.vertex_count(); ++v)
        if (v != 8) CHECK(j2.codegree(8, v) == j2.vertex_count() - 2);

    // codegree never drops under joining
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) CHECK(j2.codegree(u, v) == h0.codegree(u, v) + 2);
}

TEST_CASE("index vectors") {
    VertexPartition p({{0, 1, 2}, {3, 4}});
    CHECK(index_vector(p, std::vector<int>{0, 1, 3}).coords == std::vector<int>{2, 1});
    CHECK(index_vector(p, std::vector<int>{}).coords == std::vector<int>{0, 0});
    VertexPartition p3({{0}, {1}, {2}});
    CHECK(index_vector(p3, std::vector<int>{0, 1, 2}).coords == std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(index_vector(p, std::vector<int>{7}), std::invalid_argument);
    CHECK_THROWS_AS(VertexPartition({{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("random generator with codegree floor") {
    // delta = n-2 forces completeness
    ThreeGraph forced = gen_random_min_codegree(9, 7, 123);
    CHECK(forced.edge_count() == static_cast<int>(binomial(9, 3)));

    ThreeGraph g = gen_random_min_codegree(12, 5, 1);
    CHECK(g.min_codegree() >= 5);
    ThreeGraph g2 = gen_random_min_codegree(12, 5, 1);
    CHECK(g.edges() == g2.edges());  // determinism
    ThreeGraph g3 = gen_random_min_codegree(12, 5, 2);
    CHECK(g.edges() != g3.edges());  // and seed sensitivity

    // postcondition check over a spread of parameters
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 9 + static_cast<int>(seed % 5);
        int delta = static_cast<int>(seed % (n - 2));
        ThreeGraph r = gen_random_min_codegree(n, delta, seed);
        CAPTURE(n);
        CAPTURE(delta);
        CHECK(r.min_codegree() >= delta);
    }
}

TEST_CASE("strong-dense sampler hits its predicate") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        int n = 9 + static_cast<int>(seed % 10);
        int mu = (n + 2) / 3;
        int zp = static_cast<int>(seed % 3);
        if (mu + zp > n - 2) zp = 0;
        ThreeGraph g = gen_random_strong_dense(n, zp, seed);
        int zero = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int d = g.codegree(u, v);
                if (d == 0)
                    ++zero;
                else
                    CHECK(d >= mu);
            }
        CHECK(zero == zp);
    }
}

TEST_CASE("codegree sum identity: sum over pairs = 3|E|") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        ThreeGraph g = gen_random_min_codegree(10, 3, seed);
        CHECK(codegree_sum(g) == 3LL * g.edge_count());
    }
    CHECK(codegree_sum(gen_h1(12).graph) == 3LL * gen_h1(12).graph.edge_count());
}

TEST_CASE("edge-list round trip and canonical bytes") {
    ThreeGraph g = gen_h1(9).graph;
    std::ostringstream first;
    write_graph(g, first);
    std::istringstream in(first.str());
    ReadResult back = read_graph(in);
    CHECK(back.graph.edges() == g.edges());
    CHECK(back.warnings.empty());
    std::ostringstream second;
    write_graph(back.graph, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("edge-list parsing accepts comments and reorders; rejects junk") {
    std::istringstream ok("# header comment\n4 2\n2 1 0\n# middle\n1 2 3\n");
    ReadResult r = read_graph(ok);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.has_edge(0, 1, 2));

    std::istringstream dup("4 2\n0 1 2\n2 1 0\n");
    ReadResult d = read_graph(dup);
    CHECK(d.graph.edge_count() == 1);
    CHECK(d.warnings.size() == 1);

    std::istringstream repeated("3 1\n1 1 2\n");
    CHECK_THROWS(read_graph(repeated));
    std::istringstream range("3 1\n0 1 5\n");
    CHECK_THROWS(read_graph(range));
    std::istringstream header("x y\n");
    CHECK_THROWS(read_graph(header));
    std::istringstream empty_graph("4 0\n");
    CHECK(read_graph(empty_graph).graph.vertex_count() == 4);
}

TEST_SUITE_END();
