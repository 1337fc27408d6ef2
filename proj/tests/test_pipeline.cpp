#include <doctest.h>

#include "tightpath/generators.hpp"
#include "tightpath/pipeline.hpp"
#include "tightpath/report.hpp"
#include "tightpath/util.hpp"

using namespace tightpath;

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("reserve_sample") {
    ThreeGraph k30 = gen_complete(30);
    VertexSet none(30);
    ReservoirResult r = reserve_sample(k30, 0.2, 42, none);
    CHECK(r.status == ReservoirResult::Status::met_target);
    CHECK(r.guarantee >= static_cast<int>(0.8 * 28 * 0.2));  // floor(0.8 * (n-2) * gamma)

    ReservoirResult again = reserve_sample(k30, 0.2, 42, none);
    CHECK(again.vertices == r.vertices);  // deterministic per seed

    CHECK_THROWS_AS(reserve_sample(k30, 0.0, 1, none), std::invalid_argument);
    CHECK_THROWS_AS(reserve_sample(k30, 0.5, 1, none), std::invalid_argument);

    // excluded vertices never appear in the sample
    VertexSet excl(30);
    for (int v = 0; v < 10; ++v) excl.set(v);
    ReservoirResult masked = reserve_sample(k30, 0.2, 7, excl);
    for (int v = 0; v < 10; ++v) CHECK(!masked.vertices.test(v));

    // an impossible floor reports failure instead of a sample
    ReserveOptions strict;
    strict.min_floor = 1000;
    strict.retries = 4;
    CHECK(reserve_sample(k30, 0.1, 1, none, strict).status == ReservoirResult::Status::failed);
}

TEST_CASE("pipeline succeeds on a complete graph") {
    ThreeGraph g = gen_complete(36);
    PipelineConfig cfg;
    cfg.seed = 5;
    auto [cover, rep] = heuristic_two_path_cover(g, cfg);
    REQUIRE(rep.success);
    REQUIRE(cover.has_value());
    CHECK(cover->paths.size() <= 2);
    CHECK(validate_cover(g, *cover, true).ok);
    CHECK(rep.partition_parts == 1);
}

TEST_CASE("pipeline succeeds on H0(42) with two paths") {
    auto [g, part] = gen_h0(42);
    PipelineConfig cfg;
    cfg.seed = 11;
    auto [cover, rep] = heuristic_two_path_cover(g, cfg);
    REQUIRE(rep.success);
    CHECK(cover->paths.size() == 2);
    CHECK(validate_cover(g, *cover, true).ok);
}

TEST_CASE("pipeline fails on H1 with the component diagnostic") {
    auto [g, part] = gen_h1(36);
    PipelineConfig cfg;
    cfg.seed = 3;
    auto [cover, rep] = heuristic_two_path_cover(g, cfg);
    CHECK(!rep.success);
    CHECK(!cover.has_value());
    CHECK(rep.tight_component_count == 3);
    CHECK(rep.component_obstruction);
    CHECK(rep.failure_reason.find("tight components") != std::string::npos);
}

TEST_CASE("pipeline succeeds on dense random instances") {
    int successes = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        ThreeGraph g = gen_random_min_codegree(60, 26, mix_seed(0x60, seed));
        PipelineConfig cfg;
        cfg.seed = mix_seed(0x61, seed);
        auto [cover, rep] = heuristic_two_path_cover(g, cfg);
        if (rep.success) {
            ++successes;
            CHECK(validate_cover(g, *cover, true).ok);
            CHECK(cover->paths.size() <= 2);
        }
    }
    CHECK(successes >= 4);
}

TEST_CASE("pipeline determinism and stage monotonicity") {
    ThreeGraph g = gen_random_min_codegree(40, 16, 77);
    PipelineConfig cfg;
    cfg.seed = 9;
    auto [cover1, rep1] = heuristic_two_path_cover(g, cfg);
    auto [cover2, rep2] = heuristic_two_path_cover(g, cfg);
    CHECK(to_json(rep1) == to_json(rep2));
    if (cover1 && cover2) CHECK(to_json(*cover1) == to_json(*cover2));

    // uncovered counts never increase along the stage list
    int last = rep1.n;
    for (const PipelineStage& s : rep1.stages) {
        if (s.uncovered_after < 0) continue;
        CHECK(s.uncovered_after <= last);
        last = s.uncovered_after;
    }
}

TEST_SUITE_END();
