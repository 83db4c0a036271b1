#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "orgmod/anneal.hpp"
#include "orgmod/io.hpp"
#include "orgmod/layout.hpp"
#include "test_helpers.hpp"

using namespace orgmod;

namespace {
const std::string kDataDir = ORGMOD_DATA_DIR;

// 6 vertices in 3 tight pairs, pairs chained 0-1 -- 2-3 -- 4-5
Graph chain_of_pairs() {
    return build_graph(6, {{0, 1, 3.0},
                           {2, 3, 3.0},
                           {4, 5, 3.0},
                           {1, 2, 1.0},
                           {3, 4, 1.0}});
}
} // namespace

TEST_CASE("grid layout places non-empty clusters at their prior positions") {
    Graph g = chain_of_pairs();
    PriorStructure prior = grid_prior(2, 2, Kernel::exponential, 1.0);
    Clustering c{{0, 0, 1, 1, 2, 2}, 4}; // cluster 3 stays empty
    Layout lay = grid_layout(g, c, prior);

    REQUIRE(lay.points.size() == 3);
    CHECK(lay.kind == NodeKind::cluster);
    CHECK(lay.ids == std::vector<int>{0, 1, 2});
    CHECK(lay.sizes == std::vector<int>{2, 2, 2});
    CHECK(lay.points[0].x == 0.0);
    CHECK(lay.points[0].y == 0.0);
    CHECK(lay.points[1].x == 1.0);
    CHECK(lay.points[1].y == 0.0);
    CHECK(lay.points[2].x == 0.0);
    CHECK(lay.points[2].y == 1.0);

    REQUIRE(lay.edges.size() == 2); // 0-1 and 1-2 carry weight, 0-2 does not
    CHECK(lay.edges[0].a == 0);
    CHECK(lay.edges[0].b == 1);
    CHECK(lay.edges[0].weight == doctest::Approx(1.0));
    CHECK(lay.edges[1].a == 1);
    CHECK(lay.edges[1].b == 2);

    PriorStructure identity = identity_prior(4);
    CHECK_THROWS_AS(grid_layout(g, c, identity), std::invalid_argument);
}

TEST_CASE("expected positions are convex combinations of the grid") {
    PriorStructure prior = grid_prior(2, 2, Kernel::exponential, 1.0);
    Matrix hard(2, 4, 0.0);
    hard(0, 0) = 1.0;
    hard(1, 3) = 1.0;
    std::vector<Vec2> pos = expected_positions(hard, prior);
    CHECK(pos[0].x == doctest::Approx(0.0));
    CHECK(pos[0].y == doctest::Approx(0.0));
    CHECK(pos[1].x == doctest::Approx(1.0));
    CHECK(pos[1].y == doctest::Approx(1.0));

    Matrix uniform(1, 4, 0.25);
    std::vector<Vec2> centroid = expected_positions(uniform, prior);
    CHECK(centroid[0].x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(centroid[0].y == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("complete-linkage collapse respects the cut and merge order") {
    SUBCASE("three collinear points with tied first merges") {
        std::vector<Vec2> pts = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
        Grouping grouping = collapse_positions(pts, 1.0);
        // (0,1) merges first on the index tie; {0,1}+{2} would span 2.0 > cut
        CHECK(grouping.membership == std::vector<int>{0, 0, 1});
        REQUIRE(grouping.groups.size() == 2);
        CHECK(grouping.groups[0] == std::vector<int>{0, 1});
        CHECK(grouping.centroids[0].x == doctest::Approx(0.5));
        CHECK(grouping.centroids[1].x == doctest::Approx(2.0));
    }
    SUBCASE("zero cut keeps singletons, huge cut merges everything") {
        std::vector<Vec2> pts = {{0.0, 0.0}, {3.0, 0.0}, {0.0, 4.0}};
        Grouping singles = collapse_positions(pts, 1e-12);
        CHECK(singles.groups.size() == 3);
        Grouping merged = collapse_positions(pts, 10.0);
        CHECK(merged.groups.size() == 1);
        CHECK(merged.membership == std::vector<int>{0, 0, 0});
    }
    SUBCASE("every group diameter stays within the cut") {
        testutil::Rng rng(424242);
        std::vector<Vec2> pts;
        for (int i = 0; i < 60; ++i) pts.push_back({rng.uniform() * 4.0, rng.uniform() * 4.0});
        const double cut = 0.7;
        Grouping grouping = collapse_positions(pts, cut);
        for (const auto& group : grouping.groups)
            for (size_t a = 0; a < group.size(); ++a)
                for (size_t b = a + 1; b < group.size(); ++b)
                    CHECK(distance(pts[static_cast<size_t>(group[a])],
                                   pts[static_cast<size_t>(group[b])]) <= cut + 1e-12);
    }
    SUBCASE("group ids follow the smallest member") {
        std::vector<Vec2> pts = {{10.0, 0.0}, {0.0, 0.0}, {10.1, 0.0}, {0.1, 0.0}};
        Grouping grouping = collapse_positions(pts, 0.5);
        // point 0 belongs to group 0 by construction of the numbering
        CHECK(grouping.membership[0] == 0);
        CHECK(grouping.membership[2] == 0);
        CHECK(grouping.membership[1] == 1);
        CHECK(grouping.membership[3] == 1);
    }
}

TEST_CASE("force refinement keeps symmetric inputs symmetric") {
    Layout lay;
    lay.kind = NodeKind::cluster;
    lay.points = {{-1.0, 0.0}, {1.0, 0.0}, {-1.0, 2.0}, {1.0, 2.0}};
    lay.sizes = {1, 1, 1, 1};
    lay.ids = {0, 1, 2, 3};
    lay.edges = {{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}};
    FrOptions fr;
    fr.iterations = 40;
    fr.ideal_length = 1.0;
    fr.initial_step = 0.2;
    Layout out = fr_refine(lay, fr);
    REQUIRE(out.points.size() == 4);
    // mirror pairs across x = 0 stay mirrored
    CHECK(std::abs(out.points[0].x + out.points[1].x) <= 1e-9);
    CHECK(std::abs(out.points[2].x + out.points[3].x) <= 1e-9);
    CHECK(std::abs(out.points[0].y - out.points[1].y) <= 1e-9);
    for (const auto& p : out.points) {
        CHECK(std::isfinite(p.x));
        CHECK(std::isfinite(p.y));
    }
}

TEST_CASE("force refinement separates coincident glyphs deterministically") {
    Layout lay;
    lay.points = {{0.5, 0.5}, {0.5, 0.5}};
    lay.sizes = {1, 1};
    lay.ids = {0, 1};
    lay.edges = {{0, 1, 1.0}};
    FrOptions fr;
    fr.iterations = 30;
    fr.ideal_length = 1.0;
    fr.initial_step = 0.3;
    Layout a = fr_refine(lay, fr);
    const double gap = distance(a.points[0], a.points[1]);
    CHECK(gap > 0.01);
    Layout b = fr_refine(lay, fr);
    CHECK(a.points[0].x == b.points[0].x); // no hidden randomness
    CHECK(a.points[1].y == b.points[1].y);
}

TEST_CASE("two connected glyphs settle near the ideal spacing") {
    Layout lay;
    lay.points = {{0.0, 0.0}, {3.0, 0.0}};
    lay.sizes = {1, 1};
    lay.ids = {0, 1};
    lay.edges = {{0, 1, 1.0}};
    FrOptions fr;
    fr.iterations = 300;
    fr.ideal_length = 1.0;
    fr.initial_step = 0.25;
    Layout out = fr_refine(lay, fr);
    CHECK(distance(out.points[0], out.points[1]) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("fuzzy frames follow the annealing trail") {
    Graph g = load_graph(kDataDir + "/karate.txt");
    PriorStructure prior = grid_prior(2, 2, Kernel::exponential, 0.8325546111576977);
    AnnealConfig cfg;
    cfg.outer_steps = 30;
    cfg.seed = 7;
    AnnealResult res = anneal(g, prior, cfg);
    FuzzyFilm film = fuzzy_frames(g, res.trail, prior, 0.05, 15);

    REQUIRE(film.frames.size() == res.trail.snapshots.size());
    CHECK(film.skipped_snapshots == 0);
    for (size_t f = 0; f < film.frames.size(); ++f) {
        const FuzzyFrame& frame = film.frames[f];
        CHECK(frame.temperature ==
              doctest::Approx(res.trail.snapshots[f].temperature).epsilon(1e-15));
        CHECK(frame.layout.kind == NodeKind::collapsed_group);
        CHECK(frame.membership.size() == static_cast<size_t>(g.vertex_count()));
        int total = 0;
        for (int s : frame.layout.sizes) total += s;
        CHECK(total == g.vertex_count());
        for (int m : frame.membership) {
            CHECK(m >= 0);
            CHECK(m < static_cast<int>(frame.layout.points.size()));
        }
    }
    // hot start: everything huddles at the centroid; cold end: real structure
    CHECK(film.frames.front().layout.points.size() == 1);
    CHECK(film.frames.back().layout.points.size() > 1);
}
