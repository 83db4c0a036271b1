#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "orgmod/errors.hpp"
#include "orgmod/io.hpp"
#include "orgmod/quality.hpp"
#include "test_helpers.hpp"

using namespace orgmod;

namespace {
const std::string kDataDir = ORGMOD_DATA_DIR;

Clustering karate_partition(const Graph& g, const std::vector<std::vector<int>>& groups) {
    Clustering c;
    c.cluster_count = static_cast<int>(groups.size());
    c.assignment.assign(g.vertex_count(), -1);
    for (int k = 0; k < c.cluster_count; ++k)
        for (int name : groups[static_cast<size_t>(k)])
            for (int i = 0; i < g.vertex_count(); ++i)
                if (g.labels()[i] == std::to_string(name)) c.assignment[i] = k;
    return c;
}
} // namespace

TEST_CASE("two-vertex toy values") {
    Graph g = build_graph(2, {{0, 1, 1.0}});
    Clustering split{{0, 1}, 2};
    Clustering merged{{0, 0}, 1};
    CHECK(modularity(g, split) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(std::abs(modularity(g, merged)) <= 1e-12);
}

TEST_CASE("single-cluster modularity is exactly zero") {
    for (std::uint64_t seed = 3; seed < 13; ++seed) {
        Graph g = testutil::random_graph(seed, 15, 2.0, true, seed % 2 == 0);
        Clustering all;
        all.cluster_count = 1;
        all.assignment.assign(15, 0);
        CHECK(std::abs(modularity(g, all)) <= 1e-12);
    }
}

TEST_CASE("modularity matches the dense double-loop oracle") {
    for (std::uint64_t seed = 17; seed < 37; ++seed) {
        const int n = 5 + static_cast<int>(seed % 20);
        Graph g = testutil::random_graph(seed, n, 2.5, true, seed % 3 == 0);
        Clustering c = testutil::random_clustering(seed + 500, n, 2 + static_cast<int>(seed % 5));
        CHECK(modularity(g, c) ==
              doctest::Approx(testutil::modularity_oracle(g, c)).epsilon(1e-12));
    }
}

TEST_CASE("identity similarity reduces organized to plain modularity") {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 200; ++seed, ++checked) {
        const int n = 4 + static_cast<int>(seed % 30);
        const int clusters = 2 + static_cast<int>(seed % 6);
        Graph g = testutil::random_graph(seed, n, 2.0, true, seed % 4 == 0);
        Clustering c = testutil::random_clustering(seed ^ 0xabcdef, n, clusters);
        PriorStructure prior = identity_prior(clusters);
        CHECK(std::abs(organized_modularity(g, c, prior) - modularity(g, c)) <= 1e-12);
    }
}

TEST_CASE("all-ones similarity collapses organized modularity to zero") {
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const int n = 12;
        const int clusters = 3;
        Graph g = testutil::random_graph(seed, n, 2.0, true, true);
        Clustering c = testutil::random_clustering(seed + 9, n, clusters);
        PriorStructure prior;
        prior.cluster_count = clusters;
        prior.similarity = Matrix(clusters, clusters, 1.0);
        CHECK(std::abs(organized_modularity(g, c, prior)) <= 1e-12);
    }
}

TEST_CASE("organized modularity matches its double-loop oracle") {
    for (std::uint64_t seed = 70; seed < 80; ++seed) {
        const int n = 10 + static_cast<int>(seed % 8);
        Graph g = testutil::random_graph(seed, n, 2.0);
        Clustering c = testutil::random_clustering(seed * 3, n, 4);
        PriorStructure prior = grid_prior(2, 2, Kernel::exponential, 0.7);
        CHECK(organized_modularity(g, c, prior) ==
              doctest::Approx(testutil::organized_oracle(g, c, prior.similarity))
                  .epsilon(1e-12));
    }
}

TEST_CASE("organized minus pair objective is an assignment-independent constant") {
    for (std::uint64_t seed = 200; seed < 205; ++seed) {
        const int n = 14;
        Graph g = testutil::random_graph(seed, n, 2.0, true, true);
        PriorStructure prior = grid_prior(2, 3, Kernel::linear, 0.4);
        const double two_m = 2.0 * g.total_weight();
        double expected = 0.0;
        for (int i = 0; i < n; ++i)
            expected += (g.self_loop(i) - g.degree(i) * g.degree(i) / two_m) / two_m;

        double lo = 1e300;
        double hi = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            Clustering c = testutil::random_clustering(seed * 1000 + trial, n, 6);
            const double diff =
                organized_modularity(g, c, prior) - f_value(g, c, prior);
            lo = std::min(lo, diff);
            hi = std::max(hi, diff);
            CHECK(diff == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(hi - lo <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("soft pair objective matches the quadruple-loop oracle") {
    for (std::uint64_t seed = 300; seed < 306; ++seed) {
        const int n = 9;
        const int clusters = 3;
        Graph g = testutil::random_graph(seed, n, 2.0);
        PriorStructure prior = grid_prior(1, 3, Kernel::exponential, 0.9);
        testutil::Rng rng(seed + 1);
        Matrix m(n, clusters, 0.0);
        for (int i = 0; i < n; ++i) {
            double row_sum = 0.0;
            for (int k = 0; k < clusters; ++k) {
                m(i, k) = 0.05 + rng.uniform();
                row_sum += m(i, k);
            }
            for (int k = 0; k < clusters; ++k) m(i, k) /= row_sum;
        }
        CHECK(f_value(g, m, prior) ==
              doctest::Approx(testutil::f_oracle(g, m, prior.similarity)).epsilon(1e-12));
    }
}

TEST_CASE("uniform membership scores the off-diagonal operator mean") {
    const int n = 11;
    const int clusters = 4;
    Graph g = testutil::random_graph(400, n, 2.0, true, true);
    PriorStructure prior = identity_prior(clusters);
    Matrix uniform(n, clusters, 1.0 / clusters);
    Matrix b = testutil::dense_b(g);
    double off_sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) off_sum += b(i, j);
    CHECK(f_value(g, uniform, prior) ==
          doctest::Approx(off_sum / clusters).epsilon(1e-12));
}

TEST_CASE("expected modularity agrees with hard assignments and rejects bad rows") {
    Graph g = testutil::random_graph(500, 13, 2.0);
    Clustering c = testutil::random_clustering(501, 13, 3);
    Matrix hard(13, 3, 0.0);
    for (int i = 0; i < 13; ++i) hard(i, c.assignment[static_cast<size_t>(i)]) = 1.0;
    CHECK(expected_modularity(g, hard) == doctest::Approx(modularity(g, c)).epsilon(1e-12));

    Matrix bad = hard;
    bad(0, 0) += 1e-3;
    CHECK_THROWS_AS(expected_modularity(g, bad), NumericError);
}

TEST_CASE("crossing counter on hand-checked cases") {
    SUBCASE("X crossing") {
        std::vector<Vec2> p = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
        CHECK(count_crossings(p, {{0, 1}, {2, 3}}) == 1);
    }
    SUBCASE("V sharing an endpoint") {
        std::vector<Vec2> p = {{0, 0}, {1, 1}, {2, 0}};
        CHECK(count_crossings(p, {{0, 1}, {1, 2}}) == 0);
    }
    SUBCASE("square with both diagonals") {
        std::vector<Vec2> p = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
        CHECK(count_crossings(p, e) == 1);
    }
    SUBCASE("T junction does not count") {
        std::vector<Vec2> p = {{0, 0}, {2, 0}, {1, 0}, {1, 1}};
        CHECK(count_crossings(p, {{0, 1}, {2, 3}}) == 0);
    }
    SUBCASE("endpoint touch at distinct indices does not count") {
        std::vector<Vec2> p = {{0, 0}, {1, 0}, {1, 0}, {2, 1}};
        CHECK(count_crossings(p, {{0, 1}, {2, 3}}) == 0);
    }
    SUBCASE("collinear overlap counts once, disjoint collinear does not") {
        std::vector<Vec2> p = {{0, 0}, {2, 0}, {1, 0}, {3, 0}, {5, 0}, {6, 0}};
        CHECK(count_crossings(p, {{0, 1}, {2, 3}}) == 1);
        CHECK(count_crossings(p, {{0, 1}, {4, 5}}) == 0);
    }
    SUBCASE("parallel segments never cross") {
        std::vector<Vec2> p = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        CHECK(count_crossings(p, {{0, 1}, {2, 3}}) == 0);
    }
}

TEST_CASE("pareto flags keep exactly the undominated points") {
    std::vector<QualityPoint> pts = {
        {0.50, 10, "a"}, // dominated by c
        {0.55, 3, "b"},
        {0.55, 2, "c"},
        {0.40, 0, "d"},
        {0.55, 2, "e"}, // duplicate of c survives alongside it
    };
    std::vector<bool> flags = pareto_flags(pts);
    CHECK(flags == std::vector<bool>{false, false, true, true, true});

    std::vector<QualityPoint> front = pareto_front(pts);
    REQUIRE(front.size() == 3);
    CHECK(front[0].modularity == 0.55);
    CHECK(front[0].crossings == 2);
    CHECK(front[2].tag == "d");
}

TEST_CASE("karate reference partitions score their published values") {
    Graph g = load_graph(kDataDir + "/karate.txt");
    Clustering best = karate_partition(
        g, {{1, 2, 3, 4, 8, 12, 13, 14, 18, 20, 22},
            {5, 6, 7, 11, 17},
            {9, 10, 15, 16, 19, 21, 23, 27, 30, 31, 33, 34},
            {24, 25, 26, 28, 29, 32}});
    CHECK(modularity(g, best) == doctest::Approx(0.41978961209730442).epsilon(1e-14));

    // moving vertex 10 across the boundary gives the familiar near-optimum
    Clustering variant = karate_partition(
        g, {{1, 2, 3, 4, 8, 10, 12, 13, 14, 18, 20, 22},
            {5, 6, 7, 11, 17},
            {9, 15, 16, 19, 21, 23, 27, 30, 31, 33, 34},
            {24, 25, 26, 28, 29, 32}});
    CHECK(modularity(g, variant) == doctest::Approx(0.41880341880341876).epsilon(1e-14));
}
