#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "orgmod/prior.hpp"
#include "orgmod/sweep.hpp"
#include "test_helpers.hpp"

using namespace orgmod;

TEST_CASE("grid positions are row-major with x = column") {
    std::vector<Vec2> grid = build_grid(2, 3);
    REQUIRE(grid.size() == 6);
    CHECK(grid[0].x == 0.0);
    CHECK(grid[0].y == 0.0);
    CHECK(grid[1].x == 1.0); // second entry walks along the row
    CHECK(grid[1].y == 0.0);
    CHECK(grid[3].x == 0.0);
    CHECK(grid[3].y == 1.0);
    CHECK(grid[5].x == 2.0);
    CHECK(grid[5].y == 1.0);
    CHECK_THROWS_AS(build_grid(0, 3), std::invalid_argument);
}

TEST_CASE("similarity kernels evaluate to their closed forms") {
    std::vector<Vec2> pair = {{0.0, 0.0}, {1.0, 0.0}};
    Matrix exp1 = similarity_matrix(pair, Kernel::exponential, 1.0);
    CHECK(exp1(0, 0) == 1.0);
    CHECK(exp1(1, 1) == 1.0);
    CHECK(exp1(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(exp1(1, 0) == exp1(0, 1));

    Matrix lin_half = similarity_matrix(pair, Kernel::linear, 0.5);
    CHECK(lin_half(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    Matrix lin_clip = similarity_matrix(pair, Kernel::linear, 3.0);
    CHECK(lin_clip(0, 1) == 0.0); // clipped, never negative

    Matrix flat = similarity_matrix(pair, Kernel::exponential, 0.0);
    CHECK(flat(0, 1) == 1.0); // lambda 0 erases all structure
}

TEST_CASE("identity prior is the similarity-free special case") {
    PriorStructure prior = identity_prior(3);
    CHECK(prior.cluster_count == 3);
    CHECK_FALSE(prior.has_positions());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(prior.similarity(i, j) == (i == j ? 1.0 : 0.0));
    CHECK_THROWS_AS(identity_prior(0), std::invalid_argument);
}

TEST_CASE("grid prior couples neighbors more than diagonals") {
    PriorStructure prior = grid_prior(2, 2, Kernel::exponential, 1.0);
    CHECK(prior.cluster_count == 4);
    REQUIRE(prior.positions.size() == 4);
    const double side = prior.similarity(0, 1);
    const double diag = prior.similarity(0, 3);
    CHECK(side == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(diag == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(side > diag);
}

TEST_CASE("custom priors are validated strictly") {
    Matrix good(2, 2, 0.0);
    good(0, 0) = good(1, 1) = 1.0;
    good(0, 1) = good(1, 0) = 0.25;
    PriorStructure prior = custom_prior({}, good);
    CHECK(prior.cluster_count == 2);
    CHECK_FALSE(prior.has_positions());

    Matrix off_diag = good;
    off_diag(1, 1) = 0.999999; // diagonal must be exactly one
    CHECK_THROWS_AS(custom_prior({}, off_diag), std::invalid_argument);

    Matrix asym = good;
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(custom_prior({}, asym), std::invalid_argument);

    Matrix range = good;
    range(0, 1) = range(1, 0) = 1.5;
    CHECK_THROWS_AS(custom_prior({}, range), std::invalid_argument);

    CHECK_THROWS_AS(custom_prior({{0.0, 0.0}}, good), std::invalid_argument);
}

TEST_CASE("min_spacing finds the tightest pair") {
    CHECK(min_spacing(build_grid(2, 3)) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<Vec2> pts = {{0.0, 0.0}, {4.0, 0.0}, {4.0, 0.5}};
    CHECK(min_spacing(pts) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(min_spacing({{1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
    Matrix m(2, 2, 0.0);
    m(0, 0) = 2.0;
    m(1, 1) = -5.0;
    m(0, 1) = m(1, 0) = 1.0;
    SpectralEstimate est = spectral_radius(m);
    CHECK(est.value == doctest::Approx(testutil::jacobi_radius(m)).epsilon(1e-5));

    for (std::uint64_t seed = 7; seed < 19; ++seed) {
        const int n = 4 + static_cast<int>(seed % 9);
        testutil::Rng rng(seed);
        Matrix s(n, n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) s(i, j) = s(j, i) = 2.0 * rng.uniform() - 1.0;
        CHECK(spectral_radius(s).value ==
              doctest::Approx(testutil::jacobi_radius(s)).epsilon(1e-4));
    }
}

TEST_CASE("graph operator radius matches the dense centered matrix") {
    for (std::uint64_t seed = 21; seed < 29; ++seed) {
        Graph g = testutil::random_graph(seed, 10 + static_cast<int>(seed % 30), 2.0);
        const double dense = testutil::jacobi_radius(testutil::dense_b(g));
        CHECK(graph_operator_radius(g).value == doctest::Approx(dense).epsilon(1e-4));
    }
}

TEST_CASE("zero operator reports a zero radius") {
    SpectralEstimate est =
        spectral_radius(3, [](const double*, double* out) { out[0] = out[1] = out[2] = 0.0; });
    CHECK(est.value == 0.0);
}

TEST_CASE("default sweep scales hit the documented neighbor coverages") {
    std::vector<double> exp_scales = default_lambdas(Kernel::exponential);
    std::vector<double> targets_exp = {0.01, 0.25, 0.5, 0.75};
    REQUIRE(exp_scales.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        CHECK(std::exp(-exp_scales[i] * exp_scales[i]) ==
              doctest::Approx(targets_exp[i]).epsilon(1e-12));

    std::vector<double> lin_scales = default_lambdas(Kernel::linear);
    std::vector<double> targets_lin = {0.0, 0.25, 0.5, 0.75};
    REQUIRE(lin_scales.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        CHECK(std::max(0.0, 1.0 - lin_scales[i]) ==
              doctest::Approx(targets_lin[i]).epsilon(1e-12));
}
