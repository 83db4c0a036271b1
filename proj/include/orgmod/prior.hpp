#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orgmod/geometry.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/matrix.hpp"

namespace orgmod {

enum class Kernel { exponential, linear };

// Cluster-level prior: the number of target clusters, an optional 2-D
// position per cluster, and a symmetric similarity matrix S with unit
// diagonal and entries in [0, 1]. S encodes how strongly the quality measure
// rewards weight between *distinct* clusters; S = I recovers plain
// modularity. Immutable by convention once built.
struct PriorStructure {
    int cluster_count = 0;
    std::vector<Vec2> positions; // empty for identity priors
    Matrix similarity;           // cluster_count x cluster_count

    bool has_positions() const { return !positions.empty(); }
};

// Integer grid coordinates in row-major order: (row, col) -> (x = col,
// y = row). rows * cols becomes the cluster count.
std::vector<Vec2> build_grid(int rows, int cols);

// S_ij = H(lambda * ||x_i - x_j||) with H(t) = exp(-t^2) (exponential) or
// H(t) = max(0, 1 - t) (linear). lambda = 0 gives the all-ones matrix; the
// diagonal is exactly 1 in all cases.
Matrix similarity_matrix(const std::vector<Vec2>& positions, Kernel kernel, double lambda);

PriorStructure identity_prior(int cluster_count);
PriorStructure grid_prior(int rows, int cols, Kernel kernel, double lambda);

// Wraps a user-supplied S; positions may be empty (no layout available then).
// Rejects asymmetry beyond 1e-12, entries outside [0, 1], and any diagonal
// entry that is not exactly 1.
PriorStructure custom_prior(std::vector<Vec2> positions, Matrix similarity);

// Smallest pairwise distance among positions; the layout length scale.
double min_spacing(const std::vector<Vec2>& positions);

struct SpectralEstimate {
    double value = 0.0;
    int iterations = 0;
};

// Dominant |eigenvalue| of a symmetric operator by power iteration on the
// squared operator (two applies per step). Squaring makes every eigenvalue
// non-negative, so extreme eigenvalues of opposite sign cannot cancel in the
// estimate, and it doubles the convergence rate. The start vector is a
// seeded generic direction; the estimate |A v| (v unit) grows monotonically
// to the radius and iteration stops when it stagnates to within the relative
// tolerance. A zero operator reports 0.
SpectralEstimate spectral_radius(int dim, const std::function<void(const double*, double*)>& apply,
                                 int max_iterations = 500, double tolerance = 1e-10);

SpectralEstimate spectral_radius(const Matrix& symmetric, int max_iterations = 500,
                                 double tolerance = 1e-10);

// Radius of the zero-diagonal centered operator b_apply implements.
SpectralEstimate graph_operator_radius(const Graph& g, int max_iterations = 500,
                                       double tolerance = 1e-10);

} // namespace orgmod
