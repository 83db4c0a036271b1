#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orgmod/geometry.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/matrix.hpp"
#include "orgmod/prior.hpp"

namespace orgmod {

// Newman-style modularity of a hard clustering, diagonal pairs included:
//   Q = (1/2m) sum_k sum_{i,j in C_k} (W_ij - k_i k_j / 2m).
// Always < 1; exactly 0 for the single-cluster assignment.
double modularity(const Graph& g, const Clustering& c);

// Cluster-similarity weighted generalization over *all* vertex pairs:
//   (1/2m) sum_{i,j} S_{c(i) c(j)} (W_ij - k_i k_j / 2m).
// Reduces to modularity when S = I and to 0 when S is all ones.
double organized_modularity(const Graph& g, const Clustering& c, const PriorStructure& prior);

// The annealer's actual objective: the same pair sum restricted to i != j,
// i.e. organized modularity minus the assignment-independent diagonal rest
// (1/2m) sum_i (W_ii - k_i^2 / 2m). Soft overload accepts any row-stochastic
// membership matrix.
double f_value(const Graph& g, const Clustering& c, const PriorStructure& prior);
double f_value(const Graph& g, const Matrix& membership, const PriorStructure& prior);

// Modularity expected under independent per-vertex assignment probabilities;
// equals modularity exactly when rows are 0/1. Rows must sum to 1 within
// 1e-8 or the call is rejected.
double expected_modularity(const Graph& g, const Matrix& expectation);

// Number of unordered edge pairs whose open segments intersect. Pairs
// sharing an endpoint *index* are never counted; a collinear positive-length
// overlap counts once; touching endpoints and T-junctions do not count.
// Orientation tests treat |cross products| below 1e-9 as degenerate.
int count_crossings(const std::vector<Vec2>& points,
                    const std::vector<std::pair<int, int>>& edges);

struct QualityPoint {
    double modularity = 0.0;
    int crossings = 0;
    std::string tag;
};

// flags[i] is true iff no other point has modularity >= and crossings <=
// with at least one strict. Duplicates survive together.
std::vector<bool> pareto_flags(const std::vector<QualityPoint>& points);

// The undominated subset, sorted by decreasing modularity (crossings
// ascending as tie break).
std::vector<QualityPoint> pareto_front(std::vector<QualityPoint> points);

} // namespace orgmod
