#pragma once

#include <vector>

#include "orgmod/anneal.hpp"
#include "orgmod/geometry.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/prior.hpp"

namespace orgmod {

enum class NodeKind { cluster, collapsed_group };

// A drawable cluster-level picture: one glyph per (non-empty) cluster or
// collapsed group, straight-line edges with summed original weights.
struct Layout {
    NodeKind kind = NodeKind::cluster;
    std::vector<Vec2> points;
    std::vector<int> sizes; // vertex count each glyph represents
    std::vector<int> ids;   // cluster id (grid) or group index (fuzzy)

    struct Edge {
        int a = 0;
        int b = 0;
        double weight = 0.0;
    };
    std::vector<Edge> edges;
};

// Non-empty clusters at their prior grid positions, inter-cluster edges from
// the induced graph. Refuses priors without positions.
Layout grid_layout(const Graph& g, const Clustering& c, const PriorStructure& prior);

// Per-vertex expected position sum_k expectation(i, k) * position_k; a
// convex combination, so always inside the grid's hull.
std::vector<Vec2> expected_positions(const Matrix& expectation, const PriorStructure& prior);

struct Grouping {
    std::vector<int> membership;          // point index -> group
    std::vector<std::vector<int>> groups; // group -> member point indices
    std::vector<Vec2> centroids;
};

// Complete-linkage agglomeration cut so every group's diameter stays within
// cut_distance. Merge order: smallest linkage first, ties to the smallest
// (i, j) index pair. Group numbering follows the smallest member index.
Grouping collapse_positions(const std::vector<Vec2>& points, double cut_distance);

struct FrOptions {
    int iterations = 20;
    double ideal_length = 0.5;
    // Displacement cap for the first iteration; decays linearly to zero.
    double initial_step = 0.1;
};

// Fruchterman-Reingold relaxation with synchronous updates and no
// randomness: symmetric inputs stay symmetric, coincident glyphs get a
// deterministic separating nudge.
Layout fr_refine(Layout layout, const FrOptions& options);

struct FuzzyFrame {
    double temperature = 0.0;
    Layout layout;
    std::vector<int> membership; // vertex -> glyph
};

struct FuzzyFilm {
    std::vector<FuzzyFrame> frames;
    int skipped_snapshots = 0; // trail entries without a stored expectation
};

// One frame per trail snapshot that carries an expectation: expected
// positions, collapsed within cut_fraction * (minimal grid spacing), edges
// accumulated between groups, then a light force-directed untangling.
FuzzyFilm fuzzy_frames(const Graph& g, const AnnealTrail& trail, const PriorStructure& prior,
                       double cut_fraction = 0.05, int fr_iterations = 20);

} // namespace orgmod
