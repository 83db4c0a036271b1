#pragma once

#include <string>
#include <vector>

#include "orgmod/matrix.hpp"

namespace orgmod {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

struct LabeledEdge {
    std::string u;
    std::string v;
    double w = 1.0;
};

// Undirected weighted graph in compressed sparse row form. Immutable once
// built. Conventions applied literally everywhere downstream:
//
//   k_i = sum_j W_ij    (a self loop contributes its weight once)
//   2m  = sum_i k_i
//
// Off-diagonal entries are stored in both incident rows; a self loop is
// stored once, in its own row.
class Graph {
public:
    int vertex_count() const { return n_; }

    // Number of distinct unordered vertex pairs carrying weight, self loops
    // included. This is |A| in sparsity accounting, not a weight sum.
    int edge_count() const { return edge_count_; }

    // m: half the sum of all adjacency entries.
    double total_weight() const { return total_weight_; }

    double degree(int i) const { return degree_[i]; }
    const std::vector<double>& degrees() const { return degree_; }
    double self_loop(int i) const { return self_loop_[i]; }

    // CSR row for vertex i: pairs (neighbor index, weight).
    int row_begin(int i) const { return offsets_[i]; }
    int row_end(int i) const { return offsets_[i + 1]; }
    int neighbor(int e) const { return targets_[e]; }
    double weight(int e) const { return weights_[e]; }

    // Original input identifiers, index-aligned; empty when built by index.
    const std::vector<std::string>& labels() const { return labels_; }

private:
    friend Graph build_graph(int, const std::vector<WeightedEdge>&, std::vector<std::string>);

    int n_ = 0;
    int edge_count_ = 0;
    double total_weight_ = 0.0;
    std::vector<int> offsets_;
    std::vector<int> targets_;
    std::vector<double> weights_;
    std::vector<double> degree_;
    std::vector<double> self_loop_;
    std::vector<std::string> labels_;
};

// Builds the CSR structure from an edge soup. Parallel edges are summed.
// Rejects negative and zero weights, out-of-range endpoints, and graphs with
// no weight at all (m must be positive for every quality measure downstream).
// Isolated vertices are fine.
Graph build_graph(int vertex_count, const std::vector<WeightedEdge>& edges,
                  std::vector<std::string> labels = {});

// Same, but endpoints are arbitrary strings mapped to dense indices in first
// appearance order; the mapping is retained for output labeling.
Graph build_graph(const std::vector<LabeledEdge>& edges);

// Share of possible unordered pairs that carry an edge; self loops ignored.
double density(const Graph& g);

// 3 * triangles / connected triples, computed on the unweighted loop-free
// skeleton. Requires at least one connected triple.
double transitivity(const Graph& g);

// Applies the zero-diagonal centered operator
//     (B x)_i = sum_{j != i} (W_ij - k_i k_j / 2m) / 2m * x_j
// column by column in O(C * (A + N)), never materializing the dense matrix:
// a sparse product, a rank-one correction through k, and a per-row diagonal
// repair.
Matrix b_apply(const Graph& g, const Matrix& x);

// Hard assignment of every vertex to one of cluster_count clusters. Empty
// clusters are legal; ids are dense in [0, cluster_count).
struct Clustering {
    std::vector<int> assignment;
    int cluster_count = 0;
};

// Throws if the clustering does not cover exactly the graph's vertices or an
// assignment is out of range.
void validate_clustering(const Clustering& c, int vertex_count);

std::vector<int> cluster_sizes(const Clustering& c);
int nonempty_clusters(const Clustering& c);

// Cluster-level quotient: weights(i, j) accumulates all W_uv with u in
// cluster i and v in cluster j over ordered vertex pairs, so the diagonal
// carries within-cluster weight and the full matrix sums to 2m.
struct InducedGraph {
    Matrix weights;
    std::vector<int> sizes;
};

InducedGraph induced_graph(const Graph& g, const Clustering& c);

} // namespace orgmod
