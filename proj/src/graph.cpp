#include "orgmod/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace orgmod {

Graph build_graph(int vertex_count, const std::vector<WeightedEdge>& edges,
                  std::vector<std::string> labels) {
    if (vertex_count <= 0)
        throw std::invalid_argument("build_graph: vertex count must be positive");
    if (!labels.empty() && static_cast<int>(labels.size()) != vertex_count)
        throw std::invalid_argument("build_graph: label count does not match vertex count");

    // Coalesce parallel edges on normalized (min, max) keys.
    std::map<std::pair<int, int>, double> merged;
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
            throw std::invalid_argument("build_graph: edge endpoint out of range");
        if (e.w < 0.0)
            throw std::invalid_argument("build_graph: negative edge weight");
        if (e.w == 0.0)
            throw std::invalid_argument("build_graph: zero edge weight");
        auto key = std::minmax(e.u, e.v);
        merged[{key.first, key.second}] += e.w;
    }
    if (merged.empty())
        throw std::invalid_argument("build_graph: graph has no edges");

    Graph g;
    g.n_ = vertex_count;
    g.edge_count_ = static_cast<int>(merged.size());
    g.labels_ = std::move(labels);
    g.degree_.assign(vertex_count, 0.0);
    g.self_loop_.assign(vertex_count, 0.0);

    std::vector<int> counts(vertex_count, 0);
    for (const auto& [key, w] : merged) {
        ++counts[key.first];
        if (key.first != key.second) ++counts[key.second];
    }
    g.offsets_.assign(vertex_count + 1, 0);
    for (int i = 0; i < vertex_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
    g.targets_.assign(g.offsets_[vertex_count], 0);
    g.weights_.assign(g.offsets_[vertex_count], 0.0);

    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [key, w] : merged) {
        auto [a, b] = key;
        g.targets_[cursor[a]] = b;
        g.weights_[cursor[a]] = w;
        ++cursor[a];
        if (a != b) {
            g.targets_[cursor[b]] = a;
            g.weights_[cursor[b]] = w;
            ++cursor[b];
        } else {
            g.self_loop_[a] = w;
        }
        g.degree_[a] += w;
        if (a != b) g.degree_[b] += w;
    }

    double two_m = 0.0;
    for (double k : g.degree_) two_m += k;
    g.total_weight_ = 0.5 * two_m;
    return g;
}

Graph build_graph(const std::vector<LabeledEdge>& edges) {
    std::unordered_map<std::string, int> index;
    std::vector<std::string> labels;
    std::vector<WeightedEdge> dense;
    dense.reserve(edges.size());
    auto intern = [&](const std::string& name) {
        auto [it, fresh] = index.try_emplace(name, static_cast<int>(labels.size()));
        if (fresh) labels.push_back(name);
        return it->second;
    };
    for (const auto& e : edges) dense.push_back({intern(e.u), intern(e.v), e.w});
    if (dense.empty())
        throw std::invalid_argument("build_graph: graph has no edges");
    const int found = static_cast<int>(labels.size());
    return build_graph(found, dense, std::move(labels));
}

double density(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2)
        throw std::invalid_argument("density: need at least two vertices");
    int off_diagonal = 0;
    for (int i = 0; i < n; ++i)
        for (int e = g.row_begin(i); e < g.row_end(i); ++e)
            if (g.neighbor(e) > i) ++off_diagonal;
    return off_diagonal / (0.5 * n * (n - 1));
}

double transitivity(const Graph& g) {
    const int n = g.vertex_count();
    // Loop-free skeleton, neighbors sorted for merge intersection.
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int e = g.row_begin(i); e < g.row_end(i); ++e)
            if (g.neighbor(e) != i) adj[i].push_back(g.neighbor(e));
    long long triples = 0;
    for (int i = 0; i < n; ++i) {
        std::sort(adj[i].begin(), adj[i].end());
        long long d = static_cast<long long>(adj[i].size());
        triples += d * (d - 1) / 2;
    }
    if (triples == 0)
        throw std::invalid_argument("transitivity: no connected triples");
    // Each triangle is seen once per edge; summing common neighbors over
    // undirected edges counts it three times, which is exactly the numerator.
    long long closed = 0;
    for (int i = 0; i < n; ++i) {
        for (int j : adj[i]) {
            if (j <= i) continue;
            auto a = adj[i].begin(), ae = adj[i].end();
            auto b = adj[j].begin(), be = adj[j].end();
            while (a != ae && b != be) {
                if (*a < *b) ++a;
                else if (*b < *a) ++b;
                else { ++closed; ++a; ++b; }
            }
        }
    }
    return static_cast<double>(closed) / static_cast<double>(triples);
}

Matrix b_apply(const Graph& g, const Matrix& x) {
    const int n = g.vertex_count();
    const int c = x.cols();
    if (x.rows() != n)
        throw std::invalid_argument("b_apply: row count does not match vertex count");
    const double two_m = 2.0 * g.total_weight();
    const double inv_two_m = 1.0 / two_m;

    // s = k^T x, the rank-one part shared by every row.
    std::vector<double> s(c, 0.0);
    for (int i = 0; i < n; ++i) {
        const double ki = g.degree(i);
        if (ki == 0.0) continue;
        const double* xi = x.row(i);
        for (int k = 0; k < c; ++k) s[k] += ki * xi[k];
    }

    Matrix out(n, c, 0.0);
    for (int i = 0; i < n; ++i) {
        double* oi = out.row(i);
        for (int e = g.row_begin(i); e < g.row_end(i); ++e) {
            const double w = g.weight(e) * inv_two_m;
            const double* xj = x.row(g.neighbor(e));
            for (int k = 0; k < c; ++k) oi[k] += w * xj[k];
        }
        const double ki = g.degree(i);
        const double rank_one = ki * inv_two_m * inv_two_m;
        // The sparse pass above included W_ii x_i and the rank-one pass below
        // would include the i = j term; fold both into one diagonal repair so
        // the operator's diagonal is exactly zero.
        const double repair = inv_two_m * (ki * ki * inv_two_m - g.self_loop(i));
        const double* xi = x.row(i);
        for (int k = 0; k < c; ++k) oi[k] += repair * xi[k] - rank_one * s[k];
    }
    // The repair adds back k_i^2/(2m)^2 x_i, cancelling the rank-one i = j
    // term, and removes the stored self loop: out_i = sum_{j != i} B_ij x_j.
    return out;
}

void validate_clustering(const Clustering& c, int vertex_count) {
    if (c.cluster_count <= 0)
        throw std::invalid_argument("clustering: cluster count must be positive");
    if (static_cast<int>(c.assignment.size()) != vertex_count)
        throw std::invalid_argument("clustering: assignment length does not match vertex count");
    for (int a : c.assignment)
        if (a < 0 || a >= c.cluster_count)
            throw std::invalid_argument("clustering: assignment out of range");
}

std::vector<int> cluster_sizes(const Clustering& c) {
    std::vector<int> sizes(c.cluster_count, 0);
    for (int a : c.assignment) ++sizes[a];
    return sizes;
}

int nonempty_clusters(const Clustering& c) {
    auto sizes = cluster_sizes(c);
    int count = 0;
    for (int s : sizes)
        if (s > 0) ++count;
    return count;
}

InducedGraph induced_graph(const Graph& g, const Clustering& c) {
    validate_clustering(c, g.vertex_count());
    InducedGraph out;
    out.weights = Matrix(c.cluster_count, c.cluster_count, 0.0);
    out.sizes = cluster_sizes(c);
    for (int i = 0; i < g.vertex_count(); ++i) {
        const int ci = c.assignment[i];
        for (int e = g.row_begin(i); e < g.row_end(i); ++e) {
            const int j = g.neighbor(e);
            const int cj = c.assignment[j];
            if (j == i) {
                // A self loop is one ordered pair; it appears once in CSR.
                out.weights(ci, cj) += g.weight(e);
            } else if (j > i) {
                // Each unordered pair contributes both ordered orientations.
                out.weights(ci, cj) += g.weight(e);
                out.weights(cj, ci) += g.weight(e);
            }
        }
    }
    return out;
}

} // namespace orgmod
