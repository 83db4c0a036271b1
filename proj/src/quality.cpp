#include "orgmod/quality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orgmod/errors.hpp"

namespace orgmod {
namespace {

// Per-cluster degree mass K_k = sum_{i in C_k} k_i.
std::vector<double> cluster_degrees(const Graph& g, const Clustering& c) {
    std::vector<double> mass(c.cluster_count, 0.0);
    for (int i = 0; i < g.vertex_count(); ++i) mass[c.assignment[i]] += g.degree(i);
    return mass;
}

// Diagonal pair contribution (1/2m) sum_i (W_ii - k_i^2 / 2m); constant in
// the clustering, reused by every measure that sums over all pairs.
double diagonal_rest(const Graph& g) {
    const double two_m = 2.0 * g.total_weight();
    double acc = 0.0;
    for (int i = 0; i < g.vertex_count(); ++i)
        acc += g.self_loop(i) - g.degree(i) * g.degree(i) / two_m;
    return acc / two_m;
}

int orientation(Vec2 a, Vec2 b, Vec2 c, double eps) {
    const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (cross > eps) return 1;
    if (cross < -eps) return -1;
    return 0;
}

} // namespace

double modularity(const Graph& g, const Clustering& c) {
    validate_clustering(c, g.vertex_count());
    const double two_m = 2.0 * g.total_weight();
    InducedGraph quotient = induced_graph(g, c);
    std::vector<double> mass = cluster_degrees(g, c);
    double q = 0.0;
    for (int k = 0; k < c.cluster_count; ++k)
        q += quotient.weights(k, k) - mass[k] * mass[k] / two_m;
    return q / two_m;
}

double organized_modularity(const Graph& g, const Clustering& c, const PriorStructure& prior) {
    validate_clustering(c, g.vertex_count());
    if (prior.cluster_count != c.cluster_count)
        throw std::invalid_argument("organized_modularity: clustering and prior disagree on cluster count");
    const double two_m = 2.0 * g.total_weight();
    InducedGraph quotient = induced_graph(g, c);
    std::vector<double> mass = cluster_degrees(g, c);
    double o = 0.0;
    for (int k = 0; k < c.cluster_count; ++k)
        for (int l = 0; l < c.cluster_count; ++l)
            o += prior.similarity(k, l) * (quotient.weights(k, l) - mass[k] * mass[l] / two_m);
    return o / two_m;
}

double f_value(const Graph& g, const Matrix& membership, const PriorStructure& prior) {
    if (membership.rows() != g.vertex_count())
        throw std::invalid_argument("f_value: membership rows do not match vertex count");
    if (membership.cols() != prior.cluster_count)
        throw std::invalid_argument("f_value: membership columns do not match prior");
    // sum_ik M_ik (B M S)_ik with the zero-diagonal operator.
    Matrix bm = b_apply(g, membership);
    Matrix bms = matmul(bm, prior.similarity);
    double f = 0.0;
    for (int i = 0; i < membership.rows(); ++i) {
        const double* mi = membership.row(i);
        const double* ri = bms.row(i);
        for (int k = 0; k < membership.cols(); ++k) f += mi[k] * ri[k];
    }
    return f;
}

double f_value(const Graph& g, const Clustering& c, const PriorStructure& prior) {
    validate_clustering(c, g.vertex_count());
    if (prior.cluster_count != c.cluster_count)
        throw std::invalid_argument("f_value: clustering and prior disagree on cluster count");
    Matrix hard(g.vertex_count(), c.cluster_count, 0.0);
    for (int i = 0; i < g.vertex_count(); ++i) hard(i, c.assignment[i]) = 1.0;
    return f_value(g, hard, prior);
}

double expected_modularity(const Graph& g, const Matrix& expectation) {
    if (expectation.rows() != g.vertex_count())
        throw std::invalid_argument("expected_modularity: rows do not match vertex count");
    for (int i = 0; i < expectation.rows(); ++i) {
        double sum = 0.0;
        const double* row = expectation.row(i);
        for (int k = 0; k < expectation.cols(); ++k) sum += row[k];
        if (std::abs(sum - 1.0) > 1e-8)
            throw NumericError("expected_modularity: expectation row does not sum to 1");
    }
    Matrix bm = b_apply(g, expectation);
    double q = 0.0;
    for (int i = 0; i < expectation.rows(); ++i) {
        const double* mi = expectation.row(i);
        const double* ri = bm.row(i);
        for (int k = 0; k < expectation.cols(); ++k) q += mi[k] * ri[k];
    }
    return q + diagonal_rest(g);
}

int count_crossings(const std::vector<Vec2>& points,
                    const std::vector<std::pair<int, int>>& edges) {
    constexpr double eps = 1e-9;
    const int n = static_cast<int>(points.size());
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("count_crossings: non-finite coordinate");
    for (const auto& [a, b] : edges)
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("count_crossings: edge endpoint out of range");

    auto open_overlap_1d = [](double a0, double a1, double b0, double b1) {
        if (a0 > a1) std::swap(a0, a1);
        if (b0 > b1) std::swap(b0, b1);
        return std::min(a1, b1) - std::max(a0, b0) > eps;
    };

    int crossings = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (std::size_t f = e + 1; f < edges.size(); ++f) {
            const auto [p1, p2] = edges[e];
            const auto [q1, q2] = edges[f];
            if (p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2) continue;
            const Vec2 a = points[p1], b = points[p2], c = points[q1], d = points[q2];
            const int o1 = orientation(a, b, c, eps);
            const int o2 = orientation(a, b, d, eps);
            const int o3 = orientation(c, d, a, eps);
            const int o4 = orientation(c, d, b, eps);
            if (o1 * o2 < 0 && o3 * o4 < 0) {
                ++crossings;
            } else if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
                // All four collinear: a shared positive-length stretch is one
                // crossing; mere endpoint contact is not.
                const bool wide = std::abs(b.x - a.x) >= std::abs(b.y - a.y);
                const bool overlap = wide ? open_overlap_1d(a.x, b.x, c.x, d.x)
                                          : open_overlap_1d(a.y, b.y, c.y, d.y);
                if (overlap) ++crossings;
            }
        }
    }
    return crossings;
}

std::vector<bool> pareto_flags(const std::vector<QualityPoint>& points) {
    const std::size_t n = points.size();
    std::vector<bool> flags(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n && flags[i]; ++j) {
            if (i == j) continue;
            const bool weakly = points[j].modularity >= points[i].modularity &&
                                points[j].crossings <= points[i].crossings;
            const bool strictly = points[j].modularity > points[i].modularity ||
                                  points[j].crossings < points[i].crossings;
            if (weakly && strictly) flags[i] = false;
        }
    }
    return flags;
}

std::vector<QualityPoint> pareto_front(std::vector<QualityPoint> points) {
    std::vector<bool> keep = pareto_flags(points);
    std::vector<QualityPoint> front;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (keep[i]) front.push_back(std::move(points[i]));
    std::stable_sort(front.begin(), front.end(), [](const QualityPoint& a, const QualityPoint& b) {
        if (a.modularity != b.modularity) return a.modularity > b.modularity;
        return a.crossings < b.crossings;
    });
    return front;
}

} // namespace orgmod
