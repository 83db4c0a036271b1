#include "orgmod/prior.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace orgmod {
namespace {

// splitmix64; used only to de-symmetrize the power iteration start vector in
// a platform-independent way.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double kernel_value(Kernel kernel, double t) {
    switch (kernel) {
    case Kernel::exponential: return std::exp(-t * t);
    case Kernel::linear: return t >= 1.0 ? 0.0 : 1.0 - t;
    }
    throw std::invalid_argument("similarity_matrix: unknown kernel");
}

} // namespace

std::vector<Vec2> build_grid(int rows, int cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("build_grid: grid dimensions must be positive");
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            points.push_back({static_cast<double>(c), static_cast<double>(r)});
    return points;
}

Matrix similarity_matrix(const std::vector<Vec2>& positions, Kernel kernel, double lambda) {
    if (positions.empty())
        throw std::invalid_argument("similarity_matrix: no positions");
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw std::invalid_argument("similarity_matrix: scale must be finite and non-negative");
    const int c = static_cast<int>(positions.size());
    Matrix s(c, c, 0.0);
    for (int i = 0; i < c; ++i) {
        s(i, i) = 1.0;
        for (int j = i + 1; j < c; ++j) {
            const double v = kernel_value(kernel, lambda * distance(positions[i], positions[j]));
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

PriorStructure identity_prior(int cluster_count) {
    if (cluster_count <= 0)
        throw std::invalid_argument("identity_prior: cluster count must be positive");
    PriorStructure p;
    p.cluster_count = cluster_count;
    p.similarity = Matrix(cluster_count, cluster_count, 0.0);
    for (int i = 0; i < cluster_count; ++i) p.similarity(i, i) = 1.0;
    return p;
}

PriorStructure grid_prior(int rows, int cols, Kernel kernel, double lambda) {
    PriorStructure p;
    p.positions = build_grid(rows, cols);
    p.similarity = similarity_matrix(p.positions, kernel, lambda);
    p.cluster_count = rows * cols;
    return p;
}

PriorStructure custom_prior(std::vector<Vec2> positions, Matrix similarity) {
    const int c = similarity.rows();
    if (c <= 0 || similarity.cols() != c)
        throw std::invalid_argument("custom_prior: similarity must be square and non-empty");
    if (!positions.empty() && static_cast<int>(positions.size()) != c)
        throw std::invalid_argument("custom_prior: position count does not match similarity size");
    for (int i = 0; i < c; ++i) {
        if (similarity(i, i) != 1.0)
            throw std::invalid_argument("custom_prior: diagonal entries must be exactly 1");
        for (int j = 0; j < c; ++j) {
            const double v = similarity(i, j);
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("custom_prior: entries must lie in [0, 1]");
            if (std::abs(v - similarity(j, i)) > 1e-12)
                throw std::invalid_argument("custom_prior: similarity must be symmetric");
        }
    }
    PriorStructure p;
    p.cluster_count = c;
    p.positions = std::move(positions);
    p.similarity = std::move(similarity);
    return p;
}

double min_spacing(const std::vector<Vec2>& positions) {
    if (positions.size() < 2)
        throw std::invalid_argument("min_spacing: need at least two positions");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            best = std::min(best, distance(positions[i], positions[j]));
    return best;
}

SpectralEstimate spectral_radius(int dim, const std::function<void(const double*, double*)>& apply,
                                 int max_iterations, double tolerance) {
    if (dim <= 0)
        throw std::invalid_argument("spectral_radius: dimension must be positive");
    std::vector<double> v(dim), w(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = static_cast<double>(mix64(static_cast<std::uint64_t>(i) + 1) >> 11) * 0x1.0p-53 -
               0.5;

    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) {
        v[0] = 1.0;
        nv = 1.0;
    }
    for (double& x : v) x /= nv;

    double estimate = 0.0;
    SpectralEstimate est;
    for (int it = 1; it <= max_iterations; ++it) {
        est.iterations = it;
        apply(v.data(), w.data()); // w = A v, |v| = 1
        double nw = 0.0;
        for (double x : w) nw += x * x;
        nw = std::sqrt(nw);
        if (nw == 0.0) {
            est.value = 0.0;
            return est;
        }
        const double prev = estimate;
        estimate = nw; // sqrt(v . A^2 v): a lower bound that grows to the radius
        apply(w.data(), v.data()); // v = A^2 (old v)
        nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        if (nv == 0.0) break; // symmetric A cannot reach this with w != 0; bail safely
        for (double& x : v) x /= nv;
        if (it > 1 && std::abs(estimate - prev) <= tolerance * estimate) break;
    }
    est.value = estimate;
    return est;
}

SpectralEstimate spectral_radius(const Matrix& symmetric, int max_iterations, double tolerance) {
    if (symmetric.rows() != symmetric.cols() || symmetric.rows() == 0)
        throw std::invalid_argument("spectral_radius: matrix must be square and non-empty");
    const int n = symmetric.rows();
    return spectral_radius(
        n,
        [&](const double* in, double* out) {
            for (int i = 0; i < n; ++i) {
                const double* row = symmetric.row(i);
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += row[j] * in[j];
                out[i] = acc;
            }
        },
        max_iterations, tolerance);
}

SpectralEstimate graph_operator_radius(const Graph& g, int max_iterations, double tolerance) {
    const int n = g.vertex_count();
    return spectral_radius(
        n,
        [&](const double* in, double* out) {
            Matrix x(n, 1);
            for (int i = 0; i < n; ++i) x(i, 0) = in[i];
            Matrix y = b_apply(g, x);
            for (int i = 0; i < n; ++i) out[i] = y(i, 0);
        },
        max_iterations, tolerance);
}

} // namespace orgmod
