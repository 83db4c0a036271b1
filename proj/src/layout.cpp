#include "orgmod/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orgmod {
namespace {

// Accumulates cluster-level edges (a < b, weight = summed original weight)
// for an arbitrary vertex -> glyph membership.
std::vector<Layout::Edge> edges_between_groups(const Graph& g, const std::vector<int>& member,
                                               int group_count) {
    Matrix acc(group_count, group_count, 0.0);
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int e = g.row_begin(i); e < g.row_end(i); ++e) {
            const int j = g.neighbor(e);
            if (j <= i) continue;
            const int a = member[i], b = member[j];
            if (a == b) continue;
            acc(std::min(a, b), std::max(a, b)) += g.weight(e);
        }
    std::vector<Layout::Edge> edges;
    for (int a = 0; a < group_count; ++a)
        for (int b = a + 1; b < group_count; ++b)
            if (acc(a, b) > 0.0) edges.push_back({a, b, acc(a, b)});
    return edges;
}

} // namespace

Layout grid_layout(const Graph& g, const Clustering& c, const PriorStructure& prior) {
    validate_clustering(c, g.vertex_count());
    if (prior.cluster_count != c.cluster_count)
        throw std::invalid_argument("grid_layout: clustering and prior disagree on cluster count");
    if (!prior.has_positions())
        throw std::invalid_argument("grid_layout: prior carries no positions");

    InducedGraph quotient = induced_graph(g, c);
    // Non-empty clusters only; glyph order follows cluster id.
    std::vector<int> glyph_of(c.cluster_count, -1);
    Layout layout;
    layout.kind = NodeKind::cluster;
    for (int k = 0; k < c.cluster_count; ++k) {
        if (quotient.sizes[k] == 0) continue;
        glyph_of[k] = static_cast<int>(layout.points.size());
        layout.points.push_back(prior.positions[k]);
        layout.sizes.push_back(quotient.sizes[k]);
        layout.ids.push_back(k);
    }
    for (int a = 0; a < c.cluster_count; ++a)
        for (int b = a + 1; b < c.cluster_count; ++b)
            if (glyph_of[a] >= 0 && glyph_of[b] >= 0 && quotient.weights(a, b) > 0.0)
                layout.edges.push_back({glyph_of[a], glyph_of[b], quotient.weights(a, b)});
    return layout;
}

std::vector<Vec2> expected_positions(const Matrix& expectation, const PriorStructure& prior) {
    if (!prior.has_positions())
        throw std::invalid_argument("expected_positions: prior carries no positions");
    if (expectation.cols() != prior.cluster_count)
        throw std::invalid_argument("expected_positions: expectation columns do not match prior");
    std::vector<Vec2> out(expectation.rows());
    for (int i = 0; i < expectation.rows(); ++i) {
        const double* row = expectation.row(i);
        Vec2 p;
        for (int k = 0; k < expectation.cols(); ++k) p = p + row[k] * prior.positions[k];
        out[i] = p;
    }
    return out;
}

Grouping collapse_positions(const std::vector<Vec2>& points, double cut_distance) {
    const int n = static_cast<int>(points.size());
    if (n == 0)
        throw std::invalid_argument("collapse_positions: no points");
    if (!(cut_distance >= 0.0))
        throw std::invalid_argument("collapse_positions: cut must be non-negative");

    // Lance-Williams complete linkage over an explicit distance table;
    // quadratic memory is fine at cluster-glyph scale, and the full scan
    // keeps the smallest-index tie rule exact.
    std::vector<std::vector<int>> members(n);
    std::vector<bool> alive(n, true);
    Matrix dist(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        members[i] = {i};
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(points[i], points[j]);
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }

    while (true) {
        int best_i = -1, best_j = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (!alive[j]) continue;
                if (dist(i, j) < best) {
                    best = dist(i, j);
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0 || best > cut_distance) break;
        // Merge j into i (i < j); complete linkage keeps the max distance, so
        // the merged diameter is exactly the linkage value just accepted.
        for (int k = 0; k < n; ++k) {
            if (!alive[k] || k == best_i || k == best_j) continue;
            const double d = std::max(dist(best_i, k), dist(best_j, k));
            dist(best_i, k) = d;
            dist(k, best_i) = d;
        }
        members[best_i].insert(members[best_i].end(), members[best_j].begin(),
                               members[best_j].end());
        members[best_j].clear();
        alive[best_j] = false;
    }

    Grouping out;
    out.membership.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        std::sort(members[i].begin(), members[i].end());
        const int gid = static_cast<int>(out.groups.size());
        Vec2 centroid;
        for (int v : members[i]) {
            out.membership[v] = gid;
            centroid = centroid + points[v];
        }
        out.centroids.push_back((1.0 / members[i].size()) * centroid);
        out.groups.push_back(std::move(members[i]));
    }
    return out;
}

Layout fr_refine(Layout layout, const FrOptions& options) {
    if (options.iterations < 0)
        throw std::invalid_argument("fr_refine: negative iteration count");
    if (!(options.ideal_length > 0.0))
        throw std::invalid_argument("fr_refine: ideal length must be positive");
    const int n = static_cast<int>(layout.points.size());
    if (n < 2 || options.iterations == 0) return layout;

    const double k = options.ideal_length;
    std::vector<Vec2> disp(n);
    for (int it = 0; it < options.iterations; ++it) {
        std::fill(disp.begin(), disp.end(), Vec2{});
        // Pairwise repulsion k^2 / d; exactly coincident glyphs get a fixed
        // horizontal separation by index order (deterministic, and applied
        // antisymmetrically so mirror-symmetric inputs stay symmetric).
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Vec2 delta = layout.points[i] - layout.points[j];
                double d = norm(delta);
                if (d < 1e-12) {
                    delta = {-1.0, 0.0};
                    d = 1e-6 * k;
                } else {
                    delta = (1.0 / d) * delta;
                }
                const Vec2 push = (k * k / d) * delta;
                disp[i] = disp[i] + push;
                disp[j] = disp[j] - push;
            }
        }
        // Attraction d^2 / k along edges.
        for (const auto& e : layout.edges) {
            Vec2 delta = layout.points[e.a] - layout.points[e.b];
            const double d = norm(delta);
            if (d < 1e-12) continue;
            const Vec2 pull = (d / k) * delta;
            disp[e.a] = disp[e.a] - pull;
            disp[e.b] = disp[e.b] + pull;
        }
        // Linear cooling of the displacement cap; synchronous application.
        const double cap = options.initial_step *
                           (static_cast<double>(options.iterations - it) / options.iterations);
        for (int i = 0; i < n; ++i) {
            const double d = norm(disp[i]);
            const double scale = d > cap ? cap / d : 1.0;
            layout.points[i] = layout.points[i] + scale * disp[i];
        }
    }
    return layout;
}

FuzzyFilm fuzzy_frames(const Graph& g, const AnnealTrail& trail, const PriorStructure& prior,
                       double cut_fraction, int fr_iterations) {
    if (!prior.has_positions())
        throw std::invalid_argument("fuzzy_frames: prior carries no positions");
    if (!(cut_fraction >= 0.0))
        throw std::invalid_argument("fuzzy_frames: cut fraction must be non-negative");
    const double spacing = min_spacing(prior.positions);
    const double cut = cut_fraction * spacing;

    FuzzyFilm film;
    for (const auto& snap : trail.snapshots) {
        if (!snap.expectation) {
            ++film.skipped_snapshots;
            continue;
        }
        std::vector<Vec2> pts = expected_positions(*snap.expectation, prior);
        Grouping grouping = collapse_positions(pts, cut);

        FuzzyFrame frame;
        frame.temperature = snap.temperature;
        frame.membership = grouping.membership;
        frame.layout.kind = NodeKind::collapsed_group;
        frame.layout.points = grouping.centroids;
        for (std::size_t gidx = 0; gidx < grouping.groups.size(); ++gidx) {
            frame.layout.sizes.push_back(static_cast<int>(grouping.groups[gidx].size()));
            frame.layout.ids.push_back(static_cast<int>(gidx));
        }
        frame.layout.edges =
            edges_between_groups(g, grouping.membership, static_cast<int>(grouping.groups.size()));

        FrOptions opts;
        opts.iterations = fr_iterations;
        opts.ideal_length = 0.5 * spacing;
        opts.initial_step = 0.1 * spacing;
        frame.layout = fr_refine(std::move(frame.layout), opts);
        film.frames.push_back(std::move(frame));
    }
    return film;
}

} // namespace orgmod
