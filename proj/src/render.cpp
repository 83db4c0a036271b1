#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "orgmod/io.hpp"

namespace orgmod {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string render_svg(const Layout& layout) {
    if (layout.points.empty())
        throw std::invalid_argument("render_svg: empty layout");

    double min_x = layout.points[0].x, max_x = min_x;
    double min_y = layout.points[0].y, max_y = min_y;
    for (const auto& p : layout.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double span_x = max_x - min_x;
    double span_y = max_y - min_y;
    const double span = std::max({span_x, span_y, 1e-9});
    if (span_x <= 0.0) span_x = span;
    if (span_y <= 0.0) span_y = span;

    // 10% margin per side, content mapped to an 800px-wide canvas; y flips
    // so larger grid rows render lower.
    const double margin_x = 0.1 * span_x;
    const double margin_y = 0.1 * span_y;
    const double width = 800.0;
    const double scale = width / (span_x + 2 * margin_x);
    const double height = (span_y + 2 * margin_y) * scale;
    auto sx = [&](double x) { return (x - min_x + margin_x) * scale; };
    auto sy = [&](double y) { return height - (y - min_y + margin_y) * scale; };

    // Glyph area tracks represented vertex count; the largest glyph gets a
    // fixed on-canvas radius.
    int max_size = 1;
    for (int s : layout.sizes) max_size = std::max(max_size, s);
    auto radius = [&](int size) {
        return std::max(4.0, 48.0 * std::sqrt(static_cast<double>(size) / max_size));
    };

    double lo = 0.0, hi = 0.0;
    if (!layout.edges.empty()) {
        lo = hi = std::log1p(layout.edges[0].weight);
        for (const auto& e : layout.edges) {
            lo = std::min(lo, std::log1p(e.weight));
            hi = std::max(hi, std::log1p(e.weight));
        }
    }
    auto stroke = [&](double w) {
        if (hi <= lo) return 2.0;
        return 0.5 + 3.5 * (std::log1p(w) - lo) / (hi - lo);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    for (const auto& e : layout.edges) {
        out += "  <line x1=\"" + num(sx(layout.points[e.a].x)) + "\" y1=\"" +
               num(sy(layout.points[e.a].y)) + "\" x2=\"" + num(sx(layout.points[e.b].x)) +
               "\" y2=\"" + num(sy(layout.points[e.b].y)) + "\" stroke=\"#5b6770\" stroke-width=\"" +
               num(stroke(e.weight)) + "\"/>\n";
    }
    for (std::size_t i = 0; i < layout.points.size(); ++i) {
        const int size = i < layout.sizes.size() ? layout.sizes[i] : 1;
        const int id = i < layout.ids.size() ? layout.ids[i] : static_cast<int>(i);
        out += "  <circle cx=\"" + num(sx(layout.points[i].x)) + "\" cy=\"" +
               num(sy(layout.points[i].y)) + "\" r=\"" + num(radius(size)) +
               "\" fill=\"#4d88c4\" fill-opacity=\"0.85\" stroke=\"#1d3b5c\" stroke-width=\"1.5\">" +
               "<title>cluster " + std::to_string(id) + " (" + std::to_string(size) +
               " vertices)</title></circle>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string render_dot(const InducedGraph& induced, const std::vector<std::string>& labels) {
    const int c = induced.weights.rows();
    if (!labels.empty() && static_cast<int>(labels.size()) != c)
        throw std::invalid_argument("render_dot: label count does not match cluster count");

    int max_size = 1;
    for (int s : induced.sizes) max_size = std::max(max_size, s);

    std::string out = "graph clusters {\n  node [shape=circle];\n";
    for (int k = 0; k < c; ++k) {
        if (induced.sizes[k] == 0) continue;
        const std::string label = labels.empty() ? std::to_string(k) : labels[k];
        const double w = 0.4 + std::sqrt(static_cast<double>(induced.sizes[k]) / max_size);
        out += "  " + std::to_string(k) + " [label=\"" + label + "\", width=" + num(w) + "];\n";
    }
    for (int a = 0; a < c; ++a)
        for (int b = a + 1; b < c; ++b)
            if (induced.sizes[a] > 0 && induced.sizes[b] > 0 && induced.weights(a, b) > 0.0)
                out += "  " + std::to_string(a) + " -- " + std::to_string(b) +
                       " [weight=" + full(induced.weights(a, b)) + "];\n";
    out += "}\n";
    return out;
}

} // namespace orgmod
