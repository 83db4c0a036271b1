#pragma once

#include <string>
#include <vector>

#include "orgmod/anneal.hpp"
#include "orgmod/errors.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/layout.hpp"
#include "orgmod/prior.hpp"

namespace orgmod {

// ---- graph readers ---------------------------------------------------
//
// All parsers reject malformed input with a line-bearing ParseError; none
// skip silently. Vertex identifiers become dense indices in first-appearance
// order and the original spelling is kept for labeling.

// Lines of `source target [weight]`; `#` starts a comment line; blanks
// ignored. Weight defaults to 1.
Graph parse_edge_list(const std::string& text);

// Pajek subset: one *Vertices section (optional quoted labels), then any mix
// of *Edges / *Arcs sections with 1-based endpoints. Arcs are symmetrized by
// summation: an arc each way with weight 1 yields one undirected edge of
// weight 2. Declared-but-unreferenced vertices stay as isolated vertices.
Graph parse_pajek(const std::string& text);

// GML subset: `graph [ node [ id .. label .. ] edge [ source .. target ..
// value .. ] ]`. Unknown keys and nested blocks are ignored; an edge naming
// an undeclared id is an error. Directed files are symmetrized by summation
// because every arc record feeds the undirected accumulator.
Graph parse_gml(const std::string& text);

// Reads a file and dispatches on extension: .net -> pajek, .gml -> gml,
// anything else -> edge list. format: "auto", "edges", "pajek", "gml".
Graph load_graph(const std::string& path, const std::string& format = "auto");

// Whitespace-separated numeric matrix, one row per line; must be square.
Matrix parse_matrix(const std::string& text);

// Lines of `x y`, one position per cluster.
std::vector<Vec2> parse_positions(const std::string& text);

// ---- serializable prior description -----------------------------------

// Enough to rebuild a PriorStructure from a result file alone; custom priors
// embed their matrix (and positions, when given).
struct PriorSpec {
    enum class Type { identity, grid, custom };
    Type type = Type::identity;
    int clusters = 0; // identity
    int rows = 0;     // grid
    int cols = 0;
    Kernel kernel = Kernel::exponential;
    double lambda = 0.0;
    Matrix similarity;           // custom
    std::vector<Vec2> positions; // custom, optional

    int cluster_count() const;
};

PriorStructure make_prior(const PriorSpec& spec);

// ---- result serialization ----------------------------------------------
//
// Fixed key order, floats at 17 significant digits: writing is hand-rolled
// so parse -> rewrite is byte-identical and every double round-trips
// exactly. Wall-clock timing is deliberately absent; identical (input,
// config, seed) must serialize identically.

std::string write_result_json(const Graph& g, const PriorSpec& prior, const AnnealConfig& config,
                              const AnnealResult& result, double modularity_value,
                              double organized_value);

struct ParsedResult {
    int vertices = 0;
    int edges = 0;
    double total_weight = 0.0;
    PriorSpec prior;
    AnnealConfig config;
    Clustering clustering;
    int nonempty = 0;
    double modularity_value = 0.0;
    double organized_value = 0.0;
    double critical_temperature = 0.0;
    std::vector<double> transitions;
    // Scalar trail; expectations are never serialized.
    std::vector<double> trail_temperatures;
    std::vector<double> trail_expected_modularity;
    std::vector<int> trail_em_iterations;
    std::vector<std::string> labels;
};

ParsedResult parse_result_json(const std::string& text);
std::string write_result_json(const ParsedResult& parsed);

// Simple point/edge set for the standalone crossing counter:
// {"points": [[x, y], ...], "edges": [[a, b], ...]}.
struct LayoutFile {
    std::vector<Vec2> points;
    std::vector<std::pair<int, int>> edges;
};

LayoutFile parse_layout_json(const std::string& text);

// ---- renderers -----------------------------------------------------------

// Self-contained SVG: glyph area scales with represented vertex count,
// stroke width with log(1 + weight) normalized into [0.5, 4] px, viewBox
// fitted with a 10% margin.
std::string render_svg(const Layout& layout);

// Graphviz `graph { ... }` of the induced cluster graph; empty clusters
// omitted, weights at full precision.
std::string render_dot(const InducedGraph& induced, const std::vector<std::string>& labels = {});

} // namespace orgmod
