// Command-line front end: cluster / sweep / layout / animate / stats /
// crossings. Exit codes: 0 success, 1 bad input or usage, 2 numeric failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "orgmod/anneal.hpp"
#include "orgmod/errors.hpp"
#include "orgmod/graph.hpp"
#include "orgmod/io.hpp"
#include "orgmod/layout.hpp"
#include "orgmod/prior.hpp"
#include "orgmod/quality.hpp"
#include "orgmod/sweep.hpp"

namespace {

using namespace orgmod;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw std::invalid_argument("write failed on " + path);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::pair<int, int> parse_grid_shape(const std::string& text) {
    auto sep = text.find_first_of("xX");
    if (sep == std::string::npos || sep == 0 || sep + 1 == text.size())
        throw std::invalid_argument("grid must look like ROWSxCOLS, e.g. 3x3");
    int rows = 0;
    int cols = 0;
    try {
        size_t used = 0;
        rows = std::stoi(text.substr(0, sep), &used);
        if (used != sep) throw std::invalid_argument("");
        std::string tail = text.substr(sep + 1);
        cols = std::stoi(tail, &used);
        if (used != tail.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must look like ROWSxCOLS, e.g. 3x3");
    }
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid sides must be positive");
    return {rows, cols};
}

// Deterministic fallback picture for priors without positions: non-empty
// clusters start on a circle and relax force-directed against the induced
// graph. No randomness, so reruns always agree.
Layout induced_fr_layout(const Graph& g, const Clustering& c) {
    InducedGraph quotient = induced_graph(g, c);
    Layout lay;
    lay.kind = NodeKind::cluster;
    std::vector<int> glyph_of(static_cast<size_t>(c.cluster_count), -1);
    for (int k = 0; k < c.cluster_count; ++k) {
        if (quotient.sizes[static_cast<size_t>(k)] == 0) continue;
        glyph_of[static_cast<size_t>(k)] = static_cast<int>(lay.points.size());
        lay.ids.push_back(k);
        lay.sizes.push_back(quotient.sizes[static_cast<size_t>(k)]);
        lay.points.push_back({0.0, 0.0});
    }
    int glyphs = static_cast<int>(lay.points.size());
    double spread = std::max(1.0, std::sqrt(static_cast<double>(glyphs)));
    for (int i = 0; i < glyphs; ++i) {
        double angle = 2.0 * 3.14159265358979323846 * i / std::max(1, glyphs);
        lay.points[static_cast<size_t>(i)] = {spread * std::cos(angle), spread * std::sin(angle)};
    }
    for (int a = 0; a < c.cluster_count; ++a) {
        if (glyph_of[static_cast<size_t>(a)] < 0) continue;
        for (int b = a + 1; b < c.cluster_count; ++b) {
            if (glyph_of[static_cast<size_t>(b)] < 0) continue;
            double w = quotient.weights(a, b);
            if (w > 0.0)
                lay.edges.push_back({glyph_of[static_cast<size_t>(a)],
                                     glyph_of[static_cast<size_t>(b)], w});
        }
    }
    FrOptions fr;
    fr.iterations = 100;
    fr.ideal_length = 1.0;
    fr.initial_step = 0.5 * spread;
    return fr_refine(std::move(lay), fr);
}

Layout layout_for(const Graph& g, const Clustering& c, const PriorStructure& prior) {
    if (prior.has_positions()) return grid_layout(g, c, prior);
    return induced_fr_layout(g, c);
}

std::string layout_json(const Layout& lay) {
    std::string out = "{\"points\":[";
    for (size_t i = 0; i < lay.points.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += full(lay.points[i].x);
        out += ',';
        out += full(lay.points[i].y);
        out += ']';
    }
    out += "],\"edges\":[";
    for (size_t i = 0; i < lay.edges.size(); ++i) {
        if (i) out += ',';
        out += '[';
        out += std::to_string(lay.edges[i].a);
        out += ',';
        out += std::to_string(lay.edges[i].b);
        out += ']';
    }
    out += "]}\n";
    return out;
}

int layout_crossings(const Layout& lay) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(lay.edges.size());
    for (const auto& e : lay.edges) pairs.emplace_back(e.a, e.b);
    return count_crossings(lay.points, pairs);
}

void check_graph_matches(const Graph& g, const ParsedResult& res) {
    if (g.vertex_count() != res.vertices || g.edge_count() != res.edges ||
        std::abs(g.total_weight() - res.total_weight) > 1e-9 * std::max(1.0, res.total_weight))
        throw std::invalid_argument("graph file does not match the one the result was computed on");
}

// ---- cluster ---------------------------------------------------------

struct ClusterArgs {
    std::string graph_path;
    std::string format = "auto";
    std::string grid;
    int clusters = 0;
    std::string s_matrix_path;
    std::string positions_path;
    Kernel kernel = Kernel::exponential;
    double lambda = -1.0;
    AnnealConfig anneal;
    std::string json_path;
    std::string svg_path;
};

int run_cluster(const ClusterArgs& args) {
    int chosen = (!args.grid.empty() ? 1 : 0) + (args.clusters > 0 ? 1 : 0) +
                 (!args.s_matrix_path.empty() ? 1 : 0);
    if (chosen != 1)
        throw std::invalid_argument("pick exactly one of --grid, --clusters, --s-matrix");
    if (!args.positions_path.empty() && args.s_matrix_path.empty())
        throw std::invalid_argument("--positions only applies with --s-matrix");

    Graph g = load_graph(args.graph_path, args.format);

    PriorSpec spec;
    if (!args.grid.empty()) {
        auto [rows, cols] = parse_grid_shape(args.grid);
        spec.type = PriorSpec::Type::grid;
        spec.rows = rows;
        spec.cols = cols;
        spec.kernel = args.kernel;
        spec.lambda = args.lambda >= 0.0 ? args.lambda : default_lambdas(args.kernel)[2];
    } else if (args.clusters > 0) {
        spec.type = PriorSpec::Type::identity;
        spec.clusters = args.clusters;
    } else {
        spec.type = PriorSpec::Type::custom;
        spec.similarity = parse_matrix(read_file(args.s_matrix_path));
        if (!args.positions_path.empty()) {
            spec.positions = parse_positions(read_file(args.positions_path));
            if (static_cast<int>(spec.positions.size()) != spec.similarity.rows())
                throw std::invalid_argument("positions count does not match similarity size");
        }
    }
    PriorStructure prior = make_prior(spec);

    AnnealConfig cfg = args.anneal;
    cfg.validate();
    AnnealResult res = anneal(g, prior, cfg);
    double q = modularity(g, res.clustering);
    double o = organized_modularity(g, res.clustering, prior);

    std::cout << "graph: " << g.vertex_count() << " vertices, " << g.edge_count()
              << " edges, total weight " << num(g.total_weight()) << "\n";
    if (spec.type == PriorSpec::Type::grid)
        std::cout << "prior: " << spec.rows << "x" << spec.cols << " grid, "
                  << (spec.kernel == Kernel::exponential ? "exponential" : "linear")
                  << " kernel, lambda " << num(spec.lambda) << "\n";
    else if (spec.type == PriorSpec::Type::identity)
        std::cout << "prior: identity, " << spec.clusters << " clusters\n";
    else
        std::cout << "prior: custom similarity, " << spec.similarity.rows() << " clusters\n";
    int steps = cfg.outer_steps > 0 ? cfg.outer_steps : g.vertex_count();
    std::cout << "critical temperature " << num(res.critical_temperature) << ", " << steps
              << " outer steps, seed " << cfg.seed << "\n";
    std::vector<int> sizes = cluster_sizes(res.clustering);
    std::cout << "non-empty clusters: " << nonempty_clusters(res.clustering) << " of "
              << res.clustering.cluster_count << " | sizes";
    for (int s : sizes) std::cout << ' ' << s;
    std::cout << "\n";
    std::cout << "modularity " << full(q) << "\n";
    std::cout << "organized modularity " << full(o) << "\n";
    std::cout << "transitions (" << res.transitions.size() << "):";
    for (double t : res.transitions) std::cout << " T=" << num(t);
    std::cout << "\n";

    if (!args.json_path.empty()) {
        write_file(args.json_path, write_result_json(g, spec, cfg, res, q, o));
        std::cout << "wrote " << args.json_path << "\n";
    }
    if (!args.svg_path.empty()) {
        Layout lay = layout_for(g, res.clustering, prior);
        write_file(args.svg_path, render_svg(lay));
        std::cout << "wrote " << args.svg_path << " (" << layout_crossings(lay)
                  << " crossings)\n";
    }
    return 0;
}

// ---- sweep -----------------------------------------------------------

struct SweepArgs {
    std::string graph_path;
    std::string format = "auto";
    std::string config_path;
    std::string out_path = "report.json";
    int parallel = 0;
};

int run_sweep_cmd(const SweepArgs& args) {
    Graph g = load_graph(args.graph_path, args.format);
    SweepConfig cfg;
    if (!args.config_path.empty()) cfg = parse_sweep_config(read_file(args.config_path));
    cfg.validate();
    int parallel = args.parallel > 0
                       ? args.parallel
                       : std::max(1u, std::thread::hardware_concurrency());
    RunReport report = run_sweep(g, cfg, parallel);
    write_file(args.out_path, write_report_json(g, cfg, report));

    std::cout << "sweep: " << report.rows.size() << " runs in " << num(report.elapsed_ms / 1000.0)
              << " s (" << parallel << " threads)\n";
    if (report.baseline_row >= 0) {
        const SweepRow& base = report.rows[static_cast<size_t>(report.baseline_row)];
        std::cout << "baseline " << base.id << ": Q=" << num(base.modularity_value)
                  << " crossings=" << base.crossings << "\n";
    }
    std::vector<const SweepRow*> front;
    for (const auto& row : report.rows)
        if (row.pareto) front.push_back(&row);
    std::sort(front.begin(), front.end(), [](const SweepRow* a, const SweepRow* b) {
        if (a->modularity_value != b->modularity_value)
            return a->modularity_value > b->modularity_value;
        return a->crossings < b->crossings;
    });
    std::cout << "pareto front (" << front.size() << "):\n";
    for (const SweepRow* row : front)
        std::cout << "  " << row->id << "  Q=" << num(row->modularity_value)
                  << "  crossings=" << row->crossings << "\n";
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

// ---- layout ----------------------------------------------------------

struct LayoutArgs {
    std::string result_path;
    std::string graph_path;
    std::string format = "auto";
    std::string svg_path;
    std::string dot_path;
    std::string json_path;
};

int run_layout(const LayoutArgs& args) {
    ParsedResult res = parse_result_json(read_file(args.result_path));
    Graph g = load_graph(args.graph_path, args.format);
    check_graph_matches(g, res);
    PriorStructure prior = make_prior(res.prior);
    Layout lay = layout_for(g, res.clustering, prior);
    std::cout << lay.points.size() << " glyphs, " << lay.edges.size() << " edges, "
              << layout_crossings(lay) << " crossings\n";
    if (!args.svg_path.empty()) {
        write_file(args.svg_path, render_svg(lay));
        std::cout << "wrote " << args.svg_path << "\n";
    }
    if (!args.dot_path.empty()) {
        write_file(args.dot_path, render_dot(induced_graph(g, res.clustering)));
        std::cout << "wrote " << args.dot_path << "\n";
    }
    if (!args.json_path.empty()) {
        write_file(args.json_path, layout_json(lay));
        std::cout << "wrote " << args.json_path << "\n";
    }
    return 0;
}

// ---- animate -----------------------------------------------------------

struct AnimateArgs {
    std::string result_path;
    std::string graph_path;
    std::string format = "auto";
    std::string out_dir = "frames";
    double cut = 0.05;
    int fr_iterations = 20;
};

int run_animate(const AnimateArgs& args) {
    ParsedResult res = parse_result_json(read_file(args.result_path));
    Graph g = load_graph(args.graph_path, args.format);
    check_graph_matches(g, res);
    PriorStructure prior = make_prior(res.prior);
    if (!prior.has_positions())
        throw std::invalid_argument("animate needs a prior with glyph positions");

    // The result file stores only scalar trail data, and the run is
    // deterministic anyway, so the expectations are regenerated in place.
    AnnealResult rerun = anneal(g, prior, res.config);
    FuzzyFilm film = fuzzy_frames(g, rerun.trail, prior, args.cut, args.fr_iterations);
    if (film.frames.empty()) throw std::invalid_argument("no snapshots carry expectations");

    std::filesystem::create_directories(args.out_dir);
    for (size_t i = 0; i < film.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
        write_file((std::filesystem::path(args.out_dir) / name).string(),
                   render_svg(film.frames[i].layout));
    }
    std::cout << film.frames.size() << " frames in " << args.out_dir << "/ ("
              << film.skipped_snapshots << " snapshots lacked stored expectations)\n";
    std::cout << "first T=" << num(film.frames.front().temperature)
              << ", last T=" << num(film.frames.back().temperature) << "\n";
    return 0;
}

// ---- stats -------------------------------------------------------------

int run_stats(const std::string& path, const std::string& format) {
    Graph g = load_graph(path, format);
    std::cout << "vertices      " << g.vertex_count() << "\n";
    std::cout << "edges         " << g.edge_count() << "\n";
    std::cout << "total weight  " << num(g.total_weight()) << "\n";
    try {
        double d = density(g);
        std::cout << "density       " << full(d) << " (" << num(100.0 * d) << "%)\n";
    } catch (const std::invalid_argument&) {
        std::cout << "density       undefined\n";
    }
    try {
        double t = transitivity(g);
        std::cout << "transitivity  " << full(t) << " (" << num(100.0 * t) << "%)\n";
    } catch (const std::invalid_argument&) {
        std::cout << "transitivity  undefined\n";
    }
    return 0;
}

// ---- crossings -----------------------------------------------------------

int run_crossings(const std::string& path) {
    LayoutFile file = parse_layout_json(read_file(path));
    std::cout << count_crossings(file.points, file.edges) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"organized-modularity graph clustering over spatial cluster priors"};
    app.require_subcommand(1);

    std::map<std::string, Kernel> kernel_names{{"exponential", Kernel::exponential},
                                               {"exp", Kernel::exponential},
                                               {"linear", Kernel::linear},
                                               {"lin", Kernel::linear}};
    const char* format_help = "input format: auto, edges, pajek, gml";

    ClusterArgs cluster_args;
    CLI::App* cluster_cmd =
        app.add_subcommand("cluster", "anneal one clustering and report its quality");
    cluster_cmd->add_option("graph", cluster_args.graph_path, "graph file")->required();
    cluster_cmd->add_option("--format", cluster_args.format, format_help);
    cluster_cmd->add_option("--grid", cluster_args.grid, "grid prior shape, e.g. 3x3");
    cluster_cmd->add_option("--clusters", cluster_args.clusters,
                            "identity prior with this many clusters");
    cluster_cmd->add_option("--s-matrix", cluster_args.s_matrix_path,
                            "file with a custom cluster-similarity matrix");
    cluster_cmd->add_option("--positions", cluster_args.positions_path,
                            "cluster positions (x y per line) for a custom matrix");
    cluster_cmd
        ->add_option("--kernel", cluster_args.kernel, "similarity kernel for --grid")
        ->transform(CLI::CheckedTransformer(kernel_names, CLI::ignore_case));
    cluster_cmd->add_option("--lambda", cluster_args.lambda,
                            "kernel scale (default: grid neighbors at similarity 1/2)");
    cluster_cmd->add_option("--seed", cluster_args.anneal.seed, "noise seed");
    cluster_cmd->add_option("--outer", cluster_args.anneal.outer_steps,
                            "outer temperature steps (default: one per vertex)");
    cluster_cmd->add_option("--alpha", cluster_args.anneal.start_factor,
                            "start temperature as a multiple of the critical one");
    cluster_cmd->add_option("--final-ratio", cluster_args.anneal.final_ratio,
                            "final temperature as a fraction of the critical one");
    cluster_cmd->add_option("--em-iters", cluster_args.anneal.em_max_iterations,
                            "inner iteration cap per temperature");
    cluster_cmd->add_option("--em-tol", cluster_args.anneal.em_tolerance,
                            "mean-squared field change tolerance (0: machine default)");
    cluster_cmd->add_option("--stride", cluster_args.anneal.snapshot_stride,
                            "keep every n-th trail snapshot");
    cluster_cmd->add_option("--json", cluster_args.json_path, "write the full result here");
    cluster_cmd->add_option("--svg", cluster_args.svg_path, "render the cluster layout here");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run a prior/cluster-count sweep and write a report");
    sweep_cmd->add_option("graph", sweep_args.graph_path, "graph file")->required();
    sweep_cmd->add_option("--format", sweep_args.format, format_help);
    sweep_cmd->add_option("--config", sweep_args.config_path, "sweep configuration JSON");
    sweep_cmd->add_option("--out", sweep_args.out_path, "report path (default report.json)");
    sweep_cmd->add_option("--parallel", sweep_args.parallel,
                          "worker threads (default: hardware concurrency)");

    LayoutArgs layout_args;
    CLI::App* layout_cmd =
        app.add_subcommand("layout", "draw the cluster-level picture of a saved result");
    layout_cmd->add_option("result", layout_args.result_path, "result JSON")->required();
    layout_cmd->add_option("graph", layout_args.graph_path, "graph file")->required();
    layout_cmd->add_option("--format", layout_args.format, format_help);
    layout_cmd->add_option("--svg", layout_args.svg_path, "write an SVG rendering here");
    layout_cmd->add_option("--dot", layout_args.dot_path, "write a Graphviz file here");
    layout_cmd->add_option("--json", layout_args.json_path,
                           "write the points/edges layout JSON here");

    AnimateArgs animate_args;
    CLI::App* animate_cmd = app.add_subcommand(
        "animate", "render the annealing trail as per-temperature SVG frames");
    animate_cmd->add_option("result", animate_args.result_path, "result JSON")->required();
    animate_cmd->add_option("graph", animate_args.graph_path, "graph file")->required();
    animate_cmd->add_option("--format", animate_args.format, format_help);
    animate_cmd->add_option("--out", animate_args.out_dir, "frame directory (default frames)");
    animate_cmd->add_option("--cut", animate_args.cut,
                            "collapse distance as a fraction of the grid spacing");
    animate_cmd->add_option("--fr-iters", animate_args.fr_iterations,
                            "force-directed iterations per frame");

    std::string stats_path;
    std::string stats_format = "auto";
    CLI::App* stats_cmd = app.add_subcommand("stats", "print basic graph statistics");
    stats_cmd->add_option("graph", stats_path, "graph file")->required();
    stats_cmd->add_option("--format", stats_format, format_help);

    std::string crossings_path;
    CLI::App* crossings_cmd =
        app.add_subcommand("crossings", "count edge crossings in a layout JSON");
    crossings_cmd->add_option("layout", crossings_path, "layout JSON with points and edges")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cluster_cmd->parsed()) return run_cluster(cluster_args);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_args);
        if (layout_cmd->parsed()) return run_layout(layout_args);
        if (animate_cmd->parsed()) return run_animate(animate_args);
        if (stats_cmd->parsed()) return run_stats(stats_path, stats_format);
        if (crossings_cmd->parsed()) return run_crossings(crossings_path);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
