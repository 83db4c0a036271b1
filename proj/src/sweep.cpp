#include "orgmod/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "orgmod/layout.hpp"
#include "orgmod/quality.hpp"

namespace orgmod {
namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t& state) {
    state = mix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void strip_expectations(AnnealResult& r) {
    for (auto& snap : r.trail.snapshots) snap.expectation.reset();
    r.final_expectation = Matrix();
}

std::vector<std::pair<int, int>> layout_edge_pairs(const Layout& layout) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(layout.edges.size());
    for (const auto& e : layout.edges) pairs.emplace_back(e.a, e.b);
    return pairs;
}

// The "two phases" layout: random glyph positions, full-strength
// force-directed run, fewest crossings over 10 restarts.
int baseline_crossings(const Graph& g, const Clustering& c, std::uint64_t seed) {
    InducedGraph quotient = induced_graph(g, c);
    Layout base;
    base.kind = NodeKind::cluster;
    for (int k = 0; k < c.cluster_count; ++k) {
        if (quotient.sizes[k] == 0) continue;
        base.sizes.push_back(quotient.sizes[k]);
        base.ids.push_back(k);
    }
    const int glyphs = static_cast<int>(base.sizes.size());
    std::vector<int> glyph_of(c.cluster_count, -1);
    for (int i = 0; i < glyphs; ++i) glyph_of[base.ids[i]] = i;
    for (int a = 0; a < c.cluster_count; ++a)
        for (int b = a + 1; b < c.cluster_count; ++b)
            if (glyph_of[a] >= 0 && glyph_of[b] >= 0 && quotient.weights(a, b) > 0.0)
                base.edges.push_back({glyph_of[a], glyph_of[b], quotient.weights(a, b)});

    const double spread = std::sqrt(static_cast<double>(glyphs));
    FrOptions opts;
    opts.iterations = 100;
    opts.ideal_length = 1.0;
    opts.initial_step = 0.1 * std::max(spread, 1.0);

    int best = -1;
    std::uint64_t state = mix64(seed ^ 0xba5e11aeULL);
    for (int restart = 0; restart < 10; ++restart) {
        Layout trial = base;
        trial.points.resize(glyphs);
        for (int i = 0; i < glyphs; ++i)
            trial.points[i] = {spread * uniform01(state), spread * uniform01(state)};
        trial = fr_refine(std::move(trial), opts);
        const int crossings = count_crossings(trial.points, layout_edge_pairs(trial));
        if (best < 0 || crossings < best) best = crossings;
    }
    return best;
}

const char* kernel_name(Kernel k) {
    return k == Kernel::exponential ? "exponential" : "linear";
}

} // namespace

std::vector<double> default_lambdas(Kernel k) {
    // Neighbor similarity targets 0, 0.25, 0.5, 0.75 at grid distance 1.
    if (k == Kernel::linear) return {1.0, 0.75, 0.5, 0.25};
    std::vector<double> out;
    for (double target : {0.01, 0.25, 0.5, 0.75}) out.push_back(std::sqrt(-std::log(target)));
    return out;
}

void SweepConfig::validate() const {
    if (grids.empty() && cluster_min > cluster_max)
        throw std::invalid_argument("sweep config: nothing to run");
    for (auto [r, c] : grids)
        if (r <= 0 || c <= 0)
            throw std::invalid_argument("sweep config: grid dimensions must be positive");
    if (cluster_min < 1)
        throw std::invalid_argument("sweep config: cluster_min must be at least 1");
    if (seeds_per_config < 1)
        throw std::invalid_argument("sweep config: seeds_per_config must be positive");
    anneal.validate();
}

const std::vector<double>& SweepConfig::lambdas(Kernel k) const {
    return k == Kernel::exponential ? exponential_lambdas : linear_lambdas;
}

RunReport run_sweep(const Graph& g, const SweepConfig& user_config, int parallelism) {
    SweepConfig config = user_config;
    if (config.exponential_lambdas.empty())
        config.exponential_lambdas = default_lambdas(Kernel::exponential);
    if (config.linear_lambdas.empty()) config.linear_lambdas = default_lambdas(Kernel::linear);
    config.validate();
    if (parallelism < 1) parallelism = 1;

    const auto t_start = std::chrono::steady_clock::now();

    // Materialize the row plan up front; row index alone determines the seed.
    RunReport report;
    for (auto [rows, cols] : config.grids)
        for (Kernel kernel : config.kernels)
            for (double lambda : config.lambdas(kernel))
                for (int s = 0; s < config.seeds_per_config; ++s) {
                    SweepRow row;
                    row.method = "organized";
                    row.grid_rows = rows;
                    row.grid_cols = cols;
                    row.kernel = kernel;
                    row.lambda = lambda;
                    row.clusters = rows * cols;
                    row.seed_index = s;
                    row.id = "g" + std::to_string(rows) + "x" + std::to_string(cols) + "-" +
                             (kernel == Kernel::exponential ? "exp" : "lin") + "-l" +
                             fmt_short(lambda) + "-s" + std::to_string(s);
                    report.rows.push_back(std::move(row));
                }
    for (int c = config.cluster_min; c <= config.cluster_max; ++c)
        for (int s = 0; s < config.seeds_per_config; ++s) {
            SweepRow row;
            row.method = "identity";
            row.clusters = c;
            row.seed_index = s;
            row.id = "c" + std::to_string(c) + "-s" + std::to_string(s);
            report.rows.push_back(std::move(row));
        }
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        report.rows[i].seed = mix64(config.anneal.seed + 0x517cc1b727220a95ULL * (i + 1));

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_lock;

    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= report.rows.size() || failed.load()) return;
            SweepRow& row = report.rows[i];
            const auto row_start = std::chrono::steady_clock::now();
            try {
                PriorStructure prior =
                    row.method == "organized"
                        ? grid_prior(row.grid_rows, row.grid_cols, row.kernel, row.lambda)
                        : identity_prior(row.clusters);
                AnnealConfig cfg = config.anneal;
                cfg.seed = row.seed;
                AnnealResult result = anneal(g, prior, cfg);
                row.clustering = result.clustering;
                row.nonempty = nonempty_clusters(result.clustering);
                row.modularity_value = modularity(g, result.clustering);
                row.organized_value = organized_modularity(g, result.clustering, prior);
                if (row.method == "organized") {
                    Layout l = grid_layout(g, result.clustering, prior);
                    row.crossings = count_crossings(l.points, layout_edge_pairs(l));
                }
                strip_expectations(result);
                row.outcome = std::move(result);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> hold(failure_lock);
                failure = row.id + ": " + e.what();
                failed.store(true);
                return;
            }
            row.elapsed_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - row_start)
                                 .count();
        }
    };

    std::vector<std::thread> pool;
    const int threads = std::min<std::size_t>(parallelism, report.rows.size());
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("sweep: " + failure);

    // Baseline: best identity row by modularity (first on ties), laid out
    // from scratch.
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& row = report.rows[i];
        if (row.method != "identity") continue;
        if (report.baseline_row < 0 ||
            row.modularity_value > report.rows[report.baseline_row].modularity_value)
            report.baseline_row = static_cast<int>(i);
    }
    if (report.baseline_row >= 0) {
        SweepRow& base = report.rows[report.baseline_row];
        base.baseline = true;
        base.crossings = baseline_crossings(g, base.clustering, base.seed);
    }

    // Pareto flags over every crossing-scored point.
    std::vector<QualityPoint> points;
    std::vector<std::size_t> scored;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].crossings < 0) continue;
        points.push_back({report.rows[i].modularity_value, report.rows[i].crossings,
                          report.rows[i].id});
        scored.push_back(i);
    }
    const std::vector<bool> flags = pareto_flags(points);
    for (std::size_t k = 0; k < scored.size(); ++k) report.rows[scored[k]].pareto = flags[k];

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    return report;
}

std::string write_report_json(const Graph& g, const SweepConfig& config,
                              const RunReport& report) {
    std::string out;
    out.reserve(1 << 16);
    out += "{\"graph\":{\"vertices\":" + std::to_string(g.vertex_count()) +
           ",\"edges\":" + std::to_string(g.edge_count()) +
           ",\"total_weight\":" + fmt_full(g.total_weight()) + "},\"config\":{\"grids\":[";
    for (std::size_t i = 0; i < config.grids.size(); ++i) {
        if (i) out += ',';
        out += '[' + std::to_string(config.grids[i].first) + ',' +
               std::to_string(config.grids[i].second) + ']';
    }
    out += "],\"kernels\":[";
    for (std::size_t i = 0; i < config.kernels.size(); ++i) {
        if (i) out += ',';
        out += std::string("\"") + kernel_name(config.kernels[i]) + "\"";
    }
    out += "],\"exponential_lambdas\":[";
    for (std::size_t i = 0; i < config.exponential_lambdas.size(); ++i) {
        if (i) out += ',';
        out += fmt_full(config.exponential_lambdas[i]);
    }
    out += "],\"linear_lambdas\":[";
    for (std::size_t i = 0; i < config.linear_lambdas.size(); ++i) {
        if (i) out += ',';
        out += fmt_full(config.linear_lambdas[i]);
    }
    out += "],\"cluster_min\":" + std::to_string(config.cluster_min) +
           ",\"cluster_max\":" + std::to_string(config.cluster_max) +
           ",\"seeds_per_config\":" + std::to_string(config.seeds_per_config) +
           ",\"anneal\":{\"outer_steps\":" + std::to_string(config.anneal.outer_steps) +
           ",\"start_factor\":" + fmt_full(config.anneal.start_factor) +
           ",\"final_ratio\":" + fmt_full(config.anneal.final_ratio) +
           ",\"noise_low\":" + fmt_full(config.anneal.noise_low) +
           ",\"noise_high\":" + fmt_full(config.anneal.noise_high) +
           ",\"em_tolerance\":" + fmt_full(config.anneal.em_tolerance) +
           ",\"em_max_iterations\":" + std::to_string(config.anneal.em_max_iterations) +
           ",\"seed\":" + std::to_string(config.anneal.seed) +
           ",\"snapshot_stride\":" + std::to_string(config.anneal.snapshot_stride) +
           "}},\"rows\":[";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const SweepRow& r = report.rows[i];
        if (i) out += ',';
        out += "{\"id\":\"" + r.id + "\",\"method\":\"" + r.method + "\"";
        if (r.method == "organized") {
            out += ",\"rows\":" + std::to_string(r.grid_rows) +
                   ",\"cols\":" + std::to_string(r.grid_cols) + ",\"kernel\":\"" +
                   kernel_name(r.kernel) + "\",\"lambda\":" + fmt_full(r.lambda);
        }
        out += ",\"clusters\":" + std::to_string(r.clusters) +
               ",\"seed_index\":" + std::to_string(r.seed_index) +
               ",\"seed\":" + std::to_string(r.seed) +
               ",\"modularity\":" + fmt_full(r.modularity_value) +
               ",\"organized_modularity\":" + fmt_full(r.organized_value) +
               ",\"nonempty_clusters\":" + std::to_string(r.nonempty) +
               ",\"crossings\":" + std::to_string(r.crossings) +
               (r.baseline ? ",\"baseline\":true" : "") +
               ",\"pareto\":" + (r.pareto ? "true" : "false") + ",\"assignment\":[";
        for (std::size_t k = 0; k < r.clustering.assignment.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(r.clustering.assignment[k]);
        }
        out += "]}";
    }
    out += "],\"pareto_front\":[";
    bool first = true;
    for (const auto& r : report.rows) {
        if (!r.pareto) continue;
        if (!first) out += ',';
        first = false;
        out += "\"" + r.id + "\"";
    }
    out += "]}\n";
    return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
    using nlohmann::json;
    SweepConfig config;
    try {
        const json j = json::parse(text);
        for (const auto& [key, value] : j.items()) {
            if (key == "grids") {
                config.grids.clear();
                for (const auto& p : value)
                    config.grids.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
            } else if (key == "kernels") {
                config.kernels.clear();
                for (const auto& k : value) {
                    const std::string name = k.get<std::string>();
                    if (name == "exponential" || name == "exp")
                        config.kernels.push_back(Kernel::exponential);
                    else if (name == "linear" || name == "lin")
                        config.kernels.push_back(Kernel::linear);
                    else
                        throw ParseError("sweep config: unknown kernel '" + name + "'");
                }
            } else if (key == "exponential_lambdas") {
                config.exponential_lambdas = value.get<std::vector<double>>();
            } else if (key == "linear_lambdas") {
                config.linear_lambdas = value.get<std::vector<double>>();
            } else if (key == "cluster_min") {
                config.cluster_min = value.get<int>();
            } else if (key == "cluster_max") {
                config.cluster_max = value.get<int>();
            } else if (key == "seeds_per_config") {
                config.seeds_per_config = value.get<int>();
            } else if (key == "anneal") {
                for (const auto& [akey, avalue] : value.items()) {
                    if (akey == "outer_steps") config.anneal.outer_steps = avalue.get<int>();
                    else if (akey == "start_factor") config.anneal.start_factor = avalue.get<double>();
                    else if (akey == "final_ratio") config.anneal.final_ratio = avalue.get<double>();
                    else if (akey == "noise_low") config.anneal.noise_low = avalue.get<double>();
                    else if (akey == "noise_high") config.anneal.noise_high = avalue.get<double>();
                    else if (akey == "em_tolerance") config.anneal.em_tolerance = avalue.get<double>();
                    else if (akey == "em_max_iterations")
                        config.anneal.em_max_iterations = avalue.get<int>();
                    else if (akey == "seed") config.anneal.seed = avalue.get<std::uint64_t>();
                    else if (akey == "snapshot_stride")
                        config.anneal.snapshot_stride = avalue.get<int>();
                    else
                        throw ParseError("sweep config: unknown anneal key '" + akey + "'");
                }
            } else {
                throw ParseError("sweep config: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("sweep config: ") + e.what());
    }
    return config;
}

} // namespace orgmod
