#include <cinttypes>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "orgmod/io.hpp"
#include "orgmod/quality.hpp"

namespace orgmod {
namespace {

// %.17g round-trips every double exactly, so parse -> rewrite is a byte
// no-op. All writing below goes through these two helpers.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRIu64, v);
    return buf;
}

void append_double_array(std::string& out, const std::vector<double>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt(values[i]);
    }
    out += ']';
}

void append_int_array(std::string& out, const std::vector<int>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

const char* kernel_name(Kernel k) {
    return k == Kernel::exponential ? "exponential" : "linear";
}

Kernel kernel_from_name(const std::string& name) {
    if (name == "exponential" || name == "exp") return Kernel::exponential;
    if (name == "linear" || name == "lin") return Kernel::linear;
    throw ParseError("unknown kernel '" + name + "'");
}

void append_prior(std::string& out, const PriorSpec& prior) {
    out += "{\"type\":";
    switch (prior.type) {
    case PriorSpec::Type::identity:
        out += "\"identity\",\"clusters\":" + std::to_string(prior.clusters);
        break;
    case PriorSpec::Type::grid:
        out += "\"grid\",\"rows\":" + std::to_string(prior.rows) +
               ",\"cols\":" + std::to_string(prior.cols) + ",\"kernel\":\"" +
               kernel_name(prior.kernel) + "\",\"lambda\":" + fmt(prior.lambda);
        break;
    case PriorSpec::Type::custom: {
        out += "\"custom\",\"similarity\":[";
        for (int i = 0; i < prior.similarity.rows(); ++i) {
            if (i) out += ',';
            out += '[';
            for (int j = 0; j < prior.similarity.cols(); ++j) {
                if (j) out += ',';
                out += fmt(prior.similarity(i, j));
            }
            out += ']';
        }
        out += ']';
        if (!prior.positions.empty()) {
            out += ",\"positions\":[";
            for (std::size_t i = 0; i < prior.positions.size(); ++i) {
                if (i) out += ',';
                out += '[' + fmt(prior.positions[i].x) + ',' + fmt(prior.positions[i].y) + ']';
            }
            out += ']';
        }
        break;
    }
    }
    out += '}';
}

struct ResultPieces {
    int vertices;
    int edges;
    double total_weight;
    const PriorSpec& prior;
    const AnnealConfig& config;
    const std::vector<int>& assignment;
    int cluster_count;
    int nonempty;
    double modularity_value;
    double organized_value;
    double critical_temperature;
    const std::vector<double>& transitions;
    const std::vector<double>& trail_t;
    const std::vector<double>& trail_q;
    const std::vector<int>& trail_iters;
    const std::vector<std::string>& labels;
};

std::string write_pieces(const ResultPieces& p) {
    std::string out;
    out.reserve(4096);
    out += "{\"graph\":{\"vertices\":" + std::to_string(p.vertices) +
           ",\"edges\":" + std::to_string(p.edges) + ",\"total_weight\":" + fmt(p.total_weight) +
           "},\"config\":{\"prior\":";
    append_prior(out, p.prior);
    out += ",\"outer_steps\":" + std::to_string(p.config.outer_steps) +
           ",\"start_factor\":" + fmt(p.config.start_factor) +
           ",\"final_ratio\":" + fmt(p.config.final_ratio) +
           ",\"noise_low\":" + fmt(p.config.noise_low) +
           ",\"noise_high\":" + fmt(p.config.noise_high) +
           ",\"em_tolerance\":" + fmt(p.config.em_tolerance) +
           ",\"em_max_iterations\":" + std::to_string(p.config.em_max_iterations) +
           ",\"seed\":" + fmt(p.config.seed) +
           ",\"snapshot_stride\":" + std::to_string(p.config.snapshot_stride) +
           "},\"result\":{\"assignment\":";
    append_int_array(out, p.assignment);
    out += ",\"cluster_count\":" + std::to_string(p.cluster_count) +
           ",\"nonempty_clusters\":" + std::to_string(p.nonempty) +
           ",\"modularity\":" + fmt(p.modularity_value) +
           ",\"organized_modularity\":" + fmt(p.organized_value) +
           ",\"critical_temperature\":" + fmt(p.critical_temperature) + ",\"transitions\":";
    append_double_array(out, p.transitions);
    out += "},\"trail\":{\"temperatures\":";
    append_double_array(out, p.trail_t);
    out += ",\"expected_modularity\":";
    append_double_array(out, p.trail_q);
    out += ",\"em_iterations\":";
    append_int_array(out, p.trail_iters);
    out += '}';
    if (!p.labels.empty()) {
        out += ",\"labels\":[";
        for (std::size_t i = 0; i < p.labels.size(); ++i) {
            if (i) out += ',';
            out += quote(p.labels[i]);
        }
        out += ']';
    }
    out += "}\n";
    return out;
}

} // namespace

std::string write_result_json(const Graph& g, const PriorSpec& prior, const AnnealConfig& config,
                              const AnnealResult& result, double modularity_value,
                              double organized_value) {
    std::vector<double> trail_t, trail_q;
    std::vector<int> trail_iters;
    trail_t.reserve(result.trail.snapshots.size());
    for (const auto& s : result.trail.snapshots) {
        trail_t.push_back(s.temperature);
        trail_q.push_back(s.expected_modularity);
        trail_iters.push_back(s.em_iterations);
    }
    return write_pieces({g.vertex_count(), g.edge_count(), g.total_weight(), prior, config,
                         result.clustering.assignment, result.clustering.cluster_count,
                         nonempty_clusters(result.clustering), modularity_value, organized_value,
                         result.critical_temperature, result.transitions, trail_t, trail_q,
                         trail_iters, g.labels()});
}

std::string write_result_json(const ParsedResult& parsed) {
    return write_pieces({parsed.vertices, parsed.edges, parsed.total_weight, parsed.prior,
                         parsed.config, parsed.clustering.assignment,
                         parsed.clustering.cluster_count, parsed.nonempty, parsed.modularity_value,
                         parsed.organized_value, parsed.critical_temperature, parsed.transitions,
                         parsed.trail_temperatures, parsed.trail_expected_modularity,
                         parsed.trail_em_iterations, parsed.labels});
}

ParsedResult parse_result_json(const std::string& text) {
    using nlohmann::json;
    try {
        const json j = json::parse(text);
        ParsedResult r;
        r.vertices = j.at("graph").at("vertices").get<int>();
        r.edges = j.at("graph").at("edges").get<int>();
        r.total_weight = j.at("graph").at("total_weight").get<double>();

        const json& prior = j.at("config").at("prior");
        const std::string type = prior.at("type").get<std::string>();
        if (type == "identity") {
            r.prior.type = PriorSpec::Type::identity;
            r.prior.clusters = prior.at("clusters").get<int>();
        } else if (type == "grid") {
            r.prior.type = PriorSpec::Type::grid;
            r.prior.rows = prior.at("rows").get<int>();
            r.prior.cols = prior.at("cols").get<int>();
            r.prior.kernel = kernel_from_name(prior.at("kernel").get<std::string>());
            r.prior.lambda = prior.at("lambda").get<double>();
        } else if (type == "custom") {
            r.prior.type = PriorSpec::Type::custom;
            const json& sim = prior.at("similarity");
            const int c = static_cast<int>(sim.size());
            r.prior.similarity = Matrix(c, c);
            for (int i = 0; i < c; ++i)
                for (int k = 0; k < c; ++k)
                    r.prior.similarity(i, k) = sim.at(i).at(k).get<double>();
            if (prior.contains("positions")) {
                for (const auto& p : prior.at("positions"))
                    r.prior.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
        } else {
            throw ParseError("result json: unknown prior type '" + type + "'");
        }

        const json& cfg = j.at("config");
        r.config.outer_steps = cfg.at("outer_steps").get<int>();
        r.config.start_factor = cfg.at("start_factor").get<double>();
        r.config.final_ratio = cfg.at("final_ratio").get<double>();
        r.config.noise_low = cfg.at("noise_low").get<double>();
        r.config.noise_high = cfg.at("noise_high").get<double>();
        r.config.em_tolerance = cfg.at("em_tolerance").get<double>();
        r.config.em_max_iterations = cfg.at("em_max_iterations").get<int>();
        r.config.seed = cfg.at("seed").get<std::uint64_t>();
        r.config.snapshot_stride = cfg.at("snapshot_stride").get<int>();

        const json& res = j.at("result");
        r.clustering.assignment = res.at("assignment").get<std::vector<int>>();
        r.clustering.cluster_count = res.at("cluster_count").get<int>();
        r.nonempty = res.at("nonempty_clusters").get<int>();
        r.modularity_value = res.at("modularity").get<double>();
        r.organized_value = res.at("organized_modularity").get<double>();
        r.critical_temperature = res.at("critical_temperature").get<double>();
        r.transitions = res.at("transitions").get<std::vector<double>>();

        const json& trail = j.at("trail");
        r.trail_temperatures = trail.at("temperatures").get<std::vector<double>>();
        r.trail_expected_modularity = trail.at("expected_modularity").get<std::vector<double>>();
        r.trail_em_iterations = trail.at("em_iterations").get<std::vector<int>>();

        if (j.contains("labels")) r.labels = j.at("labels").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("result json: ") + e.what());
    }
}

LayoutFile parse_layout_json(const std::string& text) {
    using nlohmann::json;
    try {
        const json j = json::parse(text);
        LayoutFile f;
        for (const auto& p : j.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw ParseError("layout json: each point must be an [x, y] pair");
            f.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        const int n = static_cast<int>(f.points.size());
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("layout json: each edge must be an [a, b] pair");
            const int a = e.at(0).get<int>();
            const int b = e.at(1).get<int>();
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw ParseError("layout json: edge endpoint out of range");
            f.edges.emplace_back(a, b);
        }
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("layout json: ") + e.what());
    }
}

} // namespace orgmod
