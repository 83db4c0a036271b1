#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "orgmod/io.hpp"

namespace orgmod {
namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, int line, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v))
        fail(line, std::string("expected a finite ") + what + ", got '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size())
        fail(line, std::string("expected an integer ") + what + ", got '" + tok + "'");
    return v;
}

double checked_weight(double w, int line) {
    if (w <= 0.0) fail(line, "edge weight must be positive");
    return w;
}

} // namespace

Graph parse_edge_list(const std::string& text) {
    std::vector<LabeledEdge> edges;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() < 2 || toks.size() > 3)
            fail(lineno, "expected 'source target [weight]', got " + std::to_string(toks.size()) +
                             " fields");
        double w = 1.0;
        if (toks.size() == 3) w = checked_weight(parse_number(toks[2], lineno, "weight"), lineno);
        edges.push_back({toks[0], toks[1], w});
    }
    if (edges.empty()) throw ParseError("edge list: no edges found");
    return build_graph(edges);
}

Graph parse_pajek(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = 0;
    bool have_vertices = false;
    enum class Section { none, vertices, edges } section = Section::none;
    std::vector<std::string> labels;
    std::vector<WeightedEdge> edges;

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '%') continue;
        if (toks[0][0] == '*') {
            const std::string head = lower(toks[0]);
            if (head == "*vertices") {
                if (have_vertices) fail(lineno, "second *Vertices section");
                if (toks.size() < 2) fail(lineno, "*Vertices needs a count");
                n = static_cast<int>(parse_int(toks[1], lineno, "vertex count"));
                if (n <= 0) fail(lineno, "vertex count must be positive");
                labels.resize(n);
                for (int i = 0; i < n; ++i) labels[i] = std::to_string(i + 1);
                have_vertices = true;
                section = Section::vertices;
            } else if (head == "*edges" || head == "*arcs") {
                if (!have_vertices) fail(lineno, "*Vertices must come first");
                // Arcs and edges share the accumulator: summing both arc
                // directions is exactly the symmetrization rule.
                section = Section::edges;
            } else {
                fail(lineno, "unsupported section '" + toks[0] + "'");
            }
            continue;
        }
        switch (section) {
        case Section::none:
            fail(lineno, "content before *Vertices");
        case Section::vertices: {
            const long id = parse_int(toks[0], lineno, "vertex id");
            if (id < 1 || id > n) fail(lineno, "vertex id out of range");
            // Optional quoted label; trailing layout coordinates ignored.
            const auto open = line.find('"');
            if (open != std::string::npos) {
                const auto close = line.find('"', open + 1);
                if (close == std::string::npos) fail(lineno, "unterminated label");
                labels[id - 1] = line.substr(open + 1, close - open - 1);
            }
            break;
        }
        case Section::edges: {
            if (toks.size() < 2 || toks.size() > 3)
                fail(lineno, "expected 'source target [weight]'");
            const long u = parse_int(toks[0], lineno, "endpoint");
            const long v = parse_int(toks[1], lineno, "endpoint");
            if (u < 1 || u > n || v < 1 || v > n) fail(lineno, "endpoint out of range");
            double w = 1.0;
            if (toks.size() == 3)
                w = checked_weight(parse_number(toks[2], lineno, "weight"), lineno);
            edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
            break;
        }
        }
    }
    if (!have_vertices) throw ParseError("pajek: missing *Vertices section");
    if (edges.empty()) throw ParseError("pajek: no edges found");
    return build_graph(n, edges, std::move(labels));
}

namespace {

// Minimal GML tokenizer: brackets, quoted strings, bare atoms. Tracks line
// numbers for error messages.
struct GmlToken {
    enum class Kind { open, close, string, atom, end } kind = Kind::end;
    std::string text;
    int line = 1;
};

class GmlLexer {
public:
    explicit GmlLexer(const std::string& text) : text_(text) {}

    GmlToken next() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= text_.size()) return {GmlToken::Kind::end, "", line_};
        const char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            return {GmlToken::Kind::open, "[", line_};
        }
        if (c == ']') {
            ++pos_;
            return {GmlToken::Kind::close, "]", line_};
        }
        if (c == '"') {
            std::string s;
            ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\n') ++line_;
                s += text_[pos_++];
            }
            if (pos_ >= text_.size()) fail(line_, "unterminated string");
            ++pos_;
            return {GmlToken::Kind::string, s, line_};
        }
        std::string s;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '[' && text_[pos_] != ']')
            s += text_[pos_++];
        return {GmlToken::Kind::atom, s, line_};
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

} // namespace

Graph parse_gml(const std::string& text) {
    GmlLexer lex(text);

    // Skip a value of any shape: scalar, string, or bracketed block.
    auto skip_value = [&](GmlToken tok, auto&& self) -> void {
        if (tok.kind == GmlToken::Kind::open) {
            for (;;) {
                GmlToken t = lex.next();
                if (t.kind == GmlToken::Kind::end) fail(t.line, "unterminated block");
                if (t.kind == GmlToken::Kind::close) return;
                if (t.kind != GmlToken::Kind::atom) fail(t.line, "expected a key");
                self(lex.next(), self);
            }
        }
        if (tok.kind != GmlToken::Kind::atom && tok.kind != GmlToken::Kind::string)
            fail(tok.line, "expected a value");
    };

    // Find the top-level `graph [`.
    bool in_graph = false;
    for (;;) {
        GmlToken tok = lex.next();
        if (tok.kind == GmlToken::Kind::end) break;
        if (tok.kind != GmlToken::Kind::atom) fail(tok.line, "expected a key");
        if (lower(tok.text) == "graph") {
            GmlToken open = lex.next();
            if (open.kind != GmlToken::Kind::open) fail(open.line, "graph must open a block");
            in_graph = true;
            break;
        }
        skip_value(lex.next(), skip_value);
    }
    if (!in_graph) throw ParseError("gml: no graph block");

    std::unordered_map<long, int> index;  // declared id -> dense index
    std::vector<std::string> labels;
    std::vector<WeightedEdge> edges;

    auto parse_record = [&](const char* what) {
        GmlToken open = lex.next();
        if (open.kind != GmlToken::Kind::open)
            fail(open.line, std::string(what) + " must open a block");
        long id = 0, source = 0, target = 0;
        bool has_id = false, has_source = false, has_target = false;
        std::string label;
        bool has_label = false;
        double value = 1.0;
        for (;;) {
            GmlToken key = lex.next();
            if (key.kind == GmlToken::Kind::close) break;
            if (key.kind != GmlToken::Kind::atom) fail(key.line, "expected a key");
            const std::string name = lower(key.text);
            GmlToken val = lex.next();
            if (name == "id" || name == "source" || name == "target") {
                if (val.kind != GmlToken::Kind::atom) fail(val.line, name + " must be numeric");
                const long v = parse_int(val.text, val.line, name.c_str());
                if (name == "id") { id = v; has_id = true; }
                if (name == "source") { source = v; has_source = true; }
                if (name == "target") { target = v; has_target = true; }
            } else if (name == "value" || name == "weight") {
                if (val.kind != GmlToken::Kind::atom) fail(val.line, "value must be numeric");
                value = checked_weight(parse_number(val.text, val.line, "weight"), val.line);
            } else if (name == "label") {
                label = val.text;
                has_label = true;
                skip_value(val, skip_value);
            } else {
                skip_value(val, skip_value);
            }
        }
        return std::make_tuple(has_id, id, has_source, has_source && has_target, source, target,
                               value, has_label, label);
    };

    for (;;) {
        GmlToken tok = lex.next();
        if (tok.kind == GmlToken::Kind::close) break;
        if (tok.kind == GmlToken::Kind::end) throw ParseError("gml: unterminated graph block");
        if (tok.kind != GmlToken::Kind::atom) fail(tok.line, "expected a key");
        const std::string name = lower(tok.text);
        if (name == "node") {
            auto [has_id, id, _a, _b, _c, _d, _e, has_label, label] = parse_record("node");
            if (!has_id) fail(tok.line, "node without id");
            if (index.count(id)) fail(tok.line, "duplicate node id " + std::to_string(id));
            index[id] = static_cast<int>(labels.size());
            labels.push_back(has_label ? label : std::to_string(id));
        } else if (name == "edge") {
            auto [_a, _b, has_source, complete, source, target, value, _c, _d] =
                parse_record("edge");
            if (!has_source || !complete) fail(tok.line, "edge needs source and target");
            auto su = index.find(source);
            auto sv = index.find(target);
            if (su == index.end()) fail(tok.line, "unknown vertex id " + std::to_string(source));
            if (sv == index.end()) fail(tok.line, "unknown vertex id " + std::to_string(target));
            edges.push_back({su->second, sv->second, value});
        } else {
            skip_value(lex.next(), skip_value);
        }
    }

    if (edges.empty()) throw ParseError("gml: no edges found");
    const int declared = static_cast<int>(labels.size());
    return build_graph(declared, edges, std::move(labels));
}

Graph load_graph(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::string kind = lower(format);
    if (kind == "auto") {
        const auto dot = path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : lower(path.substr(dot));
        if (ext == ".net") kind = "pajek";
        else if (ext == ".gml") kind = "gml";
        else kind = "edges";
    }
    if (kind == "pajek") return parse_pajek(text);
    if (kind == "gml") return parse_gml(text);
    if (kind == "edges") return parse_edge_list(text);
    throw ParseError("unknown graph format '" + format + "'");
}

Matrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        std::vector<double> row;
        row.reserve(toks.size());
        for (const auto& t : toks) row.push_back(parse_number(t, lineno, "matrix entry"));
        if (!rows.empty() && rows.front().size() != row.size())
            fail(lineno, "ragged matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("matrix: no rows found");
    if (rows.size() != rows.front().size()) throw ParseError("matrix: must be square");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

std::vector<Vec2> parse_positions(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<Vec2> out;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks.size() != 2) fail(lineno, "expected 'x y'");
        out.push_back({parse_number(toks[0], lineno, "coordinate"),
                       parse_number(toks[1], lineno, "coordinate")});
    }
    if (out.empty()) throw ParseError("positions: no rows found");
    return out;
}

int PriorSpec::cluster_count() const {
    switch (type) {
    case Type::identity: return clusters;
    case Type::grid: return rows * cols;
    case Type::custom: return similarity.rows();
    }
    return 0;
}

PriorStructure make_prior(const PriorSpec& spec) {
    switch (spec.type) {
    case PriorSpec::Type::identity: return identity_prior(spec.clusters);
    case PriorSpec::Type::grid: return grid_prior(spec.rows, spec.cols, spec.kernel, spec.lambda);
    case PriorSpec::Type::custom: return custom_prior(spec.positions, spec.similarity);
    }
    throw std::invalid_argument("make_prior: unknown prior type");
}

} // namespace orgmod
