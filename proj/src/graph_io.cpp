#include "egognn/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "egognn/error.hpp"

namespace egognn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

void append_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view tok, const std::string& where) {
    T value{};
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || tok.empty()) {
        throw ParseError(where + ": cannot parse '" + std::string(tok) + "' as a number");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::size_t json_index(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(where + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

DenseMatrix parse_features_csv(const fs::path& path, std::size_t n) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<double> data;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto s = strip(line);
        if (s.empty()) continue;
        const std::string where = path.filename().string() + " line " + std::to_string(lineno);
        auto fields = split(s, ',');
        if (rows == 0) cols = fields.size();
        if (fields.size() != cols) {
            throw ParseError(where + ": expected " + std::to_string(cols) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            data.push_back(parse_number<double>(strip(fields[c]), where + " field " + std::to_string(c + 1)));
        }
        ++rows;
    }
    if (rows != n) {
        throw ParseError(path.filename().string() + ": " + std::to_string(rows) + " feature rows for " +
                         std::to_string(n) + " nodes");
    }
    return DenseMatrix(rows, cols, std::move(data));
}

std::vector<int> parse_labels_csv(const fs::path& path, std::size_t n) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<int> labels;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto s = strip(line);
        if (s.empty()) continue;
        labels.push_back(parse_number<int>(s, path.filename().string() + " line " + std::to_string(lineno)));
    }
    if (labels.size() != n) {
        throw ParseError(path.filename().string() + ": " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(n) + " nodes");
    }
    return labels;
}

Graph parse_tsv(const fs::path& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> n;
    std::vector<Edge> raw;
    std::vector<std::size_t> raw_lines;
    while (std::getline(in, line)) {
        ++lineno;
        auto s = strip(line);
        const std::string where = path.filename().string() + " line " + std::to_string(lineno);
        if (!n) {
            if (s.empty()) continue;
            constexpr std::string_view prefix = "# n=";
            if (s.substr(0, prefix.size()) != prefix) throw ParseError(where + ": expected header '# n=<int>'");
            n = parse_number<std::size_t>(strip(s.substr(prefix.size())), where);
            continue;
        }
        if (s.empty() || s.front() == '#') continue;
        auto fields = split(s, '\t');
        if (fields.size() != 2) {
            // Tolerate single-space separated pairs.
            fields = split(s, ' ');
            fields.erase(std::remove_if(fields.begin(), fields.end(), [](auto f) { return f.empty(); }), fields.end());
        }
        if (fields.size() != 2) throw ParseError(where + ": expected 'u<TAB>v'");
        const auto u = parse_number<std::size_t>(strip(fields[0]), where + " field 1");
        const auto v = parse_number<std::size_t>(strip(fields[1]), where + " field 2");
        if (u >= *n || v >= *n) throw ParseError(where + ": node id out of range for n=" + std::to_string(*n));
        if (u == v) throw ParseError(where + ": self-loop " + std::to_string(u) + " is not allowed");
        raw.emplace_back(u, v);
        raw_lines.push_back(lineno);
    }
    if (!n) throw ParseError(path.filename().string() + ": missing '# n=<int>' header");

    // Either every edge once, or every edge in both orientations.
    std::set<Edge> directed;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (!directed.insert(raw[k]).second) {
            throw ParseError(path.filename().string() + " line " + std::to_string(raw_lines[k]) + ": duplicate edge");
        }
    }
    bool any_reversed = false;
    for (const auto& [u, v] : raw) any_reversed |= directed.count({v, u}) > 0;
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const auto [u, v] = raw[k];
        const bool has_reverse = directed.count({v, u}) > 0;
        if (any_reversed && !has_reverse) {
            throw ParseError(path.filename().string() + " line " + std::to_string(raw_lines[k]) +
                             ": asymmetric edge list, (" + std::to_string(v) + "," + std::to_string(u) + ") missing");
        }
        if (!any_reversed || u < v) edges.emplace_back(u, v);
    }
    Graph g(*n, edges);
    if (auto f = features_sidecar(path); fs::exists(f)) g.set_features(parse_features_csv(f, *n));
    if (auto l = labels_sidecar(path); fs::exists(l)) g.set_labels(parse_labels_csv(l, *n));
    return g;
}

void write_tsv(const Graph& g, const fs::path& path) {
    std::string out = "# n=" + std::to_string(g.n()) + "\n";
    for (const auto& [u, v] : g.edges()) out += std::to_string(u) + "\t" + std::to_string(v) + "\n";
    write_file(path, out);

    const auto fpath = features_sidecar(path);
    if (g.features()) {
        std::string f;
        const auto& x = *g.features();
        for (std::size_t r = 0; r < x.rows(); ++r) {
            for (std::size_t c = 0; c < x.cols(); ++c) {
                if (c) f += ',';
                append_double(f, x(r, c));
            }
            f += '\n';
        }
        write_file(fpath, f);
    } else if (fs::exists(fpath)) {
        fs::remove(fpath);
    }
    const auto lpath = labels_sidecar(path);
    if (g.labels()) {
        std::string l;
        for (int y : *g.labels()) l += std::to_string(y) + "\n";
        write_file(lpath, l);
    } else if (fs::exists(lpath)) {
        fs::remove(lpath);
    }
}

} // namespace

GraphFormat format_from_path(const fs::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".tsv" || ext == ".txt" || ext == ".edges") return GraphFormat::tsv;
    return GraphFormat::json;
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "json") return GraphFormat::json;
    if (name == "tsv") return GraphFormat::tsv;
    throw ParseError("unknown graph format '" + std::string(name) + "' (expected json or tsv)");
}

fs::path features_sidecar(const fs::path& edge_file) {
    auto p = edge_file;
    return p.replace_extension().concat(".features.csv");
}

fs::path labels_sidecar(const fs::path& edge_file) {
    auto p = edge_file;
    return p.replace_extension().concat(".labels.csv");
}

Graph parse_graph_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
    if (!doc.contains("n")) throw ParseError("missing field 'n'");
    const std::size_t n = json_index(doc["n"], "field 'n'");

    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& arr = doc["edges"];
        if (!arr.is_array()) throw ParseError("field 'edges' must be an array");
        std::set<Edge> seen;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string where = "edges[" + std::to_string(k) + "]";
            const auto& e = arr[k];
            if (!e.is_array() || e.size() != 2) throw ParseError(where + ": expected a [u, v] pair");
            const auto u = json_index(e[0], where + "[0]");
            const auto v = json_index(e[1], where + "[1]");
            if (u >= n || v >= n) throw ParseError(where + ": node id out of range for n=" + std::to_string(n));
            if (u == v) throw ParseError(where + ": self-loop " + std::to_string(u) + " is not allowed");
            if (u > v) throw ParseError(where + ": edges must be listed with u < v");
            if (!seen.insert({u, v}).second) throw ParseError(where + ": duplicate edge");
            edges.emplace_back(u, v);
        }
    }
    Graph g(n, edges);

    if (doc.contains("features") && !doc["features"].is_null()) {
        const auto& f = doc["features"];
        if (!f.is_array() || f.size() != n) throw ParseError("field 'features' must be an array of n rows");
        const std::size_t cols = n == 0 ? 0 : f[0].size();
        std::vector<double> data;
        data.reserve(n * cols);
        for (std::size_t r = 0; r < n; ++r) {
            if (!f[r].is_array() || f[r].size() != cols) {
                throw ParseError("features[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " values");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                if (!f[r][c].is_number()) {
                    throw ParseError("features[" + std::to_string(r) + "][" + std::to_string(c) + "]: not a number");
                }
                data.push_back(f[r][c].get<double>());
            }
        }
        g.set_features(DenseMatrix(n, cols, std::move(data)));
    }
    if (doc.contains("labels") && !doc["labels"].is_null()) {
        const auto& l = doc["labels"];
        if (!l.is_array() || l.size() != n) throw ParseError("field 'labels' must be an array of n integers");
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!l[i].is_number_integer()) throw ParseError("labels[" + std::to_string(i) + "]: not an integer");
            y[i] = l[i].get<int>();
        }
        g.set_labels(std::move(y));
    }
    return g;
}

std::string dump_graph_json(const Graph& g) {
    std::string out = "{\"n\": " + std::to_string(g.n()) + ", \"edges\": [";
    bool first = true;
    for (const auto& [u, v] : g.edges()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + std::to_string(u) + ", " + std::to_string(v) + "]";
    }
    out += "]";
    if (g.features()) {
        const auto& x = *g.features();
        out += ", \"features\": [";
        for (std::size_t r = 0; r < x.rows(); ++r) {
            out += r ? ", [" : "[";
            for (std::size_t c = 0; c < x.cols(); ++c) {
                if (c) out += ", ";
                append_double(out, x(r, c));
            }
            out += "]";
        }
        out += "]";
    }
    if (g.labels()) {
        out += ", \"labels\": [";
        for (std::size_t i = 0; i < g.labels()->size(); ++i) {
            if (i) out += ", ";
            out += std::to_string((*g.labels())[i]);
        }
        out += "]";
    }
    out += "}\n";
    return out;
}

Graph load_graph(const fs::path& path, GraphFormat format) {
    if (!fs::exists(path)) throw IoError("no such file: " + path.string());
    if (format == GraphFormat::tsv) return parse_tsv(path);
    try {
        return parse_graph_json(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ": " + e.what());
    }
}

Graph load_graph(const fs::path& path) { return load_graph(path, format_from_path(path)); }

void save_graph(const Graph& g, const fs::path& path, GraphFormat format) {
    if (format == GraphFormat::tsv) {
        write_tsv(g, path);
    } else {
        write_file(path, dump_graph_json(g));
    }
}

} // namespace egognn
