#include "egognn/schedule.hpp"

#include <charconv>

#include "egognn/error.hpp"

namespace egognn {

LayerSpec LayerSpec::make_ego(int p, bool normalized) {
    LayerSpec l;
    l.kind = Kind::ego;
    l.ego = {p, normalized};
    return l;
}

LayerSpec LayerSpec::make_gcn(std::optional<std::size_t> width, bool normalized) {
    LayerSpec l;
    l.kind = Kind::gcn;
    l.gcn.normalized = normalized;
    l.gcn.width = width;
    return l;
}

LayerSpec LayerSpec::make_gcn_output(bool normalized) {
    LayerSpec l = make_gcn(std::nullopt, normalized);
    l.gcn.is_output = true;
    return l;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

template <typename T>
bool to_number(std::string_view s, T& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

LayerSpec parse_layer(std::string_view text, std::size_t index) {
    std::string normalized_text;
    for (char ch : text) {
        if (ch == '(') {
            normalized_text += ':';
        } else if (ch != ')') {
            normalized_text += ch;
        }
    }
    auto parts = split(normalized_text, ':');
    const std::string where = "schedule layer " + std::to_string(index) + " ('" + std::string(text) + "')";
    const std::string kind = parts.empty() ? "" : parts[0];

    if (kind == "ego") {
        LayerSpec l = LayerSpec::make_ego(1, true);
        for (std::size_t k = 1; k < parts.size(); ++k) {
            const auto& opt = parts[k];
            if (opt.rfind("p=", 0) == 0) {
                int p = 0;
                if (!to_number(std::string_view(opt).substr(2), p) || p < 1) {
                    throw ParseError(where + ": p must be a positive integer");
                }
                l.ego.p = p;
            } else if (opt == "raw") {
                l.ego.normalized = false;
            } else if (opt == "norm" || opt == "normalized") {
                l.ego.normalized = true;
            } else {
                throw ParseError(where + ": unknown ego option '" + opt + "'");
            }
        }
        return l;
    }
    if (kind == "gcn") {
        LayerSpec l = LayerSpec::make_gcn(std::nullopt, true);
        for (std::size_t k = 1; k < parts.size(); ++k) {
            const auto& opt = parts[k];
            std::size_t width = 0;
            if (opt == "out") {
                l.gcn.is_output = true;
            } else if (to_number(opt, width)) {
                if (width == 0) throw ParseError(where + ": width must be positive");
                l.gcn.width = width;
            } else if (opt == "unnormalized" || opt == "unnorm" || opt == "raw") {
                l.gcn.normalized = false;
            } else if (opt == "norm" || opt == "normalized") {
                l.gcn.normalized = true;
            } else {
                throw ParseError(where + ": unknown gcn option '" + opt + "'");
            }
        }
        if (l.gcn.is_output && l.gcn.width) throw ParseError(where + ": 'out' and an explicit width are exclusive");
        return l;
    }
    throw ParseError(where + ": layer kind must be 'ego' or 'gcn'");
}

} // namespace

Schedule parse_schedule(std::string_view text) {
    Schedule s;
    auto layers = split(text, ',');
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].empty()) throw ParseError("schedule layer " + std::to_string(i) + " is empty");
        s.push_back(parse_layer(layers[i], i));
    }
    return s;
}

std::string format_layer(const LayerSpec& l) {
    if (l.kind == LayerSpec::Kind::ego) {
        return "ego:p=" + std::to_string(l.ego.p) + (l.ego.normalized ? "" : ":raw");
    }
    std::string s = "gcn";
    if (l.gcn.is_output) {
        s += ":out";
    } else if (l.gcn.width) {
        s += ":" + std::to_string(*l.gcn.width);
    }
    if (!l.gcn.normalized) s += ":unnormalized";
    return s;
}

std::string format_schedule(const Schedule& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += format_layer(s[i]);
    }
    return out;
}

Schedule ego_gnn_schedule(std::size_t gcn_layers, std::size_t hidden, int p) {
    Schedule s;
    for (std::size_t k = 0; k < gcn_layers; ++k) {
        s.push_back(LayerSpec::make_ego(p, true));
        s.push_back(k + 1 == gcn_layers ? LayerSpec::make_gcn_output() : LayerSpec::make_gcn(hidden));
    }
    return s;
}

Schedule gcn_schedule(std::size_t gcn_layers, std::size_t hidden) {
    Schedule s;
    for (std::size_t k = 0; k < gcn_layers; ++k)
        s.push_back(k + 1 == gcn_layers ? LayerSpec::make_gcn_output() : LayerSpec::make_gcn(hidden));
    return s;
}

} // namespace egognn
