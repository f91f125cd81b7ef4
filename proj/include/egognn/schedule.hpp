#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egognn {

struct EgoLayerConfig {
    int p = 1;
    bool normalized = true;
    friend bool operator==(const EgoLayerConfig&, const EgoLayerConfig&) = default;
};

// A GCN layer multiplies by A+I (normalized or not) and then, when it has a
// width, by a trainable weight matrix.
struct GcnLayerConfig {
    bool normalized = true;
    // Output width; nullopt = parameter-free propagation only.
    std::optional<std::size_t> width;
    // Width is the number of classes, resolved at parameter creation.
    bool is_output = false;

    bool has_weights() const { return width.has_value() || is_output; }
    friend bool operator==(const GcnLayerConfig&, const GcnLayerConfig&) = default;
};

struct LayerSpec {
    enum class Kind { ego, gcn };
    Kind kind = Kind::gcn;
    EgoLayerConfig ego;
    GcnLayerConfig gcn;

    static LayerSpec make_ego(int p, bool normalized = true);
    static LayerSpec make_gcn(std::optional<std::size_t> width, bool normalized = true);
    static LayerSpec make_gcn_output(bool normalized = true);
    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

using Schedule = std::vector<LayerSpec>;

// Comma list of layers. Each layer is a kind followed by ':'-separated
// options; "name(opt)" is accepted as a synonym for "name:opt".
//   ego[:p=<int>][:raw|:norm]
//   gcn[:<width>|:out][:unnormalized|:unnorm|:norm]
// e.g. "ego:p=1,gcn:64,gcn:out" or "ego:p=1(raw),gcn:unnormalized".
Schedule parse_schedule(std::string_view text);
std::string format_schedule(const Schedule& s);
std::string format_layer(const LayerSpec& l);

// Alternating ego/gcn pairs ending in an output layer, and the plain GCN
// stack with the same number of gcn layers.
Schedule ego_gnn_schedule(std::size_t gcn_layers, std::size_t hidden, int p = 1);
Schedule gcn_schedule(std::size_t gcn_layers, std::size_t hidden);

} // namespace egognn
