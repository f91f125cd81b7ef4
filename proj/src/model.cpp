#include "egognn/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "egognn/error.hpp"
#include "egognn/kernels.hpp"
#include "egognn/rng.hpp"

namespace egognn {

using nlohmann::json;

std::size_t ModelParams::parameter_count() const {
    std::size_t total = 0;
    for (const auto& w : weights) total += w.rows() * w.cols();
    return total;
}

std::vector<std::pair<std::size_t, std::size_t>> weight_shapes(const Schedule& s, std::size_t in_dim,
                                                                std::size_t num_classes) {
    if (s.empty()) throw Error("schedule is empty");
    if (in_dim == 0) throw DimensionError("input has no feature columns");
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    std::size_t d = in_dim;
    for (const auto& l : s) {
        if (l.kind != LayerSpec::Kind::gcn || !l.gcn.has_weights()) continue;
        const std::size_t out = l.gcn.is_output ? num_classes : *l.gcn.width;
        shapes.emplace_back(d, out);
        d = out;
    }
    if (shapes.empty()) throw Error("schedule '" + format_schedule(s) + "' has no trainable layer");
    if (d != num_classes) {
        throw DimensionError("schedule '" + format_schedule(s) + "' produces " + std::to_string(d) + " outputs for " +
                             std::to_string(num_classes) + " classes");
    }
    return shapes;
}

ModelParams zero_params(const Schedule& s, std::size_t in_dim, std::size_t num_classes) {
    ModelParams p{s, in_dim, num_classes, {}};
    for (const auto& [r, c] : weight_shapes(s, in_dim, num_classes)) p.weights.emplace_back(r, c);
    return p;
}

ModelParams init_params(const Schedule& s, std::size_t in_dim, std::size_t num_classes, std::uint64_t seed) {
    ModelParams p = zero_params(s, in_dim, num_classes);
    Xoshiro256 rng(derive_seed(seed, 0x1417));
    for (auto& w : p.weights) {
        const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
        for (double& v : w.data()) v = (2.0 * rng.uniform() - 1.0) * limit;
    }
    return p;
}

DenseMatrix forward(const PropagationContext& ctx, const DenseMatrix& x, const ModelParams& params) {
    return interleaved_forward(ctx, x, params.schedule, params.weights);
}

namespace {

// Intermediate values kept for the backward pass, one entry per layer.
struct Tape {
    std::vector<DenseMatrix> propagated;  // gcn: A h (before weights)
    std::vector<DenseMatrix> activated;   // gcn with relu: output after relu
    std::vector<bool> relu;
};

DenseMatrix forward_taped(const PropagationContext& ctx, const DenseMatrix& x, const ModelParams& params, Tape& tape) {
    const auto& s = params.schedule;
    std::size_t last_gcn = s.size();
    for (std::size_t l = 0; l < s.size(); ++l)
        if (s[l].kind == LayerSpec::Kind::gcn) last_gcn = l;

    tape.propagated.assign(s.size(), {});
    tape.activated.assign(s.size(), {});
    tape.relu.assign(s.size(), false);
    DenseMatrix h = x;
    std::size_t wi = 0;
    for (std::size_t l = 0; l < s.size(); ++l) {
        const auto& layer = s[l];
        if (layer.kind == LayerSpec::Kind::ego) {
            h = ctx.ego.apply(h, layer.ego.p, layer.ego.normalized);
            continue;
        }
        h = spmm(ctx.gcn(layer.gcn.normalized), h);
        if (!layer.gcn.has_weights()) continue;
        tape.propagated[l] = h;
        h = matmul(h, params.weights.at(wi++));
        if (l != last_gcn) {
            for (double& v : h.data()) v = std::max(v, 0.0);
            tape.relu[l] = true;
            tape.activated[l] = h;
        }
    }
    return h;
}

void check_inputs(const PropagationContext& ctx, const DenseMatrix& x, std::span<const int> labels,
                  std::span<const std::size_t> mask, const ModelParams& params) {
    if (mask.empty()) throw Error("loss: mask selects no nodes");
    if (labels.size() != ctx.graph->n()) throw DimensionError("loss: labels do not match node count");
    if (x.rows() != ctx.graph->n()) throw DimensionError("loss: features do not match node count");
    for (std::size_t i : mask) {
        if (i >= labels.size()) throw Error("loss: mask index out of range");
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= params.num_classes) {
            throw Error("loss: label " + std::to_string(labels[i]) + " of node " + std::to_string(i) + " out of range");
        }
    }
}

// Mean cross-entropy; fills d_logits when given.
double cross_entropy(const DenseMatrix& logits, std::span<const int> labels, std::span<const std::size_t> mask,
                     DenseMatrix* d_logits) {
    const double scale = 1.0 / static_cast<double>(mask.size());
    double loss = 0.0;
    for (std::size_t i : mask) {
        auto z = logits.row(i);
        const double zmax = *std::max_element(z.begin(), z.end());
        double denom = 0.0;
        for (double v : z) denom += std::exp(v - zmax);
        const double log_denom = std::log(denom) + zmax;
        const auto y = static_cast<std::size_t>(labels[i]);
        loss += log_denom - z[y];
        if (d_logits) {
            auto d = d_logits->row(i);
            for (std::size_t c = 0; c < z.size(); ++c) d[c] = std::exp(z[c] - log_denom) * scale;
            d[y] -= scale;
        }
    }
    return loss * scale;
}

} // namespace

LossAndGrad loss_and_grad(const PropagationContext& ctx, const DenseMatrix& x, std::span<const int> labels,
                          std::span<const std::size_t> mask, const ModelParams& params) {
    check_inputs(ctx, x, labels, mask, params);
    Tape tape;
    const DenseMatrix logits = forward_taped(ctx, x, params, tape);
    DenseMatrix d(logits.rows(), logits.cols());
    LossAndGrad out;
    out.loss = cross_entropy(logits, labels, mask, &d);
    out.logits = logits;
    out.grads.resize(params.weights.size());

    const auto& s = params.schedule;
    std::size_t wi = params.weights.size();
    for (std::size_t l = s.size(); l-- > 0;) {
        const auto& layer = s[l];
        if (layer.kind == LayerSpec::Kind::ego) {
            d = ctx.ego.apply_transpose(d, layer.ego.p, layer.ego.normalized);
            continue;
        }
        if (layer.gcn.has_weights()) {
            --wi;
            if (tape.relu[l]) {
                const auto& act = tape.activated[l].data();
                for (std::size_t k = 0; k < act.size(); ++k)
                    if (act[k] <= 0.0) d.data()[k] = 0.0;
            }
            out.grads[wi] = matmul_tn(tape.propagated[l], d);
            // Nothing below the first weighted layer has parameters.
            if (wi == 0) break;
            d = matmul_nt(d, params.weights[wi]);
        }
        // Both propagation matrices are symmetric.
        d = spmm(ctx.gcn(layer.gcn.normalized), d);
    }
    return out;
}

double loss_only(const PropagationContext& ctx, const DenseMatrix& x, std::span<const int> labels,
                 std::span<const std::size_t> mask, const ModelParams& params) {
    check_inputs(ctx, x, labels, mask, params);
    return cross_entropy(forward(ctx, x, params), labels, mask, nullptr);
}

double masked_cross_entropy(const DenseMatrix& logits, std::span<const int> labels, std::span<const std::size_t> mask) {
    if (mask.empty()) return 0.0;
    return cross_entropy(logits, labels, mask, nullptr);
}

double accuracy(const DenseMatrix& logits, std::span<const int> labels, std::span<const std::size_t> mask) {
    if (mask.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i : mask) {
        auto z = logits.row(i);
        const auto pred = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
        correct += pred == labels[i];
    }
    return static_cast<double>(correct) / static_cast<double>(mask.size());
}

std::string params_to_json(const ModelParams& params, const std::string& extra_config_json) {
    json doc;
    doc["schedule"] = json::array();
    for (const auto& l : params.schedule) doc["schedule"].push_back(format_layer(l));
    doc["weights"] = json::array();
    doc["shapes"] = json::array();
    for (const auto& w : params.weights) {
        doc["weights"].push_back(w.data());
        doc["shapes"].push_back({w.rows(), w.cols()});
    }
    json config = json::parse(extra_config_json);
    config["in_dim"] = params.in_dim;
    config["num_classes"] = params.num_classes;
    doc["config"] = config;
    return doc.dump(1) + "\n";
}

ModelParams params_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid parameter JSON: ") + e.what());
    }
    try {
        ModelParams p;
        std::string sched;
        for (const auto& l : doc.at("schedule")) sched += (sched.empty() ? "" : ",") + l.get<std::string>();
        p.schedule = parse_schedule(sched);
        p.in_dim = doc.at("config").at("in_dim").get<std::size_t>();
        p.num_classes = doc.at("config").at("num_classes").get<std::size_t>();
        const auto shapes = weight_shapes(p.schedule, p.in_dim, p.num_classes);
        const auto& weights = doc.at("weights");
        if (weights.size() != shapes.size()) throw ParseError("parameter JSON: weight count does not match schedule");
        for (std::size_t k = 0; k < shapes.size(); ++k) {
            auto data = weights[k].get<std::vector<double>>();
            if (data.size() != shapes[k].first * shapes[k].second) {
                throw ParseError("parameter JSON: weights[" + std::to_string(k) + "] has " + std::to_string(data.size()) +
                                 " values, expected " + std::to_string(shapes[k].first * shapes[k].second));
            }
            p.weights.emplace_back(shapes[k].first, shapes[k].second, std::move(data));
        }
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("parameter JSON: ") + e.what());
    }
}

} // namespace egognn
