#include "egognn/ego_propagation.hpp"

#include <algorithm>
#include <string>

#include "egognn/error.hpp"
#include "egognn/kernels.hpp"

namespace egognn {

DenseMatrix ego_step_raw(const Graph& g, const DenseMatrix& h, int p, PropagationReport* report, Exec exec) {
    return ego_step(g, h, EgoLayerConfig{p, false}, report, exec);
}

DenseMatrix ego_step(const Graph& g, const DenseMatrix& h, const EgoLayerConfig& cfg, PropagationReport* report,
                     Exec exec) {
    if (cfg.p < 1) throw Error("ego_step: p must be >= 1, got " + std::to_string(cfg.p));
    if (h.rows() != g.n()) {
        throw DimensionError("ego_step: representations have " + std::to_string(h.rows()) + " rows for " +
                             std::to_string(g.n()) + " nodes");
    }
    const EgoOperator op(g);
    return op.apply(h, cfg.p, cfg.normalized, exec, report);
}

SparseMatrix gcn_operator(const Graph& g, bool normalized) {
    const std::size_t n = g.n();
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::size_t> cols;
    cols.reserve(g.adjacency().nnz() + n);
    for (std::size_t r = 0; r < n; ++r) {
        bool placed_self = false;
        for (std::size_t v : g.neighbors(r)) {
            if (!placed_self && v > r) {
                cols.push_back(r);
                placed_self = true;
            }
            cols.push_back(v);
        }
        if (!placed_self) cols.push_back(r);
        offsets[r + 1] = cols.size();
    }
    std::vector<double> vals(cols.size(), 1.0);
    SparseMatrix a = SparseMatrix::from_csr(n, n, std::move(offsets), std::move(cols), std::move(vals));
    return normalized ? normalize_sym(a) : a;
}

DenseMatrix gcn_step(const Graph& g, const DenseMatrix& h, const std::optional<DenseMatrix>& w, bool normalized,
                     Exec exec) {
    if (h.rows() != g.n()) {
        throw DimensionError("gcn_step: representations have " + std::to_string(h.rows()) + " rows for " +
                             std::to_string(g.n()) + " nodes");
    }
    if (w && w->rows() != h.cols()) {
        throw DimensionError("gcn_step: weights have " + std::to_string(w->rows()) + " rows for " +
                             std::to_string(h.cols()) + " input features");
    }
    DenseMatrix out = spmm(gcn_operator(g, normalized), h, exec);
    return w ? matmul(out, *w) : out;
}

PropagationContext::PropagationContext(const Graph& g)
    : graph(&g), ego(g), gcn_normalized(gcn_operator(g, true)), gcn_unnormalized(gcn_operator(g, false)) {}

DenseMatrix interleaved_forward(const PropagationContext& ctx, const DenseMatrix& x, const Schedule& schedule,
                                const LayerWeights& weights, Exec exec) {
    if (schedule.empty()) throw Error("interleaved_forward: schedule is empty");
    if (x.cols() == 0) throw DimensionError("interleaved_forward: input has no feature columns");
    if (x.rows() != ctx.graph->n()) throw DimensionError("interleaved_forward: input rows do not match node count");

    std::size_t last_gcn = schedule.size();
    for (std::size_t l = 0; l < schedule.size(); ++l)
        if (schedule[l].kind == LayerSpec::Kind::gcn) last_gcn = l;

    DenseMatrix h = x;
    std::size_t next_weight = 0;
    for (std::size_t l = 0; l < schedule.size(); ++l) {
        const auto& layer = schedule[l];
        if (layer.kind == LayerSpec::Kind::ego) {
            h = ctx.ego.apply(h, layer.ego.p, layer.ego.normalized, exec);
            continue;
        }
        h = spmm(ctx.gcn(layer.gcn.normalized), h, exec);
        if (!layer.gcn.has_weights()) continue;
        if (next_weight >= weights.size()) {
            throw DimensionError("layer " + std::to_string(l) + " (" + format_layer(layer) + "): no weight matrix supplied");
        }
        const auto& w = weights[next_weight++];
        if (w.rows() != h.cols()) {
            throw DimensionError("layer " + std::to_string(l) + " (" + format_layer(layer) + "): weights have " +
                                 std::to_string(w.rows()) + " rows but the input has " + std::to_string(h.cols()) +
                                 " features");
        }
        if (layer.gcn.width && w.cols() != *layer.gcn.width) {
            throw DimensionError("layer " + std::to_string(l) + " (" + format_layer(layer) + "): weights have " +
                                 std::to_string(w.cols()) + " columns, expected " + std::to_string(*layer.gcn.width));
        }
        h = matmul(h, w);
        if (l != last_gcn) {
            for (double& v : h.data()) v = std::max(v, 0.0);
        }
    }
    if (next_weight != weights.size()) {
        throw DimensionError("interleaved_forward: " + std::to_string(weights.size()) + " weight matrices for " +
                             std::to_string(next_weight) + " weighted layers");
    }
    return h;
}

DenseMatrix interleaved_forward(const Graph& g, const DenseMatrix& x, const Schedule& schedule,
                                const LayerWeights& weights, Exec exec) {
    const PropagationContext ctx(g);
    return interleaved_forward(ctx, x, schedule, weights, exec);
}

} // namespace egognn
