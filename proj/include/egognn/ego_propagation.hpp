#pragma once

#include <optional>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/ego_operator.hpp"
#include "egognn/graph.hpp"
#include "egognn/schedule.hpp"
#include "egognn/sparse_matrix.hpp"

namespace egognn {

// H[i] = (sum_j A_j^p h)[i] / |Ego(i)| without materializing the tiled state.
DenseMatrix ego_step_raw(const Graph& g, const DenseMatrix& h, int p, PropagationReport* report = nullptr,
                         Exec exec = Exec::parallel);

// As ego_step_raw, with A_j replaced by D_j^{-1/2} A_j D_j^{-1/2} when
// cfg.normalized; the denominator stays deg(i) + 1.
DenseMatrix ego_step(const Graph& g, const DenseMatrix& h, const EgoLayerConfig& cfg,
                     PropagationReport* report = nullptr, Exec exec = Exec::parallel);

// A + I, or D~^{-1/2} (A + I) D~^{-1/2} when normalized.
SparseMatrix gcn_operator(const Graph& g, bool normalized);

// gcn_operator(g) h, then times w when given.
DenseMatrix gcn_step(const Graph& g, const DenseMatrix& h, const std::optional<DenseMatrix>& w,
                     bool normalized = true, Exec exec = Exec::parallel);

// Operators for one graph, built once and reused across layers and epochs.
struct PropagationContext {
    explicit PropagationContext(const Graph& g);
    const Graph* graph;
    EgoOperator ego;
    SparseMatrix gcn_normalized;
    SparseMatrix gcn_unnormalized;

    const SparseMatrix& gcn(bool normalized) const { return normalized ? gcn_normalized : gcn_unnormalized; }
};

// Weight matrices for the weighted gcn layers of a schedule, in order.
using LayerWeights = std::vector<DenseMatrix>;

// Applies the schedule in order. Weighted gcn layers are followed by ReLU
// except for the last gcn layer of the schedule; ego layers are linear.
// Shape problems throw DimensionError naming the layer index.
DenseMatrix interleaved_forward(const PropagationContext& ctx, const DenseMatrix& x, const Schedule& schedule,
                                const LayerWeights& weights, Exec exec = Exec::parallel);
DenseMatrix interleaved_forward(const Graph& g, const DenseMatrix& x, const Schedule& schedule,
                                const LayerWeights& weights = {}, Exec exec = Exec::parallel);

} // namespace egognn
