#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/ego_propagation.hpp"
#include "egognn/schedule.hpp"

namespace egognn {

// Trainable weights of an interleaved schedule. Only weighted gcn layers own
// a matrix; ego layers are parameter-free.
struct ModelParams {
    Schedule schedule;
    std::size_t in_dim = 0;
    std::size_t num_classes = 0;
    LayerWeights weights;

    std::size_t parameter_count() const;
    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// (rows, cols) of each weight matrix in order; throws if the schedule has no
// trainable output layer or a non-final layer is parameter-free.
std::vector<std::pair<std::size_t, std::size_t>> weight_shapes(const Schedule& s, std::size_t in_dim,
                                                                std::size_t num_classes);

// Glorot-uniform initialization from a seeded xoshiro256** stream.
ModelParams init_params(const Schedule& s, std::size_t in_dim, std::size_t num_classes, std::uint64_t seed);
ModelParams zero_params(const Schedule& s, std::size_t in_dim, std::size_t num_classes);

DenseMatrix forward(const PropagationContext& ctx, const DenseMatrix& x, const ModelParams& params);

struct LossAndGrad {
    double loss = 0.0;
    LayerWeights grads;
    DenseMatrix logits;
};

// Mean softmax cross-entropy over the masked nodes, with exact gradients by
// backpropagating through the fixed linear propagation operators.
LossAndGrad loss_and_grad(const PropagationContext& ctx, const DenseMatrix& x, std::span<const int> labels,
                          std::span<const std::size_t> mask, const ModelParams& params);
double loss_only(const PropagationContext& ctx, const DenseMatrix& x, std::span<const int> labels,
                 std::span<const std::size_t> mask, const ModelParams& params);

// Mean cross-entropy of precomputed logits over the masked nodes.
double masked_cross_entropy(const DenseMatrix& logits, std::span<const int> labels, std::span<const std::size_t> mask);

double accuracy(const DenseMatrix& logits, std::span<const int> labels, std::span<const std::size_t> mask);

// {"schedule": [...], "weights": [[...], ...], "shapes": [[r,c], ...],
//  "config": {"in_dim": ..., "num_classes": ..., ...}}; weights row-major.
std::string params_to_json(const ModelParams& params, const std::string& extra_config_json = "{}");
ModelParams params_from_json(const std::string& text);

} // namespace egognn
