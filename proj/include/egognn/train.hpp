#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/graph.hpp"
#include "egognn/model.hpp"
#include "egognn/schedule.hpp"

namespace egognn {

enum class Optimizer {
    gd,    // plain gradient descent
    adam,  // Adam with bias correction (beta1 0.9, beta2 0.999, eps 1e-8)
};

struct TrainConfig {
    Optimizer optimizer = Optimizer::adam;
    double learning_rate = 0.01;
    std::size_t epochs = 300;
    double weight_decay = 5e-4;
    std::uint64_t seed = 0;
    std::size_t patience = 30;
    Exec exec = Exec::parallel;
};

struct Splits {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

// Per-class shuffled split; each class contributes round(frac * size) nodes
// to train and val, the rest to test.
Splits stratified_split(std::span<const int> labels, double train_frac, double val_frac, std::uint64_t seed);

struct EpochStats {
    double train_loss = 0.0;
    double val_accuracy = 0.0;
    double val_loss = 0.0;
};

struct TrainReport {
    std::vector<EpochStats> history;
    std::size_t epochs_run = 0;
    std::size_t best_epoch = 0;
    double best_val_accuracy = 0.0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

struct TrainResult {
    ModelParams params;  // weights of the best-validation epoch
    TrainReport report;
};

// Full-batch training (Adam or plain gradient descent) with L2 weight decay
// and early stopping. The kept checkpoint has the best validation accuracy,
// ties going to the lower validation loss; patience counts epochs without
// such an improvement. Throws TrainingDiverged on a non-finite loss.
TrainResult train(const Graph& g, const DenseMatrix& x, std::span<const int> labels, const Splits& splits,
                  const Schedule& schedule, const TrainConfig& cfg);
// Continues from the given parameters.
TrainResult train(const Graph& g, const DenseMatrix& x, std::span<const int> labels, const Splits& splits,
                  ModelParams init, const TrainConfig& cfg);

std::size_t num_classes(std::span<const int> labels);

} // namespace egognn
