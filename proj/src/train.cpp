#include "egognn/train.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "egognn/error.hpp"
#include "egognn/rng.hpp"

namespace egognn {

std::size_t num_classes(std::span<const int> labels) {
    int top = -1;
    for (int y : labels) {
        if (y < 0) throw Error("labels must be non-negative");
        top = std::max(top, y);
    }
    return static_cast<std::size_t>(top + 1);
}

Splits stratified_split(std::span<const int> labels, double train_frac, double val_frac, std::uint64_t seed) {
    if (train_frac < 0 || val_frac < 0 || train_frac + val_frac > 1.0) throw Error("split fractions must sum to <= 1");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    Splits s;
    for (auto& [cls, idx] : by_class) {
        Xoshiro256 rng(derive_seed(seed, static_cast<std::uint64_t>(cls)));
        std::shuffle(idx.begin(), idx.end(), rng);
        const auto size = static_cast<double>(idx.size());
        const auto n_train = static_cast<std::size_t>(std::llround(train_frac * size));
        const auto n_val = std::min(idx.size() - n_train, static_cast<std::size_t>(std::llround(val_frac * size)));
        s.train.insert(s.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        s.val.insert(s.val.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train),
                     idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
        s.test.insert(s.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), idx.end());
    }
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.val.begin(), s.val.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

namespace {

void check_splits(const Splits& s, std::size_t n) {
    std::vector<char> seen(n, 0);
    for (const auto* part : {&s.train, &s.val, &s.test})
        for (std::size_t i : *part) {
            if (i >= n) throw Error("split index " + std::to_string(i) + " out of range");
            if (seen[i]) throw Error("splits are not disjoint: node " + std::to_string(i) + " appears twice");
            seen[i] = 1;
        }
    if (s.train.empty()) throw Error("training split is empty");
}

} // namespace

TrainResult train(const Graph& g, const DenseMatrix& x, std::span<const int> labels, const Splits& splits,
                  const Schedule& schedule, const TrainConfig& cfg) {
    return train(g, x, labels, splits, init_params(schedule, x.cols(), num_classes(labels), cfg.seed), cfg);
}

TrainResult train(const Graph& g, const DenseMatrix& x, std::span<const int> labels, const Splits& splits,
                  ModelParams params, const TrainConfig& cfg) {
    if (!(cfg.learning_rate >= 0.0)) throw Error("learning rate must be non-negative");
    if (!(cfg.weight_decay >= 0.0)) throw Error("weight decay must be non-negative");
    check_splits(splits, g.n());

    const PropagationContext ctx(g);
    TrainResult result{params, {}};
    auto& report = result.report;
    std::size_t since_best = 0;
    bool have_best = false;
    double best_val_loss = 0.0;

    constexpr double kBeta1 = 0.9;
    constexpr double kBeta2 = 0.999;
    constexpr double kEpsilon = 1e-8;
    std::vector<std::vector<double>> first;
    std::vector<std::vector<double>> second;
    for (const auto& w : params.weights) {
        first.emplace_back(w.data().size(), 0.0);
        second.emplace_back(w.data().size(), 0.0);
    }
    std::size_t step = 0;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        LossAndGrad lg = loss_and_grad(ctx, x, labels, splits.train, params);
        if (!std::isfinite(lg.loss)) {
            throw TrainingDiverged("training diverged at epoch " + std::to_string(epoch) + ": loss is " +
                                   std::to_string(lg.loss));
        }
        const auto& monitor = splits.val.empty() ? splits.train : splits.val;
        const double val_acc = accuracy(lg.logits, labels, monitor);
        const double val_loss = masked_cross_entropy(lg.logits, labels, monitor);
        report.history.push_back({lg.loss, val_acc, val_loss});
        report.epochs_run = epoch + 1;

        const bool improved = !have_best || val_acc > report.best_val_accuracy ||
                              (val_acc == report.best_val_accuracy && val_loss < best_val_loss);
        if (improved) {
            have_best = true;
            best_val_loss = val_loss;
            report.best_val_accuracy = val_acc;
            report.best_epoch = epoch;
            result.params = params;
            since_best = 0;
        } else if (++since_best >= cfg.patience) {
            break;
        }

        ++step;
        const double bias1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
        const double bias2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
        for (std::size_t k = 0; k < params.weights.size(); ++k) {
            auto& w = params.weights[k].data();
            const auto& gr = lg.grads[k].data();
            for (std::size_t e = 0; e < w.size(); ++e) {
                const double g = gr[e] + cfg.weight_decay * w[e];
                if (cfg.optimizer == Optimizer::gd) {
                    w[e] -= cfg.learning_rate * g;
                    continue;
                }
                auto& m = first[k][e];
                auto& v = second[k][e];
                m = kBeta1 * m + (1.0 - kBeta1) * g;
                v = kBeta2 * v + (1.0 - kBeta2) * g * g;
                w[e] -= cfg.learning_rate * (m / bias1) / (std::sqrt(v / bias2) + kEpsilon);
            }
        }
    }
    if (!have_best) result.params = params;

    const DenseMatrix logits = forward(ctx, x, result.params);
    for (double v : logits.data()) {
        if (!std::isfinite(v)) throw TrainingDiverged("training produced non-finite logits");
    }
    report.train_accuracy = accuracy(logits, labels, splits.train);
    report.test_accuracy = accuracy(logits, labels, splits.test);
    if (!have_best) report.best_val_accuracy = accuracy(logits, labels, splits.val);
    return result;
}

} // namespace egognn
