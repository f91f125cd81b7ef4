#include "egognn/sbm.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "egognn/error.hpp"
#include "egognn/rng.hpp"

namespace egognn {

namespace {

void validate(const SbmConfig& cfg) {
    const auto bad = [](double p) { return !(p >= 0.0 && p <= 1.0); };
    if (bad(cfg.p_intra)) throw Error("sbm: p_intra must lie in [0, 1], got " + std::to_string(cfg.p_intra));
    if (bad(cfg.p_inter)) throw Error("sbm: p_inter must lie in [0, 1], got " + std::to_string(cfg.p_inter));
    if (bad(cfg.flip_prob)) throw Error("sbm: flip probability must lie in [0, 1]");
    if (cfg.block_sizes.size() < 2) throw Error("sbm: at least two blocks are required");
    for (std::size_t b : cfg.block_sizes)
        if (b == 0) throw Error("sbm: block sizes must be positive");
}

std::vector<int> block_labels(const SbmConfig& cfg) {
    std::vector<int> labels;
    for (std::size_t b = 0; b < cfg.block_sizes.size(); ++b) labels.insert(labels.end(), cfg.block_sizes[b], static_cast<int>(b));
    return labels;
}

} // namespace

Graph generate_sbm(const SbmConfig& cfg) {
    validate(cfg);
    const std::vector<int> labels = block_labels(cfg);
    const std::size_t n = labels.size();

    Xoshiro256 rng(cfg.seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const double p = labels[u] == labels[v] ? cfg.p_intra : cfg.p_inter;
            if (rng.uniform() < p) edges.emplace_back(u, v);
        }
    Graph g(n, edges);

    const std::size_t blocks = cfg.block_sizes.size();
    switch (cfg.features) {
    case SbmFeatures::noisy_one_hot: {
        DenseMatrix x(n, blocks);
        for (std::size_t i = 0; i < n; ++i) {
            auto b = static_cast<std::size_t>(labels[i]);
            if (rng.uniform() < cfg.flip_prob) b = static_cast<std::size_t>(rng.below(blocks));
            x(i, b) = 1.0;
        }
        g.set_features(std::move(x));
        break;
    }
    case SbmFeatures::constant:
        g.set_features(DenseMatrix(n, 1, 1.0));
        break;
    case SbmFeatures::none:
        break;
    }
    g.set_labels(labels);
    return g;
}

namespace {

template <typename F>
double over_pairs(const SbmConfig& cfg, F term) {
    const double n = static_cast<double>(std::accumulate(cfg.block_sizes.begin(), cfg.block_sizes.end(), std::size_t{0}));
    double intra_pairs = 0.0;
    for (std::size_t b : cfg.block_sizes) intra_pairs += 0.5 * static_cast<double>(b) * static_cast<double>(b - 1);
    const double inter_pairs = 0.5 * n * (n - 1) - intra_pairs;
    return intra_pairs * term(cfg.p_intra) + inter_pairs * term(cfg.p_inter);
}

} // namespace

double sbm_expected_edges(const SbmConfig& cfg) {
    validate(cfg);
    return over_pairs(cfg, [](double p) { return p; });
}

double sbm_edge_stddev(const SbmConfig& cfg) {
    validate(cfg);
    return std::sqrt(over_pairs(cfg, [](double p) { return p * (1.0 - p); }));
}

} // namespace egognn
