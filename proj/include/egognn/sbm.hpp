#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "egognn/graph.hpp"

namespace egognn {

enum class SbmFeatures {
    noisy_one_hot,  // block indicator, re-drawn uniformly with probability flip_prob
    constant,       // all ones, a single column
    none,
};

struct SbmConfig {
    std::vector<std::size_t> block_sizes;
    double p_intra = 0.3;
    double p_inter = 0.05;
    std::uint64_t seed = 0;
    SbmFeatures features = SbmFeatures::noisy_one_hot;
    double flip_prob = 0.3;
};

// Pairs u < v are visited in lexicographic order, each drawing one uniform
// from a single xoshiro256** stream; feature noise is drawn afterwards from
// the same stream. Labels are block indices.
Graph generate_sbm(const SbmConfig& cfg);

// Expected edge count and its standard deviation (sum of independent
// Bernoulli pairs).
double sbm_expected_edges(const SbmConfig& cfg);
double sbm_edge_stddev(const SbmConfig& cfg);

} // namespace egognn
