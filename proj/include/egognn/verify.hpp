#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "egognn/graph.hpp"

namespace egognn {

// Cross-checks of the three propagation routes on Erdos-Renyi graphs:
// tiled (stacked) vs iterative ego sums, supra with the coupling removed vs
// tiled, and the iterative path's memory bound.
struct VerifyConfig {
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::vector<double> densities{0.1, 0.3, 0.6};
    std::vector<int> scales{1, 2, 3};
    std::size_t seeds = 20;
    std::size_t features = 4;
    std::size_t supra_max_n = 16;
    double tiled_tolerance = 1e-9;
    double supra_tolerance = 1e-12;
    // Perturbs the iterative output; a negative control for the harness.
    bool inject_fault = false;
};

struct VerifyFailure {
    std::size_t n = 0;
    double density = 0.0;
    std::uint64_t seed = 0;
    int p = 0;
    std::string check;
    double deviation = 0.0;
};

struct VerifyReport {
    std::size_t cases = 0;
    double max_tiled_deviation = 0.0;
    double max_supra_deviation = 0.0;
    std::size_t supra_cases = 0;
    double max_peak_rows_ratio = 0.0;  // peak_block_rows / |V|
    std::vector<VerifyFailure> failures;

    bool passed() const { return failures.empty(); }
    std::string to_json() const;
};

VerifyReport run_verification(const VerifyConfig& cfg);

// G(n, p_edge); pairs u < v in lexicographic order, one uniform draw each
// from a xoshiro256** stream seeded with seed.
Graph erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed);

// The graph run_verification uses for (n, densities[density_index], seed).
Graph verification_graph(const VerifyConfig& cfg, std::size_t n, std::size_t density_index, std::uint64_t seed);

} // namespace egognn
