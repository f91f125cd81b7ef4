#include "egognn/verify.hpp"

#include <algorithm>

#include <json.hpp>

#include "egognn/ego_propagation.hpp"
#include "egognn/multiplex.hpp"
#include "egognn/rng.hpp"

namespace egognn {

Graph erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.uniform() < p_edge) edges.emplace_back(u, v);
    return Graph(n, edges);
}

namespace {

std::uint64_t graph_seed(std::size_t n, std::size_t density_index, std::uint64_t seed) {
    return derive_seed(seed, n * 16 + density_index);
}

} // namespace

Graph verification_graph(const VerifyConfig& cfg, std::size_t n, std::size_t density_index, std::uint64_t seed) {
    return erdos_renyi(n, cfg.densities.at(density_index), graph_seed(n, density_index, seed));
}

VerifyReport run_verification(const VerifyConfig& cfg) {
    VerifyReport report;
    for (std::size_t n : cfg.sizes)
        for (std::size_t di = 0; di < cfg.densities.size(); ++di)
            for (std::uint64_t seed = 0; seed < cfg.seeds; ++seed) {
                const double density = cfg.densities[di];
                const std::uint64_t gseed = graph_seed(n, di, seed);
                const Graph g = erdos_renyi(n, density, gseed);
                Xoshiro256 rng(derive_seed(gseed, 7));
                DenseMatrix h(n, cfg.features);
                for (double& v : h.data()) v = 2.0 * rng.uniform() - 1.0;

                const auto fail = [&](int p, const char* check, double dev) {
                    report.failures.push_back({n, density, seed, p, check, dev});
                };
                for (int p : cfg.scales) {
                    ++report.cases;
                    PropagationReport prop;
                    DenseMatrix iterative = ego_step_raw(g, h, p, &prop);
                    if (cfg.inject_fault) iterative(0, 0) *= 1.0 + 1e-6;
                    const DenseMatrix tiled = tiled_aggregate(g, tiled_intra_step(g, h, p));
                    const double dev = max_relative_deviation(tiled, iterative);
                    report.max_tiled_deviation = std::max(report.max_tiled_deviation, dev);
                    if (dev > cfg.tiled_tolerance) fail(p, "tiled_vs_iterative", dev);

                    const DenseMatrix tiled_norm = tiled_aggregate(g, tiled_intra_step(g, h, p, true));
                    const DenseMatrix iter_norm = ego_step(g, h, EgoLayerConfig{p, true});
                    const double dev_norm = max_relative_deviation(tiled_norm, iter_norm);
                    report.max_tiled_deviation = std::max(report.max_tiled_deviation, dev_norm);
                    if (dev_norm > cfg.tiled_tolerance) fail(p, "tiled_vs_iterative_normalized", dev_norm);

                    const double ratio = static_cast<double>(prop.peak_block_rows) / static_cast<double>(n);
                    report.max_peak_rows_ratio = std::max(report.max_peak_rows_ratio, ratio);
                    if (prop.peak_block_rows > 2 * n) fail(p, "memory_bound", ratio);

                    if (n <= cfg.supra_max_n) {
                        ++report.supra_cases;
                        const SupraAdjacency intra = build_supra(g, SupraOptions{false, kDefaultSupraCap});
                        const DenseMatrix supra = supra_propagate(intra, h, p);
                        const double sdev = max_relative_deviation(supra, tiled_intra_step(g, h, p).data);
                        report.max_supra_deviation = std::max(report.max_supra_deviation, sdev);
                        if (sdev > cfg.supra_tolerance) fail(p, "supra_intra_vs_tiled", sdev);
                    }
                }
            }
    return report;
}

std::string VerifyReport::to_json() const {
    nlohmann::json doc;
    doc["passed"] = passed();
    doc["cases"] = cases;
    doc["supra_cases"] = supra_cases;
    doc["max_tiled_deviation"] = max_tiled_deviation;
    doc["max_supra_deviation"] = max_supra_deviation;
    doc["max_peak_rows_ratio"] = max_peak_rows_ratio;
    doc["failures"] = nlohmann::json::array();
    for (const auto& f : failures) {
        doc["failures"].push_back(
            {{"n", f.n}, {"density", f.density}, {"seed", f.seed}, {"p", f.p}, {"check", f.check}, {"deviation", f.deviation}});
    }
    return doc.dump(2) + "\n";
}

} // namespace egognn
