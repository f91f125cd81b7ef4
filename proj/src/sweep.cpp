#include <algorithm>
#include "egognn/sweep.hpp"

#include <cmath>
#include <iomanip>
#include <string>

#include "egognn/error.hpp"
#include "egognn/rng.hpp"

namespace egognn {

std::string model_name(ModelKind m) { return m == ModelKind::gcn ? "gcn" : "ego_gnn"; }

ModelKind parse_model(const std::string& name) {
    if (name == "gcn") return ModelKind::gcn;
    if (name == "ego_gnn" || name == "ego") return ModelKind::ego_gnn;
    throw ParseError("unknown model '" + name + "' (expected gcn or ego_gnn)");
}

SweepConfig SweepConfig::defaults() {
    SweepConfig cfg;
    for (int k = 1; k <= 15; ++k) cfg.p_inter_grid.push_back(k / 100.0);
    return cfg;
}

Schedule schedule_for(ModelKind m, const SweepConfig& cfg) {
    if (m == ModelKind::gcn && !cfg.gcn_override.empty()) return cfg.gcn_override;
    if (m == ModelKind::ego_gnn && !cfg.ego_override.empty()) return cfg.ego_override;
    if (m == ModelKind::gcn) return gcn_schedule(cfg.depth, cfg.hidden);
    // depth counts propagation layers for both models, so Ego-GNN alternates
    // depth/2 ego layers with depth/2 weighted layers.
    return ego_gnn_schedule(std::max<std::size_t>(1, cfg.depth / 2), cfg.hidden, cfg.ego_p);
}

SweepResult oversmoothing_sweep(const SweepConfig& cfg) {
    if (cfg.depth < 2) throw Error("sweep: depth must be >= 2");
    if (cfg.models.empty() || cfg.seeds.empty() || cfg.p_inter_grid.empty()) throw Error("sweep: empty grid");

    const std::size_t n_seeds = cfg.seeds.size();
    const std::size_t n_models = cfg.models.size();
    const std::size_t cells = cfg.p_inter_grid.size() * n_seeds;
    SweepResult result;
    result.rows.resize(cells * n_models);

    const auto n_cells = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t ci = 0; ci < n_cells; ++ci) {
        const auto cell = static_cast<std::size_t>(ci);
        const std::size_t gi = cell / n_seeds;
        const std::size_t si = cell % n_seeds;
        const double p_inter = cfg.p_inter_grid[gi];
        const std::uint64_t seed = cfg.seeds[si];
        // One stream per (p_inter value, seed), independent of grid layout.
        const std::uint64_t stream = derive_seed(seed, static_cast<std::uint64_t>(std::llround(p_inter * 1e6)));

        SbmConfig sbm{cfg.block_sizes, cfg.p_intra, p_inter, stream, cfg.features, cfg.flip_prob};
        const Graph g = generate_sbm(sbm);
        const auto& labels = *g.labels();
        const Splits splits = stratified_split(labels, 0.6, 0.2, derive_seed(stream, 1));
        const DenseMatrix x = g.features() ? *g.features() : DenseMatrix(g.n(), 1, 1.0);

        for (std::size_t mi = 0; mi < n_models; ++mi) {
            SweepRow row{p_inter, model_name(cfg.models[mi]), seed, 0.0, false};
            TrainConfig tc = cfg.train;
            tc.seed = derive_seed(stream, 2);
            try {
                row.accuracy = train(g, x, labels, splits, schedule_for(cfg.models[mi], cfg), tc).report.test_accuracy;
            } catch (const TrainingDiverged&) {
                row.failed = true;
            }
            result.rows[(gi * n_models + mi) * n_seeds + si] = row;
        }
    }
    return result;
}

void write_sweep_csv(const SweepResult& r, std::ostream& out) {
    out << "p_inter,model,seed,accuracy,failed\n";
    for (const auto& row : r.rows) {
        out << std::setprecision(6) << row.p_inter << ',' << row.model << ',' << row.seed << ','
            << std::setprecision(17) << row.accuracy << ',' << (row.failed ? 1 : 0) << '\n';
    }
}

double mean_accuracy(const SweepResult& r, double p_inter, const std::string& model) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : r.rows) {
        if (row.model == model && std::abs(row.p_inter - p_inter) < 1e-12) {
            sum += row.failed ? 0.0 : row.accuracy;
            ++count;
        }
    }
    if (count == 0) throw Error("mean_accuracy: no rows for model " + model);
    return sum / static_cast<double>(count);
}

} // namespace egognn
