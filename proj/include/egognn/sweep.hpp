#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "egognn/sbm.hpp"
#include "egognn/train.hpp"

namespace egognn {

enum class ModelKind { gcn, ego_gnn };
std::string model_name(ModelKind m);
ModelKind parse_model(const std::string& name);

struct SweepConfig {
    std::vector<std::size_t> block_sizes{100, 100, 100};
    double p_intra = 0.3;
    std::vector<double> p_inter_grid;  // default 0.01 .. 0.15 step 0.01
    std::vector<ModelKind> models{ModelKind::gcn, ModelKind::ego_gnn};
    std::size_t depth = 4;              // propagation layers per model
    std::size_t hidden = 16;
    int ego_p = 1;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    SbmFeatures features = SbmFeatures::noisy_one_hot;
    double flip_prob = 0.3;
    TrainConfig train;
    // Replace the schedules derived from depth/hidden when non-empty.
    Schedule gcn_override;
    Schedule ego_override;

    static SweepConfig defaults();
};

struct SweepRow {
    double p_inter = 0.0;
    std::string model;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    bool failed = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

Schedule schedule_for(ModelKind m, const SweepConfig& cfg);

// Rows in grid order: p_inter, then model, then seed. The graph for a
// (p_inter, seed) cell is shared by all models.
SweepResult oversmoothing_sweep(const SweepConfig& cfg);

// Header "p_inter,model,seed,accuracy,failed".
void write_sweep_csv(const SweepResult& r, std::ostream& out);

// Mean accuracy per (p_inter, model) over seeds; failed rows count as 0.
double mean_accuracy(const SweepResult& r, double p_inter, const std::string& model);

} // namespace egognn
