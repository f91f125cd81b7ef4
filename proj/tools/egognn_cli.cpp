// Command-line front end: propagation checks, expressiveness tests, spectra,
// SBM sweeps and training.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "egognn/ego_propagation.hpp"
#include "egognn/error.hpp"
#include "egognn/expressiveness.hpp"
#include "egognn/graph_io.hpp"
#include "egognn/model.hpp"
#include "egognn/sbm.hpp"
#include "egognn/spectral.hpp"
#include "egognn/sweep.hpp"
#include "egognn/train.hpp"
#include "egognn/verify.hpp"

namespace {

using nlohmann::json;
using namespace egognn;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Schedule strings come from the command line, so a bad one is a usage error.
Schedule schedule_arg(const std::string& text) {
    try {
        return parse_schedule(text);
    } catch (const ParseError& e) {
        throw Error(e.what());
    }
}

// Sink for --output, defaulting to stdout.
void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw IoError("cannot write " + output);
    out << text;
}

// Signatures are printed rounded to 12 decimals so worked values read
// exactly (7 rather than 7.000000000000001).
json rounded(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(std::round(x * 1e12) / 1e12);
    return arr;
}

std::string join(const std::vector<std::size_t>& v, char sep = ' ') {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(v[k]);
    return s;
}

Graph load(const std::string& path, const std::string& graph_format) {
    return graph_format.empty() ? load_graph(path) : load_graph(path, parse_graph_format(graph_format));
}

struct Common {
    std::string output;
    std::string format = "json";
    std::string graph_format;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
    c.format = default_format;
    cmd->add_option("--output,-o", c.output, "Write results to this path instead of stdout");
    cmd->add_option("--format", c.format, "Result format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--graph-format", c.graph_format, "Input graph format (json|tsv); inferred from extension by default")
        ->check(CLI::IsMember({"json", "tsv"}));
}

int cmd_verify(const VerifyConfig& cfg, const Common& c) {
    const VerifyReport report = run_verification(cfg);
    if (c.format == "csv") {
        std::ostringstream out;
        out << "check,n,density,seed,p,deviation\n";
        for (const auto& f : report.failures)
            out << f.check << ',' << f.n << ',' << f.density << ',' << f.seed << ',' << f.p << ',' << f.deviation << '\n';
        emit(out.str(), c.output);
    } else {
        emit(report.to_json(), c.output);
    }
    std::cerr << (report.passed() ? "verify: pass" : "verify: FAIL") << " (" << report.cases << " cases, max tiled deviation "
              << report.max_tiled_deviation << ", max supra deviation " << report.max_supra_deviation << ")\n";
    return report.passed() ? kExitOk : kExitFailed;
}

int cmd_wl_test(const std::string& p1, const std::string& p2, const Common& c) {
    const WlComparison cmp = wl_compare(load(p1, c.graph_format), load(p2, c.graph_format));
    if (c.format == "csv") {
        emit("distinguished,signature_g1,signature_g2\n" + std::string(cmp.distinguished ? "true" : "false") + "," +
                 join(cmp.signature1) + "," + join(cmp.signature2) + "\n",
             c.output);
    } else {
        json doc{{"distinguished", cmp.distinguished}, {"signature_g1", cmp.signature1}, {"signature_g2", cmp.signature2}};
        emit(doc.dump() + "\n", c.output);
    }
    return kExitOk;
}

int cmd_distinguish(const std::string& p1, const std::string& p2, const std::string& schedule_text, std::size_t width,
                    bool baseline, const Common& c) {
    const Graph g1 = load(p1, c.graph_format);
    const Graph g2 = load(p2, c.graph_format);
    const Schedule schedule = schedule_arg(schedule_text);
    const bool wl = wl_distinguish(g1, g2);
    const EgoComparison ego = ego_compare(g1, g2, schedule, width);
    json doc{{"wl", wl}, {"ego", ego.distinguished}, {"sig1", rounded(ego.signature1)}, {"sig2", rounded(ego.signature2)}};
    if (baseline) {
        const EgoComparison plain = ego_compare(g1, g2, plain_message_passing_schedule(), width);
        doc["baseline"] = {{"distinguished", plain.distinguished},
                           {"sig1", rounded(plain.signature1)},
                           {"sig2", rounded(plain.signature2)}};
    }
    if (c.format == "csv") {
        std::ostringstream out;
        out << "wl,ego,sig1,sig2\n" << (wl ? "true" : "false") << ',' << (ego.distinguished ? "true" : "false") << ','
            << doc["sig1"].dump() << ',' << doc["sig2"].dump() << '\n';
        emit(out.str(), c.output);
    } else {
        emit(doc.dump() + "\n", c.output);
    }
    return kExitOk;
}

int cmd_triangles(const std::string& path, bool oracle, const Common& c) {
    const Graph g = load(path, c.graph_format);
    const auto per_node = triangles_per_node(g);
    const auto total = triangles_total(g);
    if (c.format == "csv") {
        std::ostringstream out;
        out << "node,triangles\n";
        for (std::size_t i = 0; i < per_node.size(); ++i) out << i << ',' << per_node[i] << '\n';
        emit(out.str(), c.output);
    } else {
        json doc{{"per_node", per_node}, {"total", total}};
        if (oracle) doc["oracle"] = triangle_oracle(g);
        emit(doc.dump() + "\n", c.output);
    }
    if (oracle && triangle_oracle(g) != total) {
        std::cerr << "triangles: ego-degree count disagrees with brute force\n";
        return kExitFailed;
    }
    return kExitOk;
}

int cmd_spectra(const std::string& path, const std::vector<std::size_t>& nodes_in, bool supra, const Common& c) {
    const Graph g = load(path, c.graph_format);
    std::vector<std::size_t> nodes = nodes_in;
    if (nodes.empty())
        for (std::size_t i = 0; i < g.n(); ++i) nodes.push_back(i);

    const Spectrum base = sym_eigenvalues(g.adjacency());
    std::vector<InterlacingWitness> checks;
    for (std::size_t i : nodes) checks.push_back(check_interlacing(g, i, base));
    std::optional<Spectrum> supra_spec;
    if (supra) supra_spec = supra_spectrum(g);

    bool all_pass = true;
    for (const auto& w : checks) all_pass &= w.pass;

    std::ostringstream out;
    out.precision(17);
    if (c.format == "csv") {
        out << "matrix,index,eigenvalue\n";
        for (std::size_t k = 0; k < base.eigenvalues.size(); ++k) out << "base," << k << ',' << base.eigenvalues[k] << '\n';
        for (std::size_t q = 0; q < nodes.size(); ++q)
            for (std::size_t k = 0; k < checks[q].ego.eigenvalues.size(); ++k)
                out << "ego:" << nodes[q] << ',' << k << ',' << checks[q].ego.eigenvalues[k] << '\n';
        if (supra_spec)
            for (std::size_t k = 0; k < supra_spec->eigenvalues.size(); ++k)
                out << "supra," << k << ',' << supra_spec->eigenvalues[k] << '\n';
        emit(out.str(), c.output);
    } else {
        json doc{{"base", base.eigenvalues}, {"interlacing", all_pass}, {"ego", json::array()}};
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            doc["ego"].push_back({{"node", nodes[q]},
                                  {"eigenvalues", checks[q].ego.eigenvalues},
                                  {"interlacing", checks[q].pass},
                                  {"worst_slack", checks[q].worst_slack}});
        }
        if (supra_spec) doc["supra"] = supra_spec->eigenvalues;
        emit(doc.dump(1) + "\n", c.output);
    }
    std::cerr << "interlacing: " << (all_pass ? "pass" : "FAIL") << " (" << nodes.size() << " nodes)\n";
    return all_pass ? kExitOk : kExitFailed;
}

int cmd_sbm_sweep(const SweepConfig& cfg, const Common& c) {
    const SweepResult r = oversmoothing_sweep(cfg);
    std::ostringstream out;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"p_inter", row.p_inter}, {"model", row.model}, {"seed", row.seed},
                            {"accuracy", row.accuracy}, {"failed", row.failed}});
        out << rows.dump(1) << '\n';
    } else {
        write_sweep_csv(r, out);
    }
    emit(out.str(), c.output);

    for (double p : cfg.p_inter_grid) {
        std::cerr << "p_inter=" << p;
        for (auto m : cfg.models) std::cerr << "  " << model_name(m) << "=" << mean_accuracy(r, p, model_name(m));
        std::cerr << '\n';
    }
    return kExitOk;
}

struct TrainArgs {
    std::string graph;
    std::string schedule = "ego:p=1,gcn:16,ego:p=1,gcn:out";
    std::string params_in;
    std::string report_path;
    TrainConfig cfg;
    double train_frac = 0.6;
    double val_frac = 0.2;
};

int cmd_train(const TrainArgs& a, const Common& c) {
    const Graph g = load(a.graph, c.graph_format);
    if (!g.labels()) throw Error("train: graph " + a.graph + " has no labels");
    const auto& labels = *g.labels();
    const DenseMatrix x = g.features() ? *g.features() : DenseMatrix(g.n(), 1, 1.0);
    const Splits splits = stratified_split(labels, a.train_frac, a.val_frac, a.cfg.seed);

    ModelParams init;
    if (!a.params_in.empty()) {
        std::ifstream in(a.params_in);
        if (!in) throw IoError("cannot open " + a.params_in);
        std::stringstream ss;
        ss << in.rdbuf();
        init = params_from_json(ss.str());
    } else {
        init = init_params(schedule_arg(a.schedule), x.cols(), num_classes(labels), a.cfg.seed);
    }
    const TrainResult result = train(g, x, labels, splits, init, a.cfg);

    json config{{"learning_rate", a.cfg.learning_rate}, {"epochs", a.cfg.epochs}, {"weight_decay", a.cfg.weight_decay},
                {"seed", a.cfg.seed}, {"patience", a.cfg.patience}};
    json report{{"epochs_run", result.report.epochs_run},
                {"best_epoch", result.report.best_epoch},
                {"best_val_accuracy", result.report.best_val_accuracy},
                {"train_accuracy", result.report.train_accuracy},
                {"test_accuracy", result.report.test_accuracy},
                {"schedule", format_schedule(result.params.schedule)},
                {"parameters", result.params.parameter_count()}};
    json history = json::array();
    for (const auto& e : result.report.history) history.push_back({e.train_loss, e.val_accuracy});
    report["history"] = history;

    if (!c.output.empty()) emit(params_to_json(result.params, config.dump()), c.output);
    const std::string text = report.dump() + "\n";
    if (a.report_path.empty()) {
        std::cout << text;
    } else {
        emit(text, a.report_path);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ego-graph message passing: propagation checks, expressiveness tests, spectra and experiments"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    // verify
    auto* verify = app.add_subcommand("verify", "Cross-check tiled, iterative and supra propagation on random graphs");
    Common verify_common;
    VerifyConfig vcfg;
    std::uint64_t verify_seeds = vcfg.seeds;
    add_common(verify, verify_common, "json");
    verify->add_option("--sizes", vcfg.sizes, "Node counts")->delimiter(',')->capture_default_str();
    verify->add_option("--densities", vcfg.densities, "Edge probabilities")->delimiter(',')->capture_default_str();
    verify->add_option("--scales,--p", vcfg.scales, "Ego scales p")->delimiter(',')->capture_default_str();
    verify->add_option("--seeds", verify_seeds, "Graphs per (size, density)")->capture_default_str();
    verify->add_option("--supra-max-n", vcfg.supra_max_n, "Largest graph for the supra check")->capture_default_str();
    verify->add_flag("--inject-fault", vcfg.inject_fault, "Perturb the iterative output (negative control)");

    // wl-test
    auto* wl = app.add_subcommand("wl-test", "1-WL color refinement comparison of two graphs");
    Common wl_common;
    std::string wl_g1, wl_g2;
    add_common(wl, wl_common, "json");
    wl->add_option("graph1", wl_g1, "First graph file")->required();
    wl->add_option("graph2", wl_g2, "Second graph file")->required();

    // distinguish
    auto* dist = app.add_subcommand("distinguish", "WL and ego-GNN verdicts with graph signatures");
    Common dist_common;
    std::string d_g1, d_g2;
    std::string d_schedule = format_schedule(default_distinguish_schedule());
    std::size_t d_width = kDefaultSignatureWidth;
    bool d_baseline = false;
    add_common(dist, dist_common, "json");
    dist->add_option("graph1", d_g1, "First graph file")->required();
    dist->add_option("graph2", d_g2, "Second graph file")->required();
    dist->add_option("--schedule", d_schedule, "Parameter-free layer schedule")->capture_default_str();
    dist->add_option("--width", d_width, "Width of the constant input features")->capture_default_str()->check(CLI::PositiveNumber);
    dist->add_flag("--baseline", d_baseline, "Also report two rounds of plain message passing");

    // triangles
    auto* tri = app.add_subcommand("triangles", "Per-node triangle counts from ego-graph degrees");
    Common tri_common;
    std::string tri_graph;
    bool tri_oracle = false;
    add_common(tri, tri_common, "json");
    tri->add_option("--graph", tri_graph, "Graph file")->required();
    tri->add_flag("--oracle", tri_oracle, "Cross-check against brute-force enumeration");

    // spectra
    auto* spectra_cmd = app.add_subcommand("spectra", "Base, ego-submatrix and supra spectra with interlacing checks");
    Common spectra_common;
    std::string spectra_graph;
    std::vector<std::size_t> spectra_nodes;
    bool spectra_supra = false;
    add_common(spectra_cmd, spectra_common, "csv");
    spectra_cmd->add_option("--graph", spectra_graph, "Graph file")->required();
    spectra_cmd->add_option("--node", spectra_nodes, "Ego centers to check (default: all)")->delimiter(',');
    spectra_cmd->add_flag("--supra", spectra_supra, "Include the supra-adjacency spectrum (|V| <= 32)");

    // sbm-sweep
    auto* sweep = app.add_subcommand("sbm-sweep", "Over-smoothing sweep over SBM inter-block connectivity");
    Common sweep_common;
    SweepConfig scfg = SweepConfig::defaults();
    bool sweep_defaults = false;
    std::vector<std::string> sweep_models{"gcn", "ego_gnn"};
    std::string sweep_features = "noisy";
    std::uint64_t sweep_seed = 0;
    std::size_t sweep_seed_count = scfg.seeds.size();
    add_common(sweep, sweep_common, "csv");
    sweep->add_flag("--defaults", sweep_defaults, "Run the default grid (3x100 nodes, p_intra 0.3, p_inter 0.01..0.15, 5 seeds)");
    sweep->add_option("--blocks", scfg.block_sizes, "Block sizes")->delimiter(',')->capture_default_str();
    sweep->add_option("--p-intra", scfg.p_intra, "Intra-block edge probability")->capture_default_str();
    auto* p_inter_opt = sweep->add_option("--p-inter", scfg.p_inter_grid, "Inter-block probabilities")->delimiter(',')->capture_default_str();
    sweep->add_option("--models", sweep_models, "Models (gcn, ego_gnn)")->delimiter(',')->capture_default_str();
    sweep->add_option("--depth", scfg.depth, "Propagation layers per model")->capture_default_str();
    sweep->add_option("--hidden", scfg.hidden, "Hidden width")->capture_default_str();
    sweep->add_option("--p", scfg.ego_p, "Ego scale")->capture_default_str();
    sweep->add_option("--seed", sweep_seed, "First seed")->capture_default_str();
    sweep->add_option("--seeds", sweep_seed_count, "Number of seeds")->capture_default_str();
    sweep->add_option("--features", sweep_features, "Node features")->check(CLI::IsMember({"noisy", "constant"}))->capture_default_str();
    sweep->add_option("--flip", scfg.flip_prob, "Feature flip probability")->capture_default_str();
    std::string sweep_gcn_schedule, sweep_ego_schedule;
    sweep->add_option("--gcn-schedule", sweep_gcn_schedule, "Override the GCN model schedule");
    sweep->add_option("--ego-schedule", sweep_ego_schedule, "Override the Ego-GNN model schedule");
    std::string sweep_optimizer = "adam";
    sweep->add_option("--optimizer", sweep_optimizer, "adam or gd")->check(CLI::IsMember({"adam", "gd"}))->capture_default_str();
    sweep->add_option("--epochs", scfg.train.epochs, "Training epochs")->capture_default_str();
    sweep->add_option("--lr", scfg.train.learning_rate, "Learning rate")->capture_default_str();
    sweep->add_option("--weight-decay", scfg.train.weight_decay, "Weight decay")->capture_default_str();
    sweep->add_option("--patience", scfg.train.patience, "Early-stopping patience")->capture_default_str();

    // train
    auto* tr = app.add_subcommand("train", "Train a node classifier on a labeled graph");
    Common train_common;
    TrainArgs targs;
    add_common(tr, train_common, "json");
    tr->add_option("--graph", targs.graph, "Graph file with labels (features default to a constant column)")->required();
    tr->add_option("--schedule", targs.schedule, "Layer schedule, e.g. ego:p=1,gcn:64,gcn:out")->capture_default_str();
    tr->add_option("--params", targs.params_in, "Start from saved parameters (use --epochs 0 to only evaluate)");
    tr->add_option("--report", targs.report_path, "Write the training report here instead of stdout");
    tr->add_option("--seed", targs.cfg.seed, "Seed for split and initialization")->capture_default_str();
    std::string train_optimizer = "adam";
    tr->add_option("--optimizer", train_optimizer, "adam or gd")->check(CLI::IsMember({"adam", "gd"}))->capture_default_str();
    tr->add_option("--epochs", targs.cfg.epochs, "Maximum epochs")->capture_default_str();
    tr->add_option("--lr", targs.cfg.learning_rate, "Learning rate")->capture_default_str();
    tr->add_option("--weight-decay", targs.cfg.weight_decay, "Weight decay")->capture_default_str();
    tr->add_option("--patience", targs.cfg.patience, "Early-stopping patience")->capture_default_str();
    tr->add_option("--train-frac", targs.train_frac, "Training fraction per class")->capture_default_str();
    tr->add_option("--val-frac", targs.val_frac, "Validation fraction per class")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            vcfg.seeds = verify_seeds;
            return cmd_verify(vcfg, verify_common);
        }
        if (*wl) return cmd_wl_test(wl_g1, wl_g2, wl_common);
        if (*dist) return cmd_distinguish(d_g1, d_g2, d_schedule, d_width, d_baseline, dist_common);
        if (*tri) return cmd_triangles(tri_graph, tri_oracle, tri_common);
        if (*spectra_cmd) return cmd_spectra(spectra_graph, spectra_nodes, spectra_supra, spectra_common);
        if (*sweep) {
            if (sweep_defaults) {
                const SweepConfig d = SweepConfig::defaults();
                if (p_inter_opt->count() == 0) scfg.p_inter_grid = d.p_inter_grid;
            }
            scfg.models.clear();
            for (const auto& m : sweep_models) scfg.models.push_back(parse_model(m));
            scfg.features = sweep_features == "constant" ? SbmFeatures::constant : SbmFeatures::noisy_one_hot;
            if (!sweep_gcn_schedule.empty()) scfg.gcn_override = schedule_arg(sweep_gcn_schedule);
            if (!sweep_ego_schedule.empty()) scfg.ego_override = schedule_arg(sweep_ego_schedule);
            scfg.train.optimizer = sweep_optimizer == "gd" ? Optimizer::gd : Optimizer::adam;
            scfg.seeds.clear();
            for (std::size_t k = 0; k < sweep_seed_count; ++k) scfg.seeds.push_back(sweep_seed + k);
            return cmd_sbm_sweep(scfg, sweep_common);
        }
        if (*tr) {
            targs.cfg.optimizer = train_optimizer == "gd" ? Optimizer::gd : Optimizer::adam;
            return cmd_train(targs, train_common);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const TrainingDiverged& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
