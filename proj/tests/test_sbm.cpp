#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "egognn/error.hpp"
#include "egognn/rng.hpp"
#include "egognn/sbm.hpp"
#include "egognn/sweep.hpp"
#include "egognn/train.hpp"
#include "support.hpp"

using namespace egognn;
using namespace testing;

TEST_CASE("xoshiro256** reference stream") {
    // splitmix64 from state 0, first outputs.
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);

    Xoshiro256 a(42), b(42), c(43);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const auto x = a();
        CHECK(x == b());
        differs |= x != c();
    }
    CHECK(differs);

    Xoshiro256 r(1);
    for (int k = 0; k < 1000; ++k) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(r.below(7) < 7);
    }
    CHECK(derive_seed(5, 1) != derive_seed(5, 2));
    CHECK(derive_seed(5, 1) == derive_seed(5, 1));
}

TEST_CASE("sbm examples") {
    SbmConfig two_k3{.block_sizes = {3, 3}, .p_intra = 1.0, .p_inter = 0.0, .seed = 1};
    const Graph g = generate_sbm(two_k3);
    CHECK(g.adjacency() == Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}).adjacency());
    CHECK(*g.labels() == std::vector<int>{0, 0, 0, 1, 1, 1});

    SbmConfig none{.block_sizes = {4, 4}, .p_intra = 0.0, .p_inter = 0.0, .seed = 2};
    CHECK(generate_sbm(none).num_edges() == 0);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SbmConfig cfg{.block_sizes = {50, 50}, .p_intra = 0.3, .p_inter = 0.05, .seed = seed};
        const double expected = 0.3 * (50.0 * 49.0 / 2.0) * 2.0 + 0.05 * 2500.0;
        CHECK(sbm_expected_edges(cfg) == doctest::Approx(expected));
        const double sd = std::sqrt(0.3 * 0.7 * 2450.0 + 0.05 * 0.95 * 2500.0);
        CHECK(sbm_edge_stddev(cfg) == doctest::Approx(sd));
        CHECK(std::abs(static_cast<double>(generate_sbm(cfg).num_edges()) - expected) <= 4.0 * sd);
    }
}

TEST_CASE("sbm validation") {
    CHECK_THROWS_AS(generate_sbm({.block_sizes = {3, 3}, .p_intra = 1.5}), Error);
    CHECK_THROWS_AS(generate_sbm({.block_sizes = {3, 3}, .p_inter = -0.1}), Error);
    CHECK_THROWS_AS(generate_sbm({.block_sizes = {6}}), Error);
    CHECK_THROWS_AS(generate_sbm({.block_sizes = {3, 0}}), Error);
}

TEST_CASE("sbm is deterministic and seed sensitive") {
    SbmConfig cfg{.block_sizes = {40, 30, 30}, .p_intra = 0.2, .p_inter = 0.05, .seed = 9};
    const Graph a = generate_sbm(cfg);
    const Graph b = generate_sbm(cfg);
    CHECK(a == b);
    cfg.seed = 10;
    CHECK_FALSE(generate_sbm(cfg) == a);
}

TEST_CASE("sbm features") {
    SbmConfig cfg{.block_sizes = {200, 200}, .p_intra = 0.0, .p_inter = 0.0, .seed = 3, .flip_prob = 0.3};
    const Graph g = generate_sbm(cfg);
    const auto& x = *g.features();
    CHECK(x.cols() == 2);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        CHECK(x(i, 0) + x(i, 1) == 1.0);
        if (x(i, static_cast<std::size_t>((*g.labels())[i])) == 1.0) ++agree;
    }
    // A flipped node lands on its own block half the time: P(agree) = 0.85.
    const double rate = static_cast<double>(agree) / 400.0;
    CHECK(rate > 0.85 - 4 * std::sqrt(0.85 * 0.15 / 400.0));
    CHECK(rate < 0.85 + 4 * std::sqrt(0.85 * 0.15 / 400.0));

    cfg.features = SbmFeatures::constant;
    CHECK(*generate_sbm(cfg).features() == DenseMatrix(400, 1, 1.0));
    cfg.features = SbmFeatures::none;
    CHECK_FALSE(generate_sbm(cfg).features().has_value());
}

TEST_CASE("stratified split keeps per-class proportions within one node") {
    std::vector<int> labels;
    for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 17 + 6 * c; ++k) labels.push_back(c);
    const auto s = stratified_split(labels, 0.6, 0.2, 4);

    std::set<std::size_t> all;
    for (const auto* part : {&s.train, &s.val, &s.test}) all.insert(part->begin(), part->end());
    CHECK(all.size() == labels.size());
    CHECK(s.train.size() + s.val.size() + s.test.size() == labels.size());

    std::map<int, std::array<std::size_t, 4>> count;
    for (int l : labels) ++count[l][0];
    for (std::size_t i : s.train) ++count[labels[i]][1];
    for (std::size_t i : s.val) ++count[labels[i]][2];
    for (std::size_t i : s.test) ++count[labels[i]][3];
    for (const auto& [cls, c] : count) {
        const double n = static_cast<double>(c[0]);
        CHECK(std::abs(static_cast<double>(c[1]) - 0.6 * n) <= 1.0);
        CHECK(std::abs(static_cast<double>(c[2]) - 0.2 * n) <= 1.0);
        CHECK(std::abs(static_cast<double>(c[3]) - 0.2 * n) <= 1.0);
    }
    CHECK(stratified_split(labels, 0.6, 0.2, 4).train == s.train);
    CHECK_THROWS_AS(stratified_split(labels, 0.9, 0.2, 4), Error);
}

namespace {

SweepConfig small_sweep() {
    SweepConfig cfg = SweepConfig::defaults();
    cfg.block_sizes = {30, 30, 30};
    cfg.seeds = {0, 1};
    cfg.p_inter_grid = {0.0, 0.1};
    cfg.train.epochs = 150;
    return cfg;
}

} // namespace

TEST_CASE("sweep covers the full grid in order and is deterministic") {
    const SweepConfig cfg = small_sweep();
    const auto r = oversmoothing_sweep(cfg);
    REQUIRE(r.rows.size() == 2 * 2 * 2);
    std::size_t k = 0;
    for (double p : cfg.p_inter_grid)
        for (const char* m : {"gcn", "ego_gnn"})
            for (std::uint64_t s : cfg.seeds) {
                CHECK(r.rows[k].p_inter == p);
                CHECK(r.rows[k].model == m);
                CHECK(r.rows[k].seed == s);
                CHECK(r.rows[k].accuracy >= 0.0);
                CHECK(r.rows[k].accuracy <= 1.0);
                CHECK_FALSE(r.rows[k].failed);
                ++k;
            }

    const auto again = oversmoothing_sweep(cfg);
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(again.rows[i].accuracy == r.rows[i].accuracy);

    // Disconnected communities are easy for both models.
    CHECK(mean_accuracy(r, 0.0, "gcn") >= 0.95);
    CHECK(mean_accuracy(r, 0.0, "ego_gnn") >= 0.95);

    std::ostringstream csv;
    write_sweep_csv(r, csv);
    CHECK(csv.str().rfind("p_inter,model,seed,accuracy,failed\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv.str()) lines += ch == '\n';
    CHECK(lines == r.rows.size() + 1);
}

TEST_CASE("sweep cells do not depend on the rest of the grid") {
    SweepConfig cfg = small_sweep();
    const auto full = oversmoothing_sweep(cfg);
    cfg.p_inter_grid = {0.1};
    cfg.seeds = {1};
    const auto one = oversmoothing_sweep(cfg);
    CHECK(one.rows[0].accuracy == full.rows[4 + 1].accuracy);
}

TEST_CASE("a label-independent graph gives near-chance accuracy") {
    SweepConfig cfg = small_sweep();
    cfg.features = SbmFeatures::constant;
    cfg.p_intra = 0.2;
    cfg.p_inter_grid = {0.2};
    cfg.seeds = {0, 1, 2};
    const auto r = oversmoothing_sweep(cfg);
    for (const char* m : {"gcn", "ego_gnn"}) {
        CHECK(mean_accuracy(r, 0.2, m) < 0.6);
    }
}

TEST_CASE("default sweep schedules") {
    const SweepConfig cfg = SweepConfig::defaults();
    CHECK(cfg.p_inter_grid.size() == 15);
    CHECK(cfg.p_inter_grid.front() == doctest::Approx(0.01));
    CHECK(cfg.p_inter_grid.back() == doctest::Approx(0.15));
    CHECK(format_schedule(schedule_for(ModelKind::gcn, cfg)) == "gcn:16,gcn:16,gcn:16,gcn:out");
    CHECK(format_schedule(schedule_for(ModelKind::ego_gnn, cfg)) == "ego:p=1,gcn:16,ego:p=1,gcn:out");
    CHECK(parse_model("ego_gnn") == ModelKind::ego_gnn);
    CHECK_THROWS_AS(parse_model("gat"), Error);
}
