// Serial reference kernels against their OpenMP counterparts.
//
//   ./egognn_bench --benchmark_filter=ego
//
// Arguments are (nodes, feature columns); graphs are G(n, 10/n).

#include <benchmark/benchmark.h>

#include "egognn/ego_operator.hpp"
#include "egognn/kernels.hpp"
#include "egognn/rng.hpp"
#include "egognn/sparse_matrix.hpp"
#include "egognn/verify.hpp"

namespace {

using namespace egognn;

DenseMatrix features(std::size_t n, std::size_t f) {
    Xoshiro256 rng(11);
    DenseMatrix h(n, f);
    for (double& v : h.data()) v = rng.uniform();
    return h;
}

Graph bench_graph(std::size_t n) { return erdos_renyi(n, 10.0 / static_cast<double>(n), 5); }

void spmm_bench(benchmark::State& state, Exec exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = static_cast<std::size_t>(state.range(1));
    const SparseMatrix a = normalize_sym(bench_graph(n).adjacency());
    const DenseMatrix h = features(n, f);
    for (auto _ : state) benchmark::DoNotOptimize(spmm(a, h, exec));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.nnz() * f));
}

void ego_bench(benchmark::State& state, Exec exec, int p) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = static_cast<std::size_t>(state.range(1));
    const EgoOperator op(bench_graph(n));
    const DenseMatrix h = features(n, f);
    for (auto _ : state) benchmark::DoNotOptimize(op.apply(h, p, true, exec));
}

void BM_spmm_serial(benchmark::State& s) { spmm_bench(s, Exec::serial); }
void BM_spmm_omp(benchmark::State& s) { spmm_bench(s, Exec::parallel); }
void BM_ego_p1_serial(benchmark::State& s) { ego_bench(s, Exec::serial, 1); }
void BM_ego_p1_omp(benchmark::State& s) { ego_bench(s, Exec::parallel, 1); }
void BM_ego_p2_serial(benchmark::State& s) { ego_bench(s, Exec::serial, 2); }
void BM_ego_p2_omp(benchmark::State& s) { ego_bench(s, Exec::parallel, 2); }

void sizes(benchmark::internal::Benchmark* b) {
    for (std::int64_t n : {1000, 10000})
        for (std::int64_t f : {16, 64}) b->Args({n, f});
    b->Unit(benchmark::kMicrosecond);
}

} // namespace

BENCHMARK(BM_spmm_serial)->Apply(sizes);
BENCHMARK(BM_spmm_omp)->Apply(sizes);
BENCHMARK(BM_ego_p1_serial)->Apply(sizes);
BENCHMARK(BM_ego_p1_omp)->Apply(sizes);
BENCHMARK(BM_ego_p2_serial)->Apply(sizes);
BENCHMARK(BM_ego_p2_omp)->Apply(sizes);

BENCHMARK_MAIN();
