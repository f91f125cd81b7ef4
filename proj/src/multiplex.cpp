#include "egognn/multiplex.hpp"

#include <algorithm>
#include <string>

#include "egognn/error.hpp"
#include "egognn/kernels.hpp"

namespace egognn {

namespace {

void check_cap(std::size_t n, std::size_t cap, const char* what) {
    if (n > cap) {
        throw CapacityError(std::string(what) + ": graph has " + std::to_string(n) + " nodes, above the cap of " +
                            std::to_string(cap) + " for the |V|^2 reference path; use ego_step for large graphs");
    }
}

} // namespace

SupraAdjacency build_supra(const Graph& g, const SupraOptions& opts) {
    const std::size_t n = g.n();
    if (n == 0) throw Error("build_supra: graph has no nodes");
    check_cap(n, opts.cap, "build_supra");

    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) {
        const EgoGraph ego = extract_ego(g, i);
        const auto& a = ego.adjacency;
        for (std::size_t u : ego.members) {
            auto cols = a.row_cols(u);
            auto vals = a.row_values(u);
            for (std::size_t e = 0; e < cols.size(); ++e) entries.push_back({i * n + u, i * n + cols[e], vals[e]});
        }
        if (opts.inter_layer) {
            for (std::size_t j : g.neighbors(i))
                for (std::size_t u = 0; u < n; ++u) entries.push_back({i * n + u, j * n + u, 1.0});
        }
    }
    return SupraAdjacency{n, SparseMatrix::from_triplets(n * n, n * n, std::move(entries))};
}

TiledState tile(const DenseMatrix& h, std::size_t copies) {
    TiledState t{copies, DenseMatrix(copies * h.rows(), h.cols())};
    for (std::size_t b = 0; b < copies; ++b)
        std::copy(h.data().begin(), h.data().end(),
                  t.data.data().begin() + static_cast<std::ptrdiff_t>(b * h.data().size()));
    return t;
}

TiledState tiled_intra_step(const Graph& g, const DenseMatrix& h, int p, bool normalized) {
    const std::size_t n = g.n();
    if (h.rows() != n) throw DimensionError("tiled_intra_step: representations do not match node count");
    if (p < 1) throw Error("tiled_intra_step: p must be >= 1");
    TiledState t{n, DenseMatrix(n * n, h.cols())};
    for (std::size_t j = 0; j < n; ++j) {
        SparseMatrix a = extract_ego(g, j).adjacency;
        if (normalized) a = normalize_sym(a);
        DenseMatrix block = spmm(a, h, Exec::serial);
        for (int step = 1; step < p; ++step) block = spmm(a, block, Exec::serial);
        std::copy(block.data().begin(), block.data().end(),
                  t.data.data().begin() + static_cast<std::ptrdiff_t>(j * block.data().size()));
    }
    return t;
}

DenseMatrix tiled_aggregate(const Graph& g, const TiledState& t) {
    const std::size_t n = g.n();
    if (t.base_n != n || t.data.rows() != n * n) throw DimensionError("tiled_aggregate: state does not match graph");
    DenseMatrix out(n, t.data.cols());
    for (std::size_t i = 0; i < n; ++i) {
        // Nodes whose ego-graph contains i are exactly {i} ∪ N(i).
        const auto containing = ego_members(g, i);
        auto o = out.row(i);
        for (std::size_t j : containing) {
            auto src = t.data.row(j * n + i);
            for (std::size_t c = 0; c < o.size(); ++c) o[c] += src[c];
        }
        const double denom = static_cast<double>(containing.size());
        for (double& v : o) v /= denom;
    }
    return out;
}

DenseMatrix supra_propagate(const SupraAdjacency& s, const DenseMatrix& h, int steps) {
    check_cap(s.base_n, kDefaultSupraCap, "supra_propagate");
    if (h.rows() != s.base_n) throw DimensionError("supra_propagate: representations do not match node count");
    if (steps < 0) throw Error("supra_propagate: steps must be >= 0");
    DenseMatrix state = tile(h, s.base_n).data;
    for (int k = 0; k < steps; ++k) state = spmm(s.matrix, state);
    return state;
}

} // namespace egognn
