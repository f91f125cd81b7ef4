#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/graph.hpp"
#include "egognn/rng.hpp"
#include "egognn/sparse_matrix.hpp"

namespace testing {

using namespace egognn;

// G(n, p) built pair by pair; independent of the library's own generator.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
    Xoshiro256 rng(seed ^ 0x5eedULL);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline DenseMatrix random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0,
                                double hi = 1.0) {
    Xoshiro256 rng(seed);
    DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = lo + (hi - lo) * rng.uniform();
    return m;
}

inline DenseMatrix random_integer_dense(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = static_cast<double>(static_cast<int>(rng.below(11)) - 5);
    return m;
}

inline DenseMatrix ones(std::size_t rows, std::size_t cols) { return DenseMatrix(rows, cols, 1.0); }

// Plain triple loop over dense operands.
inline DenseMatrix dense_product(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
}

// Dense adjacency with an explicit self-loop on every member of ego(center),
// written straight from the definition.
inline DenseMatrix dense_ego(const Graph& g, std::size_t center) {
    const std::size_t n = g.n();
    std::vector<bool> in(n, false);
    in[center] = true;
    for (std::size_t v : g.neighbors(center)) in[v] = true;
    DenseMatrix a(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        if (!in[u]) continue;
        a(u, u) = 1.0;
        for (std::size_t v = 0; v < n; ++v)
            if (in[v] && g.has_edge(u, v)) a(u, v) = 1.0;
    }
    return a;
}

inline DenseMatrix dense_sym_normalize(const DenseMatrix& a) {
    DenseMatrix out(a.rows(), a.cols());
    std::vector<double> d(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d[i] += a(i, j);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (d[i] > 0 && d[j] > 0) out(i, j) = a(i, j) / std::sqrt(d[i] * d[j]);
    return out;
}

// Dense reference for one ego layer: (sum_j W_j^p h)[i] / (deg(i) + 1).
inline DenseMatrix dense_ego_layer(const Graph& g, const DenseMatrix& h, int p, bool normalized) {
    DenseMatrix sum(g.n(), h.cols());
    for (std::size_t j = 0; j < g.n(); ++j) {
        DenseMatrix w = dense_ego(g, j);
        if (normalized) w = dense_sym_normalize(w);
        DenseMatrix cur = h;
        for (int t = 0; t < p; ++t) cur = dense_product(w, cur);
        for (std::size_t k = 0; k < sum.data().size(); ++k) sum.data()[k] += cur.data()[k];
    }
    for (std::size_t i = 0; i < g.n(); ++i)
        for (std::size_t c = 0; c < h.cols(); ++c) sum(i, c) /= static_cast<double>(g.degree(i) + 1);
    return sum;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Xoshiro256 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

// Row v of m moved to row perm[v].
inline DenseMatrix permute_rows(const DenseMatrix& m, const std::vector<std::size_t>& perm) {
    DenseMatrix out(m.rows(), m.cols());
    for (std::size_t v = 0; v < m.rows(); ++v)
        for (std::size_t c = 0; c < m.cols(); ++c) out(perm[v], c) = m(v, c);
    return out;
}

} // namespace testing
