#pragma once

#include <cstddef>

#include "egognn/dense_matrix.hpp"
#include "egognn/graph.hpp"
#include "egognn/sparse_matrix.hpp"

// Reference formulations over the |V|^2-node multiplex of ego-graphs. These
// are validation oracles for ego_propagation and refuse large graphs.
namespace egognn {

inline constexpr std::size_t kDefaultSupraCap = 512;

struct SupraOptions {
    bool inter_layer = true;  // include the A (x) I coupling
    std::size_t cap = kDefaultSupraCap;
};

// Block (i,i) is the self-looped ego adjacency of node i, block (i,j) is
// A[i][j] * I.
struct SupraAdjacency {
    std::size_t base_n = 0;
    SparseMatrix matrix;
};

SupraAdjacency build_supra(const Graph& g, const SupraOptions& opts = {});

// |V|^2 x f stack of |V| copies of the node representations.
struct TiledState {
    std::size_t base_n = 0;
    DenseMatrix data;
};

TiledState tile(const DenseMatrix& h, std::size_t copies);

// Block j of the result is W_j^p h, W_j = ego adjacency of j (optionally
// symmetric-normalized).
TiledState tiled_intra_step(const Graph& g, const DenseMatrix& h, int p, bool normalized = false);

// H[i] = sum over j in Ego(i) of block j row i, divided by |Ego(i)|.
DenseMatrix tiled_aggregate(const Graph& g, const TiledState& t);

// supra^steps applied to the tiling of h.
DenseMatrix supra_propagate(const SupraAdjacency& s, const DenseMatrix& h, int steps);

} // namespace egognn
