#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/sparse_matrix.hpp"

namespace egognn {

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected simple graph. The adjacency is symmetric with unit weights and
// an empty diagonal; self-loops are only ever added by the operators.
class Graph {
public:
    Graph() = default;
    // Each undirected edge may be listed once in either orientation.
    // Self-loops, duplicates and out-of-range endpoints throw.
    Graph(std::size_t n, const std::vector<Edge>& edges);
    // Validates symmetry, zero diagonal and unit weights.
    explicit Graph(SparseMatrix adjacency);

    std::size_t n() const { return adjacency_.rows(); }
    std::size_t num_edges() const { return adjacency_.nnz() / 2; }
    const SparseMatrix& adjacency() const { return adjacency_; }

    std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_.row_cols(i); }
    std::size_t degree(std::size_t i) const { return adjacency_.row_cols(i).size(); }
    bool has_edge(std::size_t u, std::size_t v) const;

    // Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    const std::optional<DenseMatrix>& features() const { return features_; }
    const std::optional<std::vector<int>>& labels() const { return labels_; }
    void set_features(DenseMatrix x);
    void set_labels(std::vector<int> y);

    // Graph with node v renamed to perm[v]; features and labels follow.
    Graph permuted(std::span<const std::size_t> perm) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    SparseMatrix adjacency_;
    std::optional<DenseMatrix> features_;
    std::optional<std::vector<int>> labels_;
};

// Disjoint union; nodes of b are shifted by a.n().
Graph disjoint_union(const Graph& a, const Graph& b);

using DegreeVector = std::vector<std::size_t>;
DegreeVector degrees(const Graph& g);

// Induced subgraph on {center} ∪ N(center), stored in the ambient |V|x|V|
// index space with a self-loop on every member.
struct EgoGraph {
    std::size_t center = 0;
    std::vector<std::size_t> members;
    SparseMatrix adjacency;
};

EgoGraph extract_ego(const Graph& g, std::size_t center);

// Sorted {center} ∪ N(center).
std::vector<std::size_t> ego_members(const Graph& g, std::size_t center);

// Small named graphs used by fixtures, tests and the CLI.
namespace named {
Graph cycle(std::size_t n);
Graph path(std::size_t n);
Graph complete(std::size_t n);
Graph star(std::size_t leaves);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph empty(std::size_t n);
} // namespace named

} // namespace egognn
