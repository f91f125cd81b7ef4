#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/graph.hpp"
#include "egognn/kernels.hpp"

namespace egognn {

struct PropagationReport {
    // Most dense ego-block rows (intermediate W_j^t h state) alive at once.
    // The |V|-row output buffer is not counted.
    std::size_t peak_block_rows = 0;
    std::chrono::nanoseconds wall_time{0};
};

// Every ego-graph of a graph, compacted to its members. Local row r of ego j
// corresponds to node members(j)[r]; local column indices follow the same
// numbering, so ascending local order is ascending global order.
class EgoOperator {
public:
    struct View {
        std::span<const std::size_t> members;
        std::span<const std::size_t> row_offsets; // members.size() + 1 entries, relative to cols
        std::span<const std::size_t> cols;
        std::span<const double> normalized;
    };

    EgoOperator() = default;
    explicit EgoOperator(const Graph& g);

    std::size_t n() const { return n_; }
    View ego(std::size_t j) const;
    std::size_t ego_size(std::size_t j) const { return member_offsets_[j + 1] - member_offsets_[j]; }
    std::size_t max_ego_size() const { return max_ego_size_; }
    // |Ego(i)| = deg(i) + 1.
    std::size_t membership(std::size_t i) const { return ego_size(i); }

    // sum_j W_j^p h, with W_j the raw or normalized ego adjacency.
    DenseMatrix sum(const DenseMatrix& h, int p, bool normalized, Exec exec = Exec::parallel,
                    PropagationReport* report = nullptr) const;
    // Row i of sum(...) divided by deg(i) + 1.
    DenseMatrix apply(const DenseMatrix& h, int p, bool normalized, Exec exec = Exec::parallel,
                      PropagationReport* report = nullptr) const;
    // Adjoint of apply: each W_j is symmetric, so this is sum(D^{-1} g).
    DenseMatrix apply_transpose(const DenseMatrix& g, int p, bool normalized, Exec exec = Exec::parallel) const;

private:
    std::size_t n_ = 0;
    std::size_t max_ego_size_ = 0;
    std::vector<std::size_t> member_offsets_{0};
    std::vector<std::size_t> members_;
    std::vector<std::size_t> row_offset_base_{0}; // start of ego j's row_offsets block
    std::vector<std::size_t> row_offsets_;
    std::vector<std::size_t> entry_base_{0};      // start of ego j's entries
    std::vector<std::size_t> cols_;
    std::vector<double> normalized_;
};

} // namespace egognn
