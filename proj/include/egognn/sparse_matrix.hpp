#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egognn/dense_matrix.hpp"

namespace egognn {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

// CSR matrix in canonical form: column indices strictly increasing within
// each row and no stored zeros.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    // Duplicates are summed; entries that end up zero are dropped.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
    // Validates the canonical-form invariants and throws on violation.
    static SparseMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                                 std::vector<std::size_t> col_indices, std::vector<double> values);
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const DenseMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return col_indices_.size(); }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    std::span<const std::size_t> row_cols(std::size_t r) const {
        return {col_indices_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
    }
    std::span<const double> row_values(std::size_t r) const {
        return {values_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
    }

    double at(std::size_t r, std::size_t c) const;
    double row_sum(std::size_t r) const;

    SparseMatrix transposed() const;
    bool is_symmetric() const;
    DenseMatrix to_dense() const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_offsets_{0};
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

// D^{-1/2} A D^{-1/2} with D the row sums; zero rows stay zero.
SparseMatrix normalize_sym(const SparseMatrix& a);

} // namespace egognn
