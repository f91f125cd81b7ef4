#include "egognn/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egognn/error.hpp"

namespace egognn {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_offsets_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
    for (const auto& t : entries) {
        if (t.row >= rows || t.col >= cols) {
            throw DimensionError("triplet (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                 ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m(rows, cols);
    m.col_indices_.reserve(entries.size());
    m.values_.reserve(entries.size());
    std::vector<std::size_t> counts(rows, 0);
    for (std::size_t k = 0; k < entries.size();) {
        const std::size_t r = entries[k].row;
        const std::size_t c = entries[k].col;
        double sum = 0.0;
        for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k) sum += entries[k].value;
        if (sum == 0.0) continue;
        m.col_indices_.push_back(c);
        m.values_.push_back(sum);
        ++counts[r];
    }
    for (std::size_t r = 0; r < rows; ++r) m.row_offsets_[r + 1] = m.row_offsets_[r] + counts[r];
    return m;
}

SparseMatrix SparseMatrix::from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                                    std::vector<std::size_t> col_indices, std::vector<double> values) {
    if (row_offsets.size() != rows + 1 || row_offsets.front() != 0) {
        throw DimensionError("row_offsets must have n_rows+1 entries starting at 0");
    }
    if (col_indices.size() != values.size() || row_offsets.back() != col_indices.size()) {
        throw DimensionError("row_offsets, col_indices and values disagree on nnz");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (row_offsets[r + 1] < row_offsets[r]) throw DimensionError("row_offsets must be non-decreasing");
        for (std::size_t k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
            if (col_indices[k] >= cols) throw DimensionError("column index out of range in row " + std::to_string(r));
            if (k > row_offsets[r] && col_indices[k] <= col_indices[k - 1]) {
                throw DimensionError("column indices not strictly increasing in row " + std::to_string(r));
            }
            if (values[k] == 0.0) throw DimensionError("explicit zero stored in row " + std::to_string(r));
        }
    }
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_ = std::move(row_offsets);
    m.col_indices_ = std::move(col_indices);
    m.values_ = std::move(values);
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<std::size_t> offsets(n + 1);
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    return from_csr(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r) {
        for (std::size_t c = 0; c < d.cols(); ++c) {
            if (d(r, c) != 0.0) {
                m.col_indices_.push_back(c);
                m.values_.push_back(d(r, c));
            }
        }
        m.row_offsets_[r + 1] = m.col_indices_.size();
    }
    return m;
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
    auto cols = row_cols(r);
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return 0.0;
    return values_[row_offsets_[r] + static_cast<std::size_t>(it - cols.begin())];
}

double SparseMatrix::row_sum(std::size_t r) const {
    double s = 0.0;
    for (double v : row_values(r)) s += v;
    return s;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t(cols_, rows_);
    std::vector<std::size_t> counts(cols_, 0);
    for (std::size_t c : col_indices_) ++counts[c];
    for (std::size_t c = 0; c < cols_; ++c) t.row_offsets_[c + 1] = t.row_offsets_[c] + counts[c];
    t.col_indices_.resize(nnz());
    t.values_.resize(nnz());
    std::vector<std::size_t> cursor(t.row_offsets_.begin(), t.row_offsets_.end() - 1);
    // Rows visited in ascending order keep each transposed row sorted.
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
            const std::size_t dst = cursor[col_indices_[k]]++;
            t.col_indices_[dst] = r;
            t.values_[dst] = values_[k];
        }
    }
    return t;
}

bool SparseMatrix::is_symmetric() const { return rows_ == cols_ && *this == transposed(); }

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) d(r, col_indices_[k]) = values_[k];
    return d;
}

SparseMatrix normalize_sym(const SparseMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("normalize_sym: matrix is not square");
    for (double v : a.values()) {
        if (v < 0.0) throw Error("normalize_sym: negative entry");
    }
    std::vector<double> d(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) d[r] = a.row_sum(r);
    std::vector<std::size_t> offsets(a.row_offsets().begin(), a.row_offsets().end());
    std::vector<std::size_t> cols(a.col_indices().begin(), a.col_indices().end());
    std::vector<double> vals(a.nnz());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = offsets[r]; k < offsets[r + 1]; ++k) {
            const double dd = d[r] * d[cols[k]];
            vals[k] = dd > 0.0 ? a.values()[k] / std::sqrt(dd) : 0.0;
        }
    }
    return SparseMatrix::from_csr(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

} // namespace egognn
