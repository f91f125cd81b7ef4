#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace egognn {

// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    void fill(double v);
    DenseMatrix transposed() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// out = a * b (naive, ascending k); used by the model layers.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// out = a^T * b
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
// out = a * b^T
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

// Largest |a - b| / max(|a|, |b|, floor) over all entries.
double max_relative_deviation(const DenseMatrix& a, const DenseMatrix& b, double floor = 1e-300);
double max_abs_deviation(const DenseMatrix& a, const DenseMatrix& b);

// Column-wise mean of the rows.
std::vector<double> row_mean(const DenseMatrix& m);

} // namespace egognn
