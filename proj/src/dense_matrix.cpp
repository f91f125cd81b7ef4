#include "egognn/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egognn/error.hpp"

namespace egognn {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("dense matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                             std::to_string(rows * cols));
    }
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw DimensionError("ragged rows: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " entries, expected " + std::to_string(c));
        }
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

void DenseMatrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    DenseMatrix out(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto o = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto br = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) o[j] += aik * br[j];
        }
    }
    return out;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("matmul_tn: row counts differ (" + std::to_string(a.rows()) + " vs " +
                             std::to_string(b.rows()) + ")");
    }
    DenseMatrix out(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.cols(); ++i) {
        auto o = out.row(i);
        for (std::size_t k = 0; k < a.rows(); ++k) {
            const double aki = a(k, i);
            if (aki == 0.0) continue;
            auto br = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) o[j] += aki * br[j];
        }
    }
    return out;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("matmul_nt: column counts differ (" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.cols()) + ")");
    }
    DenseMatrix out(a.rows(), b.rows());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ar = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto br = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += ar[k] * br[k];
            out(i, j) = s;
        }
    }
    return out;
}

double max_relative_deviation(const DenseMatrix& a, const DenseMatrix& b, double floor) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_relative_deviation: shape mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        const double x = a.data()[k];
        const double y = b.data()[k];
        const double diff = std::abs(x - y);
        if (diff == 0.0) continue;
        const double scale = std::max({std::abs(x), std::abs(y), floor});
        worst = std::max(worst, diff / scale);
    }
    return worst;
}

double max_abs_deviation(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_deviation: shape mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

std::vector<double> row_mean(const DenseMatrix& m) {
    std::vector<double> mean(m.cols(), 0.0);
    if (m.rows() == 0) return mean;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) mean[c] += m(r, c);
    for (double& v : mean) v /= static_cast<double>(m.rows());
    return mean;
}

} // namespace egognn
