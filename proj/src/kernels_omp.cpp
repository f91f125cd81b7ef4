#include <algorithm>
#include <string>

#include <omp.h>

#include "ego_kernel_core.hpp"
#include "egognn/ego_operator.hpp"
#include "egognn/error.hpp"
#include "egognn/kernels.hpp"

namespace egognn {

namespace kernels::omp {

void spmm(const SparseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
    const std::size_t f = b.cols();
    const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
        const auto r = static_cast<std::size_t>(ri);
        auto o = out.row(r);
        std::fill(o.begin(), o.end(), 0.0);
        auto cols = a.row_cols(r);
        auto vals = a.row_values(r);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            const double v = vals[e];
            const double* x = b.row(cols[e]).data();
            for (std::size_t c = 0; c < f; ++c) o[c] += v * x[c];
        }
    }
}

std::size_t ego_sum(const EgoOperator& op, const DenseMatrix& h, int p, bool normalized, DenseMatrix& out) {
    out.fill(0.0);
    const std::size_t f = h.cols();
    std::size_t peak = 0;
#pragma omp parallel reduction(max : peak)
    {
        const auto t = static_cast<std::size_t>(omp_get_thread_num());
        const auto nt = static_cast<std::size_t>(omp_get_num_threads());
        const std::size_t c0 = f * t / nt;
        const std::size_t c1 = f * (t + 1) / nt;
        peak = detail::ego_sum_columns(op, h, p, normalized, c0, c1, out);
    }
    return peak;
}

} // namespace kernels::omp

DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b, Exec exec) {
    if (a.cols() != b.rows()) {
        throw DimensionError("spmm: sparse " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times dense " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    DenseMatrix out(a.rows(), b.cols());
    if (exec == Exec::serial) {
        kernels::serial::spmm(a, b, out);
    } else {
        kernels::omp::spmm(a, b, out);
    }
    return out;
}

} // namespace egognn
