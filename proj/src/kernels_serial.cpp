#include <string>

#include "ego_kernel_core.hpp"
#include "egognn/ego_operator.hpp"
#include "egognn/error.hpp"
#include "egognn/kernels.hpp"

namespace egognn::kernels::serial {

void spmm(const SparseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
    const std::size_t f = b.cols();
    for (std::size_t r = 0; r < a.rows(); ++r) {
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
    return detail::ego_sum_columns(op, h, p, normalized, 0, h.cols(), out);
}

} // namespace egognn::kernels::serial
