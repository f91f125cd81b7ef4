#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/ego_operator.hpp"

namespace egognn::kernels::detail {

// out[:, c0:c1] += sum_j W_j^p h[:, c0:c1], egos visited in ascending j.
// Every entry of W_j x is summed from 0 in ascending local column order, the
// same order spmm uses on the full-dimension ego adjacency.
inline std::size_t ego_sum_columns(const EgoOperator& op, const DenseMatrix& h, int p, bool normalized,
                                   std::size_t c0, std::size_t c1, DenseMatrix& out) {
    const std::size_t w = c1 - c0;
    if (w == 0) return 0;
    std::vector<double> cur;
    std::vector<double> next;
    std::vector<double> acc(w);
    std::size_t peak = 0;

    for (std::size_t j = 0; j < op.n(); ++j) {
        const auto v = op.ego(j);
        const std::size_t k = v.members.size();
        const auto weight = [&](std::size_t e) { return normalized ? v.normalized[e] : 1.0; };

        // Local row r of W_j x into acc, x given as a row accessor.
        const auto row_product = [&](std::size_t r, auto&& x_row) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t e = v.row_offsets[r]; e < v.row_offsets[r + 1]; ++e) {
                const double a = weight(e);
                const double* x = x_row(v.cols[e]);
                for (std::size_t c = 0; c < w; ++c) acc[c] += a * x[c];
            }
        };
        const auto from_h = [&](std::size_t local) { return h.row(v.members[local]).data() + c0; };
        const auto from_cur = [&](std::size_t local) { return cur.data() + local * w; };

        if (p > 1) {
            cur.resize(k * w);
            for (std::size_t r = 0; r < k; ++r) {
                row_product(r, from_h);
                std::copy(acc.begin(), acc.end(), cur.begin() + static_cast<std::ptrdiff_t>(r * w));
            }
            peak = std::max(peak, k);
            for (int step = 2; step < p; ++step) {
                next.resize(k * w);
                for (std::size_t r = 0; r < k; ++r) {
                    row_product(r, from_cur);
                    std::copy(acc.begin(), acc.end(), next.begin() + static_cast<std::ptrdiff_t>(r * w));
                }
                peak = std::max(peak, 2 * k);
                cur.swap(next);
            }
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (p > 1) {
                row_product(r, from_cur);
            } else {
                row_product(r, from_h);
            }
            double* o = out.row(v.members[r]).data() + c0;
            for (std::size_t c = 0; c < w; ++c) o[c] += acc[c];
        }
    }
    return peak;
}

} // namespace egognn::kernels::detail
