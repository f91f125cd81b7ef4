#pragma once

#include <cstddef>

#include "egognn/dense_matrix.hpp"
#include "egognn/sparse_matrix.hpp"

namespace egognn {

class EgoOperator;

// Which kernel family runs a hot loop. Both produce bitwise-identical
// results: the OpenMP kernels only split work along axes that leave every
// per-entry summation order untouched.
enum class Exec { serial, parallel };

namespace kernels {

namespace serial {
// out = a * b, each row summed in ascending column order.
void spmm(const SparseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
// out = sum_j W_j^p h over all egos j (no averaging). Returns the peak number
// of dense ego-block rows alive at once.
std::size_t ego_sum(const EgoOperator& op, const DenseMatrix& h, int p, bool normalized, DenseMatrix& out);
} // namespace serial

namespace omp {
// Rows are distributed across threads.
void spmm(const SparseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
// Feature columns are distributed across threads; each thread walks the
// egos in ascending order over its column slice.
std::size_t ego_sum(const EgoOperator& op, const DenseMatrix& h, int p, bool normalized, DenseMatrix& out);
} // namespace omp

} // namespace kernels

DenseMatrix spmm(const SparseMatrix& a, const DenseMatrix& b, Exec exec = Exec::parallel);

} // namespace egognn
