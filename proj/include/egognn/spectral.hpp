#pragma once

#include <cstddef>
#include <vector>

#include "egognn/dense_matrix.hpp"
#include "egognn/graph.hpp"
#include "egognn/sparse_matrix.hpp"

namespace egognn {

inline constexpr std::size_t kMaxEigenDimension = 1024;
inline constexpr std::size_t kSupraSpectrumCap = 32;
inline constexpr double kInterlacingTolerance = 1e-7;

// Eigenvalues in descending order.
struct Spectrum {
    std::vector<double> eigenvalues;
};

struct EigenPairs {
    std::vector<double> eigenvalues;  // descending
    DenseMatrix vectors;              // column k pairs with eigenvalues[k]
};

Spectrum sym_eigenvalues(const SparseMatrix& a);
Spectrum sym_eigenvalues(const DenseMatrix& a);
EigenPairs sym_eigen(const DenseMatrix& a);

// Principal submatrix of a on the given sorted indices.
DenseMatrix principal_submatrix(const SparseMatrix& a, const std::vector<std::size_t>& idx);

struct InterlacingWitness {
    bool pass = false;
    Spectrum base;          // adjacency of g, no self-loops
    Spectrum ego;           // principal submatrix on ego(i)
    std::size_t violation = 0;  // first failing 0-based m when !pass
    double worst_slack = 0.0;   // most negative slack over all inequalities
};

// Cauchy interlacing lambda_m(A) >= mu_m(B) >= lambda_{m+n-k}(A) for the
// self-loop-free induced submatrix B on ego(i).
InterlacingWitness check_interlacing(const Graph& g, std::size_t i, double tol = kInterlacingTolerance);
// Uses a precomputed base spectrum.
InterlacingWitness check_interlacing(const Graph& g, std::size_t i, const Spectrum& base,
                                     double tol = kInterlacingTolerance);

Spectrum supra_spectrum(const Graph& g, std::size_t cap = kSupraSpectrumCap);

} // namespace egognn
