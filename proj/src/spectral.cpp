#include "egognn/spectral.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "egognn/error.hpp"
#include "egognn/multiplex.hpp"

namespace egognn {

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& a) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
    return m;
}

void check_symmetric_dense(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("eigen-solve: matrix is not square");
    if (a.rows() > kMaxEigenDimension) {
        throw CapacityError("eigen-solve: dimension " + std::to_string(a.rows()) + " exceeds " +
                            std::to_string(kMaxEigenDimension));
    }
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r + 1; c < a.cols(); ++c)
            if (a(r, c) != a(c, r)) {
                throw Error("eigen-solve: matrix is not symmetric at (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
}

} // namespace

EigenPairs sym_eigen(const DenseMatrix& a) {
    check_symmetric_dense(a);
    EigenPairs out;
    const std::size_t n = a.rows();
    if (n == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a));
    if (solver.info() != Eigen::Success) throw Error("eigen-solve: solver did not converge");
    // Eigen returns ascending order.
    out.eigenvalues.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto src = static_cast<Eigen::Index>(n - 1 - k);
        out.eigenvalues[k] = solver.eigenvalues()(src);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = solver.eigenvectors()(static_cast<Eigen::Index>(r), src);
    }
    return out;
}

Spectrum sym_eigenvalues(const DenseMatrix& a) {
    check_symmetric_dense(a);
    Spectrum s;
    if (a.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(a), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("eigen-solve: solver did not converge");
    s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

Spectrum sym_eigenvalues(const SparseMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("eigen-solve: matrix is not square");
    if (a.rows() > kMaxEigenDimension) {
        throw CapacityError("eigen-solve: dimension " + std::to_string(a.rows()) + " exceeds " +
                            std::to_string(kMaxEigenDimension));
    }
    if (!a.is_symmetric()) throw Error("eigen-solve: matrix is not symmetric");
    return sym_eigenvalues(a.to_dense());
}

DenseMatrix principal_submatrix(const SparseMatrix& a, const std::vector<std::size_t>& idx) {
    DenseMatrix b(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) b(r, c) = a.at(idx[r], idx[c]);
    return b;
}

InterlacingWitness check_interlacing(const Graph& g, std::size_t i, const Spectrum& base, double tol) {
    const auto members = ego_members(g, i);
    InterlacingWitness w;
    w.base = base;
    w.ego = sym_eigenvalues(principal_submatrix(g.adjacency(), members));

    const std::size_t n = base.eigenvalues.size();
    const std::size_t k = w.ego.eigenvalues.size();
    if (n != g.n()) throw DimensionError("check_interlacing: base spectrum does not match graph");
    const auto& lam = base.eigenvalues;
    const auto& mu = w.ego.eigenvalues;
    w.pass = true;
    w.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < k; ++m) {
        const double upper = lam[m] - mu[m];
        const double lower = mu[m] - lam[m + n - k];
        w.worst_slack = std::min({w.worst_slack, upper, lower});
        if ((upper < -tol || lower < -tol) && w.pass) {
            w.pass = false;
            w.violation = m;
        }
    }
    return w;
}

InterlacingWitness check_interlacing(const Graph& g, std::size_t i, double tol) {
    return check_interlacing(g, i, sym_eigenvalues(g.adjacency()), tol);
}

Spectrum supra_spectrum(const Graph& g, std::size_t cap) {
    if (g.n() > cap) {
        throw CapacityError("supra_spectrum: graph has " + std::to_string(g.n()) + " nodes, above the cap of " +
                            std::to_string(cap));
    }
    const SupraAdjacency s = build_supra(g, SupraOptions{true, std::max(cap, g.n())});
    return sym_eigenvalues(s.matrix.to_dense());
}

} // namespace egognn
