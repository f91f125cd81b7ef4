#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "egognn/error.hpp"
#include "egognn/multiplex.hpp"
#include "egognn/spectral.hpp"
#include "support.hpp"

using namespace egognn;
using namespace testing;

namespace {

void check_spectrum(const Spectrum& s, std::vector<double> expected, double tol = 1e-8) {
    std::sort(expected.rbegin(), expected.rend());
    REQUIRE(s.eigenvalues.size() == expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(s.eigenvalues[k] - expected[k]) <= tol);
}

// Power sums p_k = sum lambda^k must equal trace(A^k); for k = 1..n these fix
// the eigenvalue multiset (Newton's identities).
void check_power_sums(const DenseMatrix& a, const Spectrum& s) {
    DenseMatrix ak = a;
    for (std::size_t k = 1; k <= a.rows(); ++k) {
        double trace = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) trace += ak(i, i);
        double sum = 0.0;
        for (double l : s.eigenvalues) sum += std::pow(l, static_cast<double>(k));
        CHECK(std::abs(sum - trace) <= 1e-8 * std::max(1.0, std::abs(trace)));
        ak = dense_product(ak, a);
    }
}

} // namespace

TEST_CASE("sym_eigenvalues examples") {
    check_spectrum(sym_eigenvalues(named::cycle(3).adjacency()), {2, -1, -1});
    check_spectrum(sym_eigenvalues(SparseMatrix::identity(4)), {1, 1, 1, 1});
    check_spectrum(sym_eigenvalues(named::path(2).adjacency()), {1, -1});
    CHECK_THROWS_AS(sym_eigenvalues(SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}})), Error);
}

TEST_CASE("eigenvalues agree with the characteristic polynomial on small matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 2 + seed % 5;
        auto a = random_dense(n, n, seed);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
        check_power_sums(a, sym_eigenvalues(a));
    }
}

TEST_CASE("eigenpairs have small residuals and the trace is preserved") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = random_graph(24, 0.25, seed);
        const auto a = g.adjacency().to_dense();
        const auto pairs = sym_eigen(a);
        CHECK(std::is_sorted(pairs.eigenvalues.rbegin(), pairs.eigenvalues.rend()));
        double sum = 0.0;
        for (std::size_t k = 0; k < pairs.eigenvalues.size(); ++k) {
            sum += pairs.eigenvalues[k];
            double res = 0.0, norm = 0.0;
            for (std::size_t i = 0; i < 24; ++i) {
                double av = 0.0;
                for (std::size_t j = 0; j < 24; ++j) av += a(i, j) * pairs.vectors(j, k);
                res += std::pow(av - pairs.eigenvalues[k] * pairs.vectors(i, k), 2);
                norm += std::pow(pairs.vectors(i, k), 2);
            }
            CHECK(std::sqrt(res) <= 1e-6 * std::sqrt(norm));
        }
        CHECK(std::abs(sum) <= 1e-8);
    }
}

TEST_CASE("spectrum of a disjoint union is the union of spectra") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph a = random_graph(7, 0.4, seed);
        const Graph b = random_graph(9, 0.3, seed + 40);
        auto expected = sym_eigenvalues(a.adjacency()).eigenvalues;
        const auto eb = sym_eigenvalues(b.adjacency()).eigenvalues;
        expected.insert(expected.end(), eb.begin(), eb.end());
        check_spectrum(sym_eigenvalues(disjoint_union(a, b).adjacency()), expected);
    }
}

TEST_CASE("interlacing examples") {
    const auto w = check_interlacing(named::cycle(6), 0);
    CHECK(w.pass);
    check_spectrum(w.ego, {std::sqrt(2.0), 0.0, -std::sqrt(2.0)});
    check_spectrum(w.base, {2, 1, 1, -1, -1, -2});

    const auto k2 = check_interlacing(named::path(2), 1);
    CHECK(k2.pass);
    check_spectrum(k2.ego, {1, -1});
    CHECK(std::abs(k2.worst_slack) <= 1e-9);
}

TEST_CASE("interlacing holds on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = random_graph(14, 0.3, seed);
        const auto base = sym_eigenvalues(g.adjacency());
        for (std::size_t i = 0; i < g.n(); ++i) CHECK(check_interlacing(g, i, base).pass);
    }
}

TEST_CASE("interlacing check detects a wrong base spectrum") {
    const Graph g = named::cycle(6);
    Spectrum shifted = sym_eigenvalues(g.adjacency());
    for (double& l : shifted.eigenvalues) l -= 1.0;
    const auto w = check_interlacing(g, 0, shifted);
    CHECK_FALSE(w.pass);
    CHECK(w.worst_slack < 0.0);
}

TEST_CASE("supra_spectrum examples") {
    check_spectrum(supra_spectrum(named::empty(1)), {1});
    check_spectrum(supra_spectrum(named::empty(2)), {1, 1, 0, 0});
    const Graph k2 = named::path(2);
    check_spectrum(supra_spectrum(k2), sym_eigenvalues(build_supra(k2).matrix.to_dense()).eigenvalues);
    // 4x4 by hand: eigenvalues of [[1,1,1,0],[1,1,0,1],[1,0,1,1],[0,1,1,1]].
    check_spectrum(supra_spectrum(k2), {3, 1, 1, -1});
    CHECK_THROWS_AS(supra_spectrum(named::empty(33)), CapacityError);
}
