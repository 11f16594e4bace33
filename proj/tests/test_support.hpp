#pragma once

#include <algorithm>
#include <vector>

#include "sylf/generate.hpp"
#include "sylf/palindromic.hpp"
#include "sylf/solvers.hpp"

namespace sylf::testing {

inline double rel_err(const Matrix& got, const Matrix& want) {
    const double scale = std::max(want.norm(), 1e-300);
    return (got - want).norm() / scale;
}

/// Multiset comparison of eigenvalue lists under the chordal metric.
inline double eig_multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return 1.0;
    double worst = 0.0;
    std::vector<char> used(b.size(), 0);
    for (const Complex& x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = chordal_distance(make_homog(x), make_homog(b[j]));
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = 1;
        worst = std::max(worst, best);
    }
    return worst;
}

// --- independent oracles (kept clear of the implementation paths) ---------

/// Characteristic polynomial coefficients of A (det(lambda I - A), ascending)
/// by determinant interpolation at scaled roots of unity.
inline std::vector<Complex> charpoly_by_interpolation(const Matrix& A) {
    const int m = static_cast<int>(A.rows());
    const int n = m + 1;
    const double r = std::max(1.0, 2.0 * A.norm());
    std::vector<Complex> q(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Complex node = std::polar(r, 2.0 * std::numbers::pi * j / n);
        q[static_cast<std::size_t>(j)] =
            determinant(Matrix(node * Matrix::Identity(m, m) - A));
    }
    std::vector<Complex> p(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j)
            acc += q[static_cast<std::size_t>(j)] *
                   std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
        p[static_cast<std::size_t>(k)] = acc / (static_cast<double>(n) * std::pow(r, k));
    }
    return p;
}

/// Roots of a monic-normalizable polynomial via its companion matrix.
inline std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    Matrix comp = Matrix::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i)
        comp(i, d - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[static_cast<std::size_t>(d)];
    return eigenvalues(comp);
}

/// Riccati root from the QEP eigenpairs with |lambda| > 1 (one per
/// s-reciprocal pair): X = f(V L^{-1} V^{-1}).
inline Matrix riccati_root_from_eigenvectors(const PalindromicQEP& q) {
    const int m = static_cast<int>(q.A2.rows());
    const Matrix Z = assemble_z(build_z(q));
    const Matrix FZ = big_f(q.f, Z);
    const PencilSpectrum spec = pencil_spectrum(Z, Matrix(-FZ));
    std::vector<Complex> outer;
    for (const HomogPair& e : spec.pairs)
        if (!e.infinite() && std::abs(e.lambda()) > 1.0) outer.push_back(e.lambda());
    if (static_cast<int>(outer.size()) != m)
        throw Error("riccati_root_from_eigenvectors: could not split the spectrum");

    Matrix V(m, m);
    for (int i = 0; i < m; ++i) {
        const Matrix Q = outer[static_cast<std::size_t>(i)] * outer[static_cast<std::size_t>(i)] * q.A2 +
                         outer[static_cast<std::size_t>(i)] * q.A1 + q.A0;
        Eigen::JacobiSVD<Matrix> svd(Q, Eigen::ComputeFullV);
        V.col(i) = svd.matrixV().col(m - 1);
    }
    Matrix L = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) L(i, i) = outer[static_cast<std::size_t>(i)];
    return q.f(Matrix(V * L.inverse() * V.inverse()));
}

}  // namespace sylf::testing
