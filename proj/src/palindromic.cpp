#include "sylf/palindromic.hpp"

#include <algorithm>
#include <cmath>

#include "sylf/solvability.hpp"

namespace sylf {

PalindromicQEP make_qep(const Matrix& A2, const Matrix& A1, const StructuredOperator& f) {
    if (classify(f).algebra != Algebra::reversing)
        throw WrongOperatorClass("make_qep: operator must be multiplication reversing");
    if (!is_period2(f))
        throw WrongOperatorClass("make_qep: permutation operator is not period-2");
    if (A2.rows() != A2.cols() || A1.rows() != A1.cols() || A2.rows() != A1.rows())
        throw DimensionMismatch("make_qep: A2 and A1 must be square and equal size");
    if ((f(A1) - A1).norm() > 1e-12 * std::max(1.0, A1.norm()))
        throw NotPalindromic("make_qep: f(A1) != A1");
    return {A2, A1, f(A2), f};
}

Matrix big_f(const StructuredOperator& f, const Matrix& M) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0)
        throw OddDimension("big_f: matrix must be square with even size");
    const Eigen::Index m = M.rows() / 2;
    Matrix out(2 * m, 2 * m);
    out.topLeftCorner(m, m) = f(M.topLeftCorner(m, m));
    out.topRightCorner(m, m) = f(M.bottomLeftCorner(m, m));
    out.bottomLeftCorner(m, m) = f(M.topRightCorner(m, m));
    out.bottomRightCorner(m, m) = f(M.bottomRightCorner(m, m));
    return out;
}

RiccatiBlocks build_z(const PalindromicQEP& q) {
    return {q.A0, q.A1 - q.A2, q.A0, q.A0};
}

Matrix assemble_z(const RiccatiBlocks& b) {
    const Eigen::Index m = b.A.rows();
    Matrix Z(2 * m, 2 * m);
    Z.topLeftCorner(m, m) = b.A;
    Z.topRightCorner(m, m) = b.B;
    Z.bottomLeftCorner(m, m) = b.C;
    Z.bottomRightCorner(m, m) = b.D;
    return Z;
}

Matrix riccati_residual(const Matrix& X, const RiccatiBlocks& b, const StructuredOperator& f) {
    const Matrix fX = f(X);
    return X * b.A * fX + X * b.B + b.C * fX + b.D;
}

NewtonTrace newton_riccati(const RiccatiBlocks& b, const StructuredOperator& f,
                           const Matrix& X0, double tol, int maxit) {
    const Eigen::Index m = b.A.rows();
    if (X0.rows() != m || X0.cols() != m)
        throw DimensionMismatch("newton_riccati: X0 size mismatch");
    const Matrix I = Matrix::Identity(m, m);

    NewtonTrace trace;
    trace.X = X0;
    for (int k = 0; k <= maxit; ++k) {
        const Matrix R = riccati_residual(trace.X, b, f);
        const double xn = trace.X.norm();
        const double scale = 1.0 + b.A.norm() * xn * xn + (b.B.norm() + b.C.norm()) * xn + b.D.norm();
        const double rnorm = R.norm();
        if (rnorm <= tol * scale) {
            trace.iterates.push_back({k, rnorm, 0.0});
            trace.converged = true;
            return trace;
        }
        if (k == maxit) break;

        // dX (A f(X) + B) + (X A + C) f(dX) = -R, the Frechet derivative of R.
        const Matrix lead = b.A * f(trace.X) + b.B;
        const Matrix trail = trace.X * b.A + b.C;
        const RealLinearMap map = kron_operator(I, I, lead, trail, f);
        const auto [smin, smax] = map.sigma_extrema();
        if (smax == 0.0 || smin <= kKronTol * smax)
            throw NewtonStepSingular("newton_riccati: step system is rank deficient");
        const Matrix dX = unvec(map.solve(vec(Matrix(-R))), m, m);
        trace.X += dX;
        trace.iterates.push_back({k, rnorm, dX.norm()});
    }
    trace.converged = false;
    return trace;
}

QepEigenvalues qep_eigs_from_riccati(const RiccatiBlocks& b, const StructuredOperator& f,
                                     const Matrix& X, double residual_gate) {
    const double rnorm = riccati_residual(X, b, f).norm();
    const double scale = 1.0 + b.A.norm() + b.B.norm() + b.C.norm() + b.D.norm();
    if (rnorm > residual_gate * scale)
        throw ResidualTooLarge("qep_eigs_from_riccati: R(X) above gate");

    const Matrix lead = b.A * f(X) + b.B;   // A f(X) + B
    const Matrix trail = X * b.A + b.C;            // X A + C
    // lambda lead + f(trail) = 0 reads as the pencil f(trail) - lambda (-lead).
    QepEigenvalues out;
    out.primary = pencil_spectrum(f(trail), Matrix(-lead)).pairs;
    out.reciprocal = pencil_spectrum(f(lead), Matrix(-trail)).pairs;
    return out;
}

PairingReport check_pairing(const std::vector<HomogPair>& eigs, ScalarMapKind s, double tol) {
    PairingReport rep;
    std::vector<char> used(eigs.size(), 0);
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (used[i]) continue;
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = i;
        for (std::size_t j = i + 1; j < eigs.size(); ++j) {
            if (used[j]) continue;
            const double d = reciprocal_distance(eigs[i], eigs[j], s);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (best_j != i && best <= tol) {
            used[i] = used[best_j] = 1;
            rep.pairs.emplace_back(eigs[i], eigs[best_j]);
        } else {
            used[i] = 1;
            rep.unmatched.push_back(eigs[i]);
        }
    }
    rep.all_paired = rep.unmatched.empty();
    return rep;
}

}  // namespace sylf
