#include "sylf/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace sylf {

namespace {

void require_square(const Matrix& A, const char* who) {
    if (A.rows() != A.cols())
        throw DimensionMismatch(std::string(who) + ": matrix must be square");
}

}  // namespace

Matrix solve_linear(const Matrix& A, const Matrix& B) {
    require_square(A, "solve_linear");
    if (B.rows() != A.rows())
        throw DimensionMismatch("solve_linear: row count of B does not match A");
    Eigen::FullPivLU<Matrix> lu(A);
    const double scale = max_abs(A);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (scale == 0.0 || min_pivot < kPivotTol * scale)
        throw SingularMatrix("solve_linear: pivot below tolerance");
    return lu.solve(B);
}

Complex determinant(const Matrix& A) {
    require_square(A, "determinant");
    if (A.rows() == 0) return Complex(1.0, 0.0);
    return Eigen::FullPivLU<Matrix>(A).determinant();
}

std::vector<Complex> eigenvalues(const Matrix& A) {
    require_square(A, "eigenvalues");
    if (A.rows() > 64)
        throw DimensionMismatch("eigenvalues: dimension above the 64 cap");
    Eigen::ComplexEigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw ConvergenceFailure("eigenvalues: QR iteration did not converge");
    const auto& ev = es.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

Vector vec(const Matrix& X) {
    return Eigen::Map<const Vector>(X.data(), X.size());
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw DimensionMismatch("unvec: length does not match target shape");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

RealMatrix realify(const Matrix& M) {
    const Eigen::Index n = M.rows(), c = M.cols();
    RealMatrix R(2 * n, 2 * c);
    R.topLeftCorner(n, c) = M.real();
    R.topRightCorner(n, c) = -M.imag();
    R.bottomLeftCorner(n, c) = M.imag();
    R.bottomRightCorner(n, c) = M.real();
    return R;
}

RealVector stack_reim(const Vector& v) {
    RealVector r(2 * v.size());
    r.head(v.size()) = v.real();
    r.tail(v.size()) = v.imag();
    return r;
}

Vector unstack_reim(const RealVector& v) {
    const Eigen::Index n = v.size() / 2;
    if (2 * n != v.size())
        throw DimensionMismatch("unstack_reim: odd length");
    Vector z(n);
    z.real() = v.head(n);
    z.imag() = v.tail(n);
    return z;
}

bool all_finite(const Matrix& M) {
    return M.allFinite();
}

double max_abs(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    return M.cwiseAbs().maxCoeff();
}

namespace {

template <typename Mat>
std::pair<double, double> sigma_extrema_impl(const Mat& M) {
    if (M.size() == 0) return {0.0, 0.0};
    if (M.rows() <= 32 && M.cols() <= 32) {
        Eigen::JacobiSVD<Mat> svd(M);
        const auto& s = svd.singularValues();
        return {s(s.size() - 1), s(0)};
    }
    Eigen::BDCSVD<Mat> svd(M);
    const auto& s = svd.singularValues();
    return {s(s.size() - 1), s(0)};
}

}  // namespace

std::pair<double, double> sigma_extrema(const Matrix& M) { return sigma_extrema_impl(M); }
std::pair<double, double> sigma_extrema(const RealMatrix& M) { return sigma_extrema_impl(M); }

}  // namespace sylf
