#include "sylf/operators.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <numeric>

namespace sylf {

StructuredOperator op_identity() { return {OpKind::identity, {}}; }
StructuredOperator op_transpose() { return {OpKind::transpose, {}}; }
StructuredOperator op_conjugate() { return {OpKind::conjugate, {}}; }
StructuredOperator op_conjugate_transpose() { return {OpKind::conjugate_transpose, {}}; }

StructuredOperator op_perm_similarity(std::vector<int> perm) {
    validate_permutation(perm);
    return {OpKind::perm_similarity, std::move(perm)};
}

StructuredOperator op_perm_reversing(std::vector<int> perm) {
    validate_permutation(perm);
    return {OpKind::perm_reversing, std::move(perm)};
}

std::string kind_name(OpKind kind) {
    switch (kind) {
        case OpKind::identity: return "identity";
        case OpKind::transpose: return "transpose";
        case OpKind::conjugate: return "conjugate";
        case OpKind::conjugate_transpose: return "conjugate_transpose";
        case OpKind::perm_similarity: return "perm_similarity";
        case OpKind::perm_reversing: return "perm_reversing";
    }
    return "?";
}

bool is_involution(const std::vector<int>& perm) {
    for (int i = 0; i < static_cast<int>(perm.size()); ++i)
        if (perm[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] != i) return false;
    return true;
}

bool is_period2(const StructuredOperator& f) {
    return !f.is_perm_kind() || is_involution(f.perm);
}

void validate_permutation(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    for (int p : perm) {
        if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p])
            throw ParseError("permutation is not a bijection on {1..m}");
        seen[p] = 1;
    }
    if (perm.empty()) throw ParseError("empty permutation");
}

Matrix StructuredOperator::perm_matrix() const {
    return permutation_matrix(perm);
}

Matrix permutation_matrix(const std::vector<int>& perm) {
    const Eigen::Index m = static_cast<Eigen::Index>(perm.size());
    Matrix P = Matrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) P(j, perm[j]) = 1.0;
    return P;
}

OperatorClass classify(const StructuredOperator& f) {
    OperatorClass c;
    switch (f.kind) {
        case OpKind::identity:
        case OpKind::perm_similarity:
            c = {Algebra::preserving, true, ScalarMapKind::identity};
            break;
        case OpKind::conjugate:
            c = {Algebra::preserving, false, ScalarMapKind::conjugation};
            break;
        case OpKind::transpose:
        case OpKind::perm_reversing:
            c = {Algebra::reversing, true, ScalarMapKind::identity};
            break;
        case OpKind::conjugate_transpose:
            c = {Algebra::reversing, false, ScalarMapKind::conjugation};
            break;
    }
    return c;
}

Matrix StructuredOperator::operator()(const Matrix& X) const {
    if (X.rows() != X.cols())
        throw DimensionMismatch("operator apply: operand must be square");
    if (is_perm_kind() && X.rows() != static_cast<Eigen::Index>(perm.size()))
        throw DimensionMismatch("operator apply: permutation size does not match operand");
    switch (kind) {
        case OpKind::identity: return X;
        case OpKind::transpose: return X.transpose();
        case OpKind::conjugate: return X.conjugate();
        case OpKind::conjugate_transpose: return X.adjoint();
        case OpKind::perm_similarity: {
            const Matrix P = perm_matrix();
            return P * X * P.transpose();
        }
        case OpKind::perm_reversing: {
            const Matrix P = perm_matrix();
            return P * X.transpose() * P.transpose();
        }
    }
    throw Error("operator apply: unknown operator kind");
}

Complex scalar_map(const StructuredOperator& f, Complex a) {
    return scalar_map(classify(f).scalar_map_kind, a);
}

Complex scalar_map(ScalarMapKind s, Complex a) {
    return s == ScalarMapKind::conjugation ? std::conj(a) : a;
}

Matrix commutation_matrix(Eigen::Index m) {
    // K = sum e_j e_i^T (x) e_i e_j^T; entry (i*m+j, j*m+i) = 1 maps
    // vec(X)[j*m+i] = X(i,j) to vec(X^T)[i*m+j].
    Matrix K = Matrix::Zero(m * m, m * m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            K(i * m + j, j * m + i) = 1.0;
    return K;
}

RealLinearMap RealLinearMap::complex_map(Matrix M) {
    RealLinearMap r;
    r.realified_ = false;
    r.cmat_ = std::move(M);
    return r;
}

RealLinearMap RealLinearMap::realified_map(RealMatrix R) {
    RealLinearMap r;
    r.realified_ = true;
    r.rmat_ = std::move(R);
    return r;
}

Eigen::Index RealLinearMap::dim() const {
    return realified_ ? rmat_.rows() : cmat_.rows();
}

Eigen::Index RealLinearMap::vec_dim() const {
    return realified_ ? rmat_.rows() / 2 : cmat_.rows();
}

const Matrix& RealLinearMap::complex_matrix() const {
    if (realified_) throw Error("RealLinearMap: map is realified");
    return cmat_;
}

const RealMatrix& RealLinearMap::real_matrix() const {
    if (!realified_) throw Error("RealLinearMap: map is complex");
    return rmat_;
}

Vector RealLinearMap::apply(const Vector& x) const {
    if (x.size() != vec_dim())
        throw DimensionMismatch("RealLinearMap::apply: bad vector length");
    if (!realified_) return cmat_ * x;
    return unstack_reim(rmat_ * stack_reim(x));
}

Vector RealLinearMap::solve(const Vector& rhs) const {
    if (rhs.size() != vec_dim())
        throw DimensionMismatch("RealLinearMap::solve: bad vector length");
    if (!realified_) {
        Eigen::FullPivLU<Matrix> lu(cmat_);
        const double scale = max_abs(cmat_);
        if (scale == 0.0 ||
            lu.matrixLU().diagonal().cwiseAbs().minCoeff() < kPivotTol * scale)
            throw SingularMatrix("RealLinearMap::solve: map is rank deficient");
        return lu.solve(rhs);
    }
    Eigen::FullPivLU<RealMatrix> lu(rmat_);
    const double scale = rmat_.size() ? rmat_.cwiseAbs().maxCoeff() : 0.0;
    if (scale == 0.0 ||
        lu.matrixLU().diagonal().cwiseAbs().minCoeff() < kPivotTol * scale)
        throw SingularMatrix("RealLinearMap::solve: map is rank deficient");
    return unstack_reim(lu.solve(stack_reim(rhs)));
}

std::pair<double, double> RealLinearMap::sigma_extrema() const {
    return realified_ ? sylf::sigma_extrema(rmat_) : sylf::sigma_extrema(cmat_);
}

RealLinearMap kf_matrix(const StructuredOperator& f, Eigen::Index m) {
    if (f.is_perm_kind() && static_cast<Eigen::Index>(f.perm.size()) != m)
        throw DimensionMismatch("kf_matrix: permutation size does not match m");
    const Eigen::Index n = m * m;
    switch (f.kind) {
        case OpKind::identity:
            return RealLinearMap::complex_map(Matrix::Identity(n, n));
        case OpKind::transpose:
            return RealLinearMap::complex_map(commutation_matrix(m));
        case OpKind::perm_similarity: {
            const Matrix P = f.perm_matrix();
            return RealLinearMap::complex_map(kron(P, P));
        }
        case OpKind::perm_reversing: {
            const Matrix P = f.perm_matrix();
            return RealLinearMap::complex_map(kron(P, P) * commutation_matrix(m));
        }
        case OpKind::conjugate: {
            RealMatrix R = RealMatrix::Zero(2 * n, 2 * n);
            R.topLeftCorner(n, n).setIdentity();
            R.bottomRightCorner(n, n) = -RealMatrix::Identity(n, n);
            return RealLinearMap::realified_map(std::move(R));
        }
        case OpKind::conjugate_transpose: {
            const RealMatrix K = commutation_matrix(m).real();
            RealMatrix R = RealMatrix::Zero(2 * n, 2 * n);
            R.topLeftCorner(n, n) = K;
            R.bottomRightCorner(n, n) = -K;
            return RealLinearMap::realified_map(std::move(R));
        }
    }
    throw Error("kf_matrix: unknown operator kind");
}

std::vector<int> index_to_permutation(std::uint64_t k, int m) {
    if (m < 1 || m > 20)
        throw IndexOutOfRange("index_to_permutation: m must be in 1..20");
    std::uint64_t fact = 1;
    for (int i = 2; i <= m; ++i) fact *= static_cast<std::uint64_t>(i);
    if (k < 1 || k > fact)
        throw IndexOutOfRange("index_to_permutation: index outside 1..m!");
    // Factorial-base unranking of the (k-1)-th lexicographic permutation.
    std::uint64_t r = k - 1;
    std::vector<int> pool(m);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> perm;
    perm.reserve(m);
    for (int i = m; i >= 1; --i) {
        fact /= static_cast<std::uint64_t>(i);
        const auto idx = static_cast<std::size_t>(r / fact);
        r %= fact;
        perm.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return perm;
}

}  // namespace sylf
