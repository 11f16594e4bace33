#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sylf/matrix.hpp"

namespace sylf {

// The structured operator f of AX + f(X)B = C.  A closed enumeration: by the
// Semrl characterization, bijective linear multiplication preserving or
// reversing maps are (transpose-)similarity conjugations, so these kinds plus
// permutation parameters cover the operators handled here.
enum class OpKind {
    identity,
    transpose,
    conjugate,
    conjugate_transpose,
    perm_similarity,
    perm_reversing,
};

struct StructuredOperator {
    OpKind kind = OpKind::identity;
    // 0-based permutation images for the perm kinds: row j of P is e_{perm[j]}^T.
    std::vector<int> perm;

    bool is_perm_kind() const {
        return kind == OpKind::perm_similarity || kind == OpKind::perm_reversing;
    }
    Matrix perm_matrix() const;

    /// f(X); throws DimensionMismatch for non-square X or permutation size mismatch.
    Matrix operator()(const Matrix& X) const;
};

StructuredOperator op_identity();
StructuredOperator op_transpose();
StructuredOperator op_conjugate();
StructuredOperator op_conjugate_transpose();
StructuredOperator op_perm_similarity(std::vector<int> perm);
StructuredOperator op_perm_reversing(std::vector<int> perm);

std::string kind_name(OpKind kind);

enum class Algebra { preserving, reversing };
enum class ScalarMapKind { identity, conjugation };

struct OperatorClass {
    Algebra algebra = Algebra::preserving;
    bool linear_over_complex = true;
    ScalarMapKind scalar_map_kind = ScalarMapKind::identity;
};

OperatorClass classify(const StructuredOperator& f);

/// The scalar companion s with f(aX) = s(a) f(X).
Complex scalar_map(const StructuredOperator& f, Complex a);
Complex scalar_map(ScalarMapKind s, Complex a);

/// m^2 x m^2 permutation K with K vec(X) = vec(X^T).
Matrix commutation_matrix(Eigen::Index m);

// A linear map on vec-space that is either complex m^2 x m^2 or, for
// conjugating operators (which admit no complex matrix representation), a
// real 2m^2 x 2m^2 matrix acting on stacked [Re vec X; Im vec X].
class RealLinearMap {
public:
    static RealLinearMap complex_map(Matrix M);
    static RealLinearMap realified_map(RealMatrix R);

    bool realified() const { return realified_; }
    /// Dimension of the underlying matrix (m^2, or 2m^2 when realified).
    Eigen::Index dim() const;
    /// Length of complex vectors this map acts on (always m^2).
    Eigen::Index vec_dim() const;

    const Matrix& complex_matrix() const;
    const RealMatrix& real_matrix() const;

    Vector apply(const Vector& x) const;
    /// Pivoted-elimination solve; throws SingularMatrix on rank deficiency.
    Vector solve(const Vector& rhs) const;
    std::pair<double, double> sigma_extrema() const;

private:
    bool realified_ = false;
    Matrix cmat_;
    RealMatrix rmat_;
};

/// Matrix representation of vec .. f .. unvec on m x m arguments.
RealLinearMap kf_matrix(const StructuredOperator& f, Eigen::Index m);

/// k-th permutation of {1..m} in lexicographic order (k is 1-based, k <= m!),
/// returned 0-based.  m <= 20 so that m! fits a 64-bit count.
std::vector<int> index_to_permutation(std::uint64_t k, int m);

Matrix permutation_matrix(const std::vector<int>& perm);

/// Throws ParseError unless perm is a bijection on {0..m-1}.
void validate_permutation(const std::vector<int>& perm);

bool is_involution(const std::vector<int>& perm);

/// Period-2 holds for every kind except permutation kinds with P^2 != I.
/// The reduction and closed-form machinery requires it; the Kronecker and
/// permutation-family analysis does not.
bool is_period2(const StructuredOperator& f);

}  // namespace sylf
