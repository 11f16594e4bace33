#pragma once

#include <utility>
#include <vector>

#include "sylf/pencil.hpp"

namespace sylf {

// f-palindromic quadratic lambda^2 A2 + lambda A1 + A0 with A_i = f(A_{2-i});
// eigenvalues come in s-reciprocal pairs (lambda, 1/s(lambda)).
struct PalindromicQEP {
    Matrix A2, A1, A0;
    StructuredOperator f;
};

// Blocks of the linearization Z = [[A0, A1 - A2], [A0, A0]], renamed
// Z = [[A, B], [C, D]].  The published Z carries -A1-A2 in the (1,2) block
// but fails the eigenvector identity of the pencil; A1 - A2 restores it with
// eigenvectors [x; lambda x].
struct RiccatiBlocks {
    Matrix A, B, C, D;
};

/// Validates f(A1) = A1 and assembles A0 = f(A2).
PalindromicQEP make_qep(const Matrix& A2, const Matrix& A1, const StructuredOperator& f);

/// Block operator F(M) = [[f(M1), f(M3)], [f(M2), f(M4)]] on the 2x2 partition.
Matrix big_f(const StructuredOperator& f, const Matrix& M);

RiccatiBlocks build_z(const PalindromicQEP& q);

/// The 2m x 2m matrix Z assembled from the blocks.
Matrix assemble_z(const RiccatiBlocks& blocks);

/// R(X) = X A f(X) + X B + C f(X) + D.
Matrix riccati_residual(const Matrix& X, const RiccatiBlocks& blocks,
                        const StructuredOperator& f);

struct NewtonStep {
    int k = 0;
    double residual_norm = 0.0;
    double step_norm = 0.0;
};

struct NewtonTrace {
    std::vector<NewtonStep> iterates;
    bool converged = false;
    Matrix X;
};

/// Newton iteration on R(X) = 0; each step solves the Sylvester-like system
/// dX (A f(X_k) + B) + (X_k A + C) f(dX) = -R(X_k).
NewtonTrace newton_riccati(const RiccatiBlocks& blocks, const StructuredOperator& f,
                           const Matrix& X0, double tol, int maxit);

struct QepEigenvalues {
    std::vector<HomogPair> primary;     // pencil lambda (A f(X) + B) + f(X A + C)
    std::vector<HomogPair> reciprocal;  // pencil lambda (X A + C) + f(A f(X) + B)
};

/// Eigenvalues extracted from a converged Riccati root; throws
/// ResidualTooLarge when ||R(X)|| is above the gate.
QepEigenvalues qep_eigs_from_riccati(const RiccatiBlocks& blocks,
                                     const StructuredOperator& f, const Matrix& X,
                                     double residual_gate = 1e-6);

struct PairingReport {
    std::vector<std::pair<HomogPair, HomogPair>> pairs;
    std::vector<HomogPair> unmatched;
    bool all_paired = false;
};

/// Greedy matching of eigenvalues into (lambda, 1/s(lambda)) pairs under the
/// chordal metric; 0 and infinity pair with each other.
PairingReport check_pairing(const std::vector<HomogPair>& eigs, ScalarMapKind s,
                            double tol = 1e-6);

}  // namespace sylf
