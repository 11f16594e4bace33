#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sylf/pencil.hpp"

namespace sylf {

// Chordal threshold for spectrum disjointness tests.
inline constexpr double kChordalTol = 1e-8;
// Relative sigma_min threshold for the Kronecker ground-truth test.
inline constexpr double kKronTol = 1e-10;

struct SolvabilityReport {
    std::string condition_name;
    bool holds = false;
    double margin = 0.0;          // minimum chordal gap (or sigma_min for the Kronecker test)
    bool kron_nonsingular = false;
    double sigma_min = 0.0;
    bool marginal = false;        // margin within a factor 10 of the threshold
    bool used_reduced_form = false;  // check_generalized only
    std::vector<std::pair<HomogPair, HomogPair>> details;  // offending pairs
};

/// Vectorized coefficient map of A X D + E f(X) B; realified when f conjugates.
RealLinearMap kron_operator(const Matrix& A, const Matrix& B, const Matrix& D,
                            const Matrix& E, const StructuredOperator& f);

/// Ground-truth uniqueness: smallest singular value of the map and the
/// verdict sigma_min > 1e-10 * ||map||.
std::pair<bool, double> kron_nonsingular(const Matrix& A, const Matrix& B,
                                         const Matrix& D, const Matrix& E,
                                         const StructuredOperator& f);

/// sigma(A f(A)) and sigma(B f(B)) disjoint (multiplication preserving f).
SolvabilityReport check_preserving(const Matrix& A, const Matrix& B,
                                   const StructuredOperator& f);

/// sigma(A - lambda f(B)) and sigma(B - lambda f(A)) disjoint (reversing f).
SolvabilityReport check_reversing(const Matrix& A, const Matrix& B,
                                  const StructuredOperator& f);

/// True iff no pair (l_i, l_j) in the spectrum has s(l_i) l_j = 1, with 0 and
/// infinity counted as reciprocals of each other.
std::pair<bool, std::vector<std::pair<HomogPair, HomogPair>>> reciprocal_free(
    const PencilSpectrum& spec, ScalarMapKind s);

/// Sufficient condition for A X D + E f(X) B = C; the reduced commuting form
/// is used (and reported) when the commutation tests pass.
SolvabilityReport check_generalized(const Matrix& A, const Matrix& D, const Matrix& E,
                                    const Matrix& B, const StructuredOperator& f);

/// Spectrum of P = A (x) B + (C (x) D) K_f for upper-triangular inputs,
/// f in {identity, transpose}.
std::vector<Complex> triangular_kron_spectrum(const Matrix& A, const Matrix& B,
                                              const Matrix& C, const Matrix& D,
                                              const StructuredOperator& f);

/// Necessary-and-sufficient test for the permutation operator family.
/// Case perm_similarity checks sigma(P^T A) and sigma(-P^T B) disjoint (sign
/// corrected); case perm_reversing checks the pencil P^T A - lambda B^T P for
/// reciprocal-freeness away from 1, with eigenvalue 1 at most simple.
SolvabilityReport permutation_solvability(const Matrix& A, const Matrix& B,
                                          const std::vector<int>& perm, OpKind kind);

}  // namespace sylf
