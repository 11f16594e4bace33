#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sylf/solvability.hpp"

namespace sylf {

struct Problem {
    Matrix A, B, C;
    std::optional<Matrix> D, E;  // generalized form A X D + E f(X) B = C
    StructuredOperator f;

    Eigen::Index size() const { return A.rows(); }
    bool generalized() const;
    Matrix coeff_d() const;  // D or the identity
    Matrix coeff_e() const;  // E or the identity
};

enum class SolveMethod {
    kron,
    reduction,
    closed_form_preserving,
    closed_form_reversing,
};

std::string method_name(SolveMethod m);

struct SolveReport {
    Matrix X;
    SolveMethod method = SolveMethod::kron;
    double residual = 0.0;   // relative, recomputed from scratch
    double sigma_min = 0.0;  // of the vectorized map when computed
    std::vector<std::string> warnings;
    std::optional<SolvabilityReport> solvability;
};

/// ||A X D + E f(X) B - C|| / (||A|| ||X|| ||D|| + ||E|| ||X|| ||B|| + ||C|| + 1).
double equation_residual(const Problem& p, const Matrix& X);

/// Direct vectorization solve, the universal oracle.
SolveReport solve_kron(const Problem& p);

/// Reduction to the standard Sylvester equation X(f(B)B) - (f(A)A)X = f(C)B - f(A)C;
/// the candidate is verified against the original equation.
SolveReport reduce_preserving(const Problem& p, double tol = kVerifyTol);

/// Reduction to the generalized Sylvester equation
/// A X Z f(A) - f(B) X Z B = C Z f(A) - f(C) Z B with Z = (B + l0 f(A))^{-1}.
SolveReport reduce_reversing(const Problem& p, double tol = kVerifyTol);

enum class PreservingVariant { chA, chB };

/// Jameson-style closed form on the reduced Sylvester equation.
SolveReport closed_form_preserving(const Problem& p,
                                   PreservingVariant variant = PreservingVariant::chA,
                                   double tol = kVerifyTol);

// Intermediates of the Laurent-expansion closed form (reversing f).
struct ReversingClosedForm {
    LaurentExpansion U, V;      // expansions of (A - l f(B))^{-1}, (B - l f(A))^{-1}
    RelCharPoly p;              // ch_{B,f(A)}
    std::vector<Matrix> T;      // T_0..T_m
    Matrix M;                   // ch_{B,f(A)}(U_m)
    Matrix S;                   // sum p_j T_j
    Matrix X;
};

/// Single-route evaluation; throws SingularClosedFormMatrix when M is rank
/// deficient (the route needs f(B) invertible).
ReversingClosedForm reversing_closed_form_detail(const Matrix& A, const Matrix& B,
                                                 const Matrix& C, const StructuredOperator& f);

/// Tries the direct route, then the equivalent-equation route
/// f(B) X + f(X) f(A) = f(C), then falls back to solve_kron with a warning.
SolveReport closed_form_reversing(const Problem& p, double tol = kVerifyTol);

enum class MethodChoice { auto_dispatch, kron, reduction, closed_form };

/// Dispatcher: reduction first, kron fallback; generalized problems go
/// straight to kron.  Attaches the solvability report.
SolveReport solve(const Problem& p, MethodChoice method = MethodChoice::auto_dispatch,
                  double tol = kVerifyTol);

}  // namespace sylf
