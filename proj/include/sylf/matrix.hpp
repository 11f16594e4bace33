#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "sylf/errors.hpp"

namespace sylf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default relative pivot/rank tolerance and verification tolerance.
// Both are overridable at the CLI.
inline constexpr double kPivotTol = 1e-12;
inline constexpr double kVerifyTol = 1e-8;

// Largest matrix dimension accepted for equation solves.  Kronecker systems
// grow like m^2 (2m^2 after realification), so this keeps direct solves
// sub-second.
inline constexpr int kMaxEquationSize = 32;

/// Solves A X = B by pivoted elimination.  Throws SingularMatrix when the
/// smallest pivot falls below kPivotTol times the largest entry of A.
Matrix solve_linear(const Matrix& A, const Matrix& B);

/// Determinant via pivoted elimination with sign tracking (0 for singular A).
Complex determinant(const Matrix& A);

/// All eigenvalues with multiplicity, m <= 64.
std::vector<Complex> eigenvalues(const Matrix& A);

// --- vectorization / Kronecker helpers -----------------------------------

/// Column-stacking vec operator.
Vector vec(const Matrix& X);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

Matrix kron(const Matrix& A, const Matrix& B);

/// Real 2n x 2n representation of z -> M z acting on stacked [Re z; Im z].
RealMatrix realify(const Matrix& M);
RealVector stack_reim(const Vector& v);
Vector unstack_reim(const RealVector& v);

// --- small numeric utilities ----------------------------------------------

bool all_finite(const Matrix& M);
double max_abs(const Matrix& M);

/// (sigma_min, sigma_max) of a dense matrix.
std::pair<double, double> sigma_extrema(const Matrix& M);
std::pair<double, double> sigma_extrema(const RealMatrix& M);

}  // namespace sylf
