#pragma once

#include <vector>

#include "sylf/matrix.hpp"
#include "sylf/operators.hpp"

namespace sylf {

// Homogeneous eigenvalue (alpha : beta) of a pencil D - lambda E, normalized
// to |alpha|^2 + |beta|^2 = 1.  beta = 0 encodes the infinite eigenvalue.
struct HomogPair {
    Complex alpha{0.0, 0.0};
    Complex beta{0.0, 0.0};

    bool infinite(double tol = 1e-12) const { return std::abs(beta) <= tol; }
    Complex lambda() const { return alpha / beta; }
};

HomogPair make_homog(Complex lambda);
HomogPair make_homog(Complex alpha, Complex beta);
HomogPair homog_infinity();

/// |a1 b2 - a2 b1| on normalized pairs; uniform for infinite eigenvalues.
double chordal_distance(const HomogPair& p, const HomogPair& q);

/// Distance of q from 1/s(p); zero iff (p, q) is an s-reciprocal pair.
/// Regards 0 and infinity as reciprocals of each other.
double reciprocal_distance(const HomogPair& p, const HomogPair& q, ScalarMapKind s);

struct Pencil {
    Matrix D, E;  // D - lambda E
};

struct PencilSpectrum {
    std::vector<HomogPair> pairs;  // size m when regular, empty otherwise
    bool regular = false;
};

// Coefficients p_0..p_m of det(D - lambda E) in ascending powers.
struct RelCharPoly {
    std::vector<Complex> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    /// Largest index with |p_j| above 1e-10 * max|p_j|; -1 if all vanish.
    int degree() const;
    Complex eval(Complex lambda) const;
};

// Coefficients U_k of (D - lambda E)^{-1} = sum_k U_k lambda^{-k-1}, the
// expansion at infinity enclosing every finite eigenvalue.  U_k = 0 for
// k < -mu.
struct LaurentExpansion {
    int m = 0;
    int mu = 0;
    int kmin = 0, kmax = 0;        // stored index range (kmin = -m)
    std::vector<Matrix> coeffs;    // coeffs[k - kmin]
    double radius = 0.0;           // contour radius used
    double residual = 0.0;         // recurrence residual at convergence

    /// U_k; zero below the stored range, MissingCoefficient above it.
    Matrix at(int k) const;
};

PencilSpectrum pencil_spectrum(const Matrix& D, const Matrix& E);

RelCharPoly relative_charpoly(const Matrix& D, const Matrix& E);

struct ResolventShift {
    Complex gamma;
    Matrix Z;  // (A + gamma B)^{-1}
};

/// First candidate gamma from 0, 1, -1, 2, -2, i, -i, 3, ... with the best
/// pivot-growth ratio for A + gamma B.  Throws SingularPencil when none of
/// the 2m+4 candidates is invertible.
ResolventShift resolvent_shift(const Matrix& A, const Matrix& B);

/// Contour-quadrature Laurent coefficients U_k, -m <= k <= kmax (kmax >= m).
LaurentExpansion laurent_coefficients(const Matrix& D, const Matrix& E, int kmax);

/// ch_{D,E}(U_k) = sum_j p_j U_{k+j-m}; vanishes for k >= m or k <= -1 when
/// L is the pencil's own expansion.
Matrix rel_cayley_hamilton(const RelCharPoly& p, const LaurentExpansion& L, int k);

/// T_j = sum_{s+t=j-1} U_s C V_t - sum_{s+t=j} U_s f(C) V_t for 0 <= j <= jmax.
std::vector<Matrix> t_sequence(const LaurentExpansion& U, const LaurentExpansion& V,
                               const Matrix& C, const StructuredOperator& f, int jmax);

}  // namespace sylf
