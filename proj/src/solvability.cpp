#include "sylf/solvability.hpp"

#include <algorithm>
#include <cmath>

namespace sylf {

namespace {

void require_same_square(std::initializer_list<const Matrix*> ms, const char* who) {
    Eigen::Index m = -1;
    for (const Matrix* M : ms) {
        if (M->rows() != M->cols())
            throw DimensionMismatch(std::string(who) + ": matrices must be square");
        if (m < 0) m = M->rows();
        if (M->rows() != m)
            throw DimensionMismatch(std::string(who) + ": matrices must share one size");
    }
}

std::vector<HomogPair> to_homog(const std::vector<Complex>& eigs) {
    std::vector<HomogPair> out;
    out.reserve(eigs.size());
    for (const Complex& l : eigs) out.push_back(make_homog(l));
    return out;
}

// Minimum chordal gap between two spectra plus the colliding pairs.
struct Gap {
    double margin = std::numeric_limits<double>::infinity();
    std::vector<std::pair<HomogPair, HomogPair>> collisions;
};

Gap spectrum_gap(const std::vector<HomogPair>& s1, const std::vector<HomogPair>& s2) {
    Gap g;
    for (const HomogPair& p : s1)
        for (const HomogPair& q : s2) {
            const double d = chordal_distance(p, q);
            g.margin = std::min(g.margin, d);
            if (d <= kChordalTol) g.collisions.emplace_back(p, q);
        }
    if (!std::isfinite(g.margin)) g.margin = 1.0;  // empty spectra
    return g;
}

bool near_threshold(double margin, double tol) {
    return margin > tol / 10.0 && margin < tol * 10.0;
}

void attach_kron(SolvabilityReport& rep, const Matrix& A, const Matrix& B,
                 const Matrix& D, const Matrix& E, const StructuredOperator& f) {
    const auto [ok, smin] = kron_nonsingular(A, B, D, E, f);
    rep.kron_nonsingular = ok;
    rep.sigma_min = smin;
}

bool commuting(const Matrix& X, const Matrix& Y) {
    return (X * Y - Y * X).norm() <= 1e-10 * X.norm() * Y.norm();
}

}  // namespace

RealLinearMap kron_operator(const Matrix& A, const Matrix& B, const Matrix& D,
                            const Matrix& E, const StructuredOperator& f) {
    require_same_square({&A, &B, &D, &E}, "kron_operator");
    const Eigen::Index m = A.rows();
    if (f.is_perm_kind() && static_cast<Eigen::Index>(f.perm.size()) != m)
        throw DimensionMismatch("kron_operator: permutation size does not match m");
    const Matrix T = kron(D.transpose(), A);
    const Matrix S = kron(B.transpose(), E);
    const RealLinearMap K = kf_matrix(f, m);
    if (!K.realified())
        return RealLinearMap::complex_map(T + S * K.complex_matrix());
    return RealLinearMap::realified_map(realify(T) + realify(S) * K.real_matrix());
}

std::pair<bool, double> kron_nonsingular(const Matrix& A, const Matrix& B,
                                         const Matrix& D, const Matrix& E,
                                         const StructuredOperator& f) {
    const RealLinearMap map = kron_operator(A, B, D, E, f);
    const auto [smin, smax] = map.sigma_extrema();
    return {smin > kKronTol * smax && smax > 0.0, smin};
}

SolvabilityReport check_preserving(const Matrix& A, const Matrix& B,
                                   const StructuredOperator& f) {
    if (classify(f).algebra != Algebra::preserving)
        throw WrongOperatorClass("check_preserving: operator is not multiplication preserving");
    require_same_square({&A, &B}, "check_preserving");
    SolvabilityReport rep;
    rep.condition_name = "theorem_2_2_a";
    const auto s1 = to_homog(eigenvalues(A * f(A)));
    const auto s2 = to_homog(eigenvalues(B * f(B)));
    const Gap g = spectrum_gap(s1, s2);
    rep.margin = g.margin;
    rep.holds = g.margin > kChordalTol;
    rep.marginal = near_threshold(g.margin, kChordalTol);
    if (!rep.holds) rep.details = g.collisions;
    attach_kron(rep, A, B, Matrix::Identity(A.rows(), A.rows()),
                Matrix::Identity(A.rows(), A.rows()), f);
    return rep;
}

SolvabilityReport check_reversing(const Matrix& A, const Matrix& B,
                                  const StructuredOperator& f) {
    if (classify(f).algebra != Algebra::reversing)
        throw WrongOperatorClass("check_reversing: operator is not multiplication reversing");
    require_same_square({&A, &B}, "check_reversing");
    SolvabilityReport rep;
    rep.condition_name = "theorem_2_2_b";
    const PencilSpectrum s1 = pencil_spectrum(A, f(B));
    const PencilSpectrum s2 = pencil_spectrum(B, f(A));
    if (s1.regular && s2.regular) {
        const Gap g = spectrum_gap(s1.pairs, s2.pairs);
        rep.margin = g.margin;
        rep.holds = g.margin > kChordalTol;
        rep.marginal = near_threshold(g.margin, kChordalTol);
        if (!rep.holds) rep.details = g.collisions;
    } else {
        rep.holds = false;
        rep.margin = 0.0;
    }
    attach_kron(rep, A, B, Matrix::Identity(A.rows(), A.rows()),
                Matrix::Identity(A.rows(), A.rows()), f);
    return rep;
}

std::pair<bool, std::vector<std::pair<HomogPair, HomogPair>>> reciprocal_free(
    const PencilSpectrum& spec, ScalarMapKind s) {
    std::vector<std::pair<HomogPair, HomogPair>> offending;
    const auto& p = spec.pairs;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i; j < p.size(); ++j)
            if (reciprocal_distance(p[i], p[j], s) <= kChordalTol)
                offending.emplace_back(p[i], p[j]);
    return {offending.empty(), offending};
}

SolvabilityReport check_generalized(const Matrix& A, const Matrix& D, const Matrix& E,
                                    const Matrix& B, const StructuredOperator& f) {
    require_same_square({&A, &D, &E, &B}, "check_generalized");
    SolvabilityReport rep;
    const bool preserving = classify(f).algebra == Algebra::preserving;
    rep.condition_name = preserving ? "theorem_2_4_a" : "theorem_2_4_b";

    Matrix P1d, P1e, P2d, P2e;
    if (preserving) {
        const Matrix fA = f(A), fB = f(B), fD = f(D), fE = f(E);
        if (commuting(E, fA) && commuting(B, fD)) {
            rep.used_reduced_form = true;
            P1d = fA * A;  P1e = E * fE;
            P2d = fB * B;  P2e = D * fD;
        } else {
            Matrix Z1, Z2;
            try {
                Z1 = resolvent_shift(E, fA).Z;
            } catch (const SingularPencil&) {
                throw SingularPencil("check_generalized: pencil E - lambda f(A) is singular");
            }
            try {
                Z2 = resolvent_shift(B, fD).Z;
            } catch (const SingularPencil&) {
                throw SingularPencil("check_generalized: pencil B - lambda f(D) is singular");
            }
            P1d = fA * Z1 * A;  P1e = E * Z1 * fE;
            P2d = fB * Z2 * B;  P2e = D * Z2 * fD;
        }
    } else {
        const Matrix fA = f(A), fB = f(B), fD = f(D), fE = f(E);
        if (commuting(E, fD) && commuting(B, fA)) {
            rep.used_reduced_form = true;
            P1d = fD * A;  P1e = E * fB;
            P2d = fE * B;  P2e = D * fA;
        } else {
            Matrix Z1, Z2;
            try {
                Z1 = resolvent_shift(E, fD).Z;
            } catch (const SingularPencil&) {
                throw SingularPencil("check_generalized: pencil E - lambda f(D) is singular");
            }
            try {
                Z2 = resolvent_shift(B, fA).Z;
            } catch (const SingularPencil&) {
                throw SingularPencil("check_generalized: pencil B - lambda f(A) is singular");
            }
            P1d = fD * Z1 * A;  P1e = E * Z1 * fB;
            P2d = fE * Z2 * B;  P2e = D * Z2 * fA;
        }
    }

    const PencilSpectrum s1 = pencil_spectrum(P1d, P1e);
    const PencilSpectrum s2 = pencil_spectrum(P2d, P2e);
    if (s1.regular && s2.regular) {
        const Gap g = spectrum_gap(s1.pairs, s2.pairs);
        rep.margin = g.margin;
        rep.holds = g.margin > kChordalTol;
        rep.marginal = near_threshold(g.margin, kChordalTol);
        if (!rep.holds) rep.details = g.collisions;
    } else {
        rep.holds = false;
        rep.margin = 0.0;
    }
    attach_kron(rep, A, B, D, E, f);
    return rep;
}

std::vector<Complex> triangular_kron_spectrum(const Matrix& A, const Matrix& B,
                                              const Matrix& C, const Matrix& D,
                                              const StructuredOperator& f) {
    if (f.kind != OpKind::identity && f.kind != OpKind::transpose)
        throw WrongOperatorClass("triangular_kron_spectrum: operator must be identity or transpose");
    require_same_square({&A, &B, &C, &D}, "triangular_kron_spectrum");
    const Eigen::Index m = A.rows();
    for (const Matrix* M : {&A, &B, &C, &D}) {
        const double scale = max_abs(*M);
        for (Eigen::Index i = 1; i < m; ++i)
            for (Eigen::Index j = 0; j < i; ++j)
                if (std::abs((*M)(i, j)) > 1e-12 * std::max(scale, 1.0))
                    throw NotTriangular("triangular_kron_spectrum: input is not upper triangular");
    }

    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(m * m));
    if (f.kind == OpKind::identity) {
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                out.push_back(A(i, i) * B(j, j) + C(i, i) * D(j, j));
        return out;
    }
    for (Eigen::Index i = 0; i < m; ++i) out.push_back(A(i, i) * B(i, i) + C(i, i) * D(i, i));
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) {
            // 2x2 block [[a_ii b_jj, c_ii d_jj], [c_jj d_ii, a_jj b_ii]].
            const Complex t = A(i, i) * B(j, j) + A(j, j) * B(i, i);
            const Complex det = A(i, i) * B(j, j) * A(j, j) * B(i, i) -
                                C(i, i) * D(j, j) * C(j, j) * D(i, i);
            const Complex disc = std::sqrt(t * t - 4.0 * det);
            out.push_back((t + disc) / 2.0);
            out.push_back((t - disc) / 2.0);
        }
    return out;
}

SolvabilityReport permutation_solvability(const Matrix& A, const Matrix& B,
                                          const std::vector<int>& perm, OpKind kind) {
    require_same_square({&A, &B}, "permutation_solvability");
    if (kind != OpKind::perm_similarity && kind != OpKind::perm_reversing)
        throw WrongOperatorClass("permutation_solvability: kind must be a permutation operator");
    if (static_cast<Eigen::Index>(perm.size()) != A.rows())
        throw DimensionMismatch("permutation_solvability: permutation size mismatch");
    const StructuredOperator f{kind, perm};
    const Matrix P = permutation_matrix(perm);

    SolvabilityReport rep;
    if (kind == OpKind::perm_similarity) {
        rep.condition_name = "theorem_4_4_a";
        const auto s1 = to_homog(eigenvalues(P.transpose() * A));
        const auto s2 = to_homog(eigenvalues(Matrix(-P.transpose() * B)));
        const Gap g = spectrum_gap(s1, s2);
        rep.margin = g.margin;
        rep.holds = g.margin > kChordalTol;
        rep.marginal = near_threshold(g.margin, kChordalTol);
        if (!rep.holds) rep.details = g.collisions;
    } else {
        rep.condition_name = "theorem_4_4_b";
        const PencilSpectrum spec = pencil_spectrum(P.transpose() * A, B.transpose() * P);
        if (!spec.regular) {
            rep.holds = false;
            rep.margin = 0.0;
        } else {
            const HomogPair one = make_homog(Complex(1.0, 0.0));
            PencilSpectrum rest;
            rest.regular = true;
            int mult_one = 0;
            for (const HomogPair& p : spec.pairs) {
                if (chordal_distance(p, one) <= kChordalTol)
                    ++mult_one;
                else
                    rest.pairs.push_back(p);
            }
            const auto [free, offending] = reciprocal_free(rest, ScalarMapKind::identity);
            rep.holds = mult_one <= 1 && free;
            double margin = 1.0;
            for (std::size_t i = 0; i < rest.pairs.size(); ++i)
                for (std::size_t j = i; j < rest.pairs.size(); ++j)
                    margin = std::min(margin,
                                      reciprocal_distance(rest.pairs[i], rest.pairs[j],
                                                          ScalarMapKind::identity));
            rep.margin = mult_one > 1 ? 0.0 : margin;
            rep.marginal = near_threshold(rep.margin, kChordalTol);
            rep.details = offending;
            if (mult_one > 1) rep.details.emplace_back(one, one);
        }
    }
    attach_kron(rep, A, B, Matrix::Identity(A.rows(), A.rows()),
                Matrix::Identity(A.rows(), A.rows()), f);
    return rep;
}

}  // namespace sylf
