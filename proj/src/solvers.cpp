#include "sylf/solvers.hpp"

#include <cmath>

namespace sylf {

namespace {

void require_problem(const Problem& p) {
    const Eigen::Index m = p.A.rows();
    auto bad = [m](const Matrix& M) { return M.rows() != m || M.cols() != m; };
    if (p.A.rows() != p.A.cols() || bad(p.B) || bad(p.C))
        throw DimensionMismatch("problem: A, B, C must be square and equal size");
    if (p.D && bad(*p.D)) throw DimensionMismatch("problem: D size mismatch");
    if (p.E && bad(*p.E)) throw DimensionMismatch("problem: E size mismatch");
    if (p.f.is_perm_kind() && static_cast<Eigen::Index>(p.f.perm.size()) != m)
        throw DimensionMismatch("problem: permutation size mismatch");
    if (m > kMaxEquationSize)
        throw DimensionMismatch("problem: equation size above the desk-scale cap");
}

/// sigma_min gate shared by the vectorized subsolves.
Vector gated_solve(const RealLinearMap& map, const Vector& rhs, double* sigma_min_out) {
    const auto [smin, smax] = map.sigma_extrema();
    if (sigma_min_out) *sigma_min_out = smin;
    if (smax == 0.0 || smin <= kKronTol * smax)
        throw NotUniquelySolvable("vectorized map is rank deficient", smin);
    return map.solve(rhs);
}

}  // namespace

bool Problem::generalized() const {
    const Matrix I = Matrix::Identity(size(), size());
    const bool d_trivial = !D || (*D - I).norm() == 0.0;
    const bool e_trivial = !E || (*E - I).norm() == 0.0;
    return !(d_trivial && e_trivial);
}

Matrix Problem::coeff_d() const { return D ? *D : Matrix::Identity(size(), size()); }
Matrix Problem::coeff_e() const { return E ? *E : Matrix::Identity(size(), size()); }

std::string method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::kron: return "kron";
        case SolveMethod::reduction: return "reduction";
        case SolveMethod::closed_form_preserving: return "closed_form_preserving";
        case SolveMethod::closed_form_reversing: return "closed_form_reversing";
    }
    return "?";
}

double equation_residual(const Problem& p, const Matrix& X) {
    const Matrix D = p.coeff_d(), E = p.coeff_e();
    const double num = (p.A * X * D + E * p.f(X) * p.B - p.C).norm();
    const double den = p.A.norm() * X.norm() * D.norm() +
                       E.norm() * X.norm() * p.B.norm() + p.C.norm() + 1.0;
    return num / den;
}

SolveReport solve_kron(const Problem& p) {
    require_problem(p);
    const RealLinearMap map = kron_operator(p.A, p.B, p.coeff_d(), p.coeff_e(), p.f);
    SolveReport rep;
    rep.method = SolveMethod::kron;
    const Vector x = gated_solve(map, vec(p.C), &rep.sigma_min);
    rep.X = unvec(x, p.size(), p.size());
    rep.residual = equation_residual(p, rep.X);
    return rep;
}

SolveReport reduce_preserving(const Problem& p, double tol) {
    require_problem(p);
    if (classify(p.f).algebra != Algebra::preserving)
        throw WrongOperatorClass("reduce_preserving: operator is not multiplication preserving");
    if (!is_period2(p.f))
        throw WrongOperatorClass("reduce_preserving: permutation operator is not period-2");
    if (p.generalized())
        throw Error("reduce_preserving: generalized problems route to solve_kron");
    const Matrix fA = p.f(p.A), fB = p.f(p.B), fC = p.f(p.C);
    const Matrix cal_a = fA * p.A;
    const Matrix cal_b = fB * p.B;
    const Matrix cal_c = fC * p.B - fA * p.C;

    // X cal_b - cal_a X = cal_c, vectorized.  The reduced equation is only a
    // necessary consequence of the original one, so the candidate must be
    // verified against it afterwards.
    const Eigen::Index m = p.size();
    const Matrix I = Matrix::Identity(m, m);
    const Matrix sylvester = kron(cal_b.transpose(), I) - kron(I, cal_a);
    SolveReport rep;
    rep.method = SolveMethod::reduction;
    const Vector x = gated_solve(RealLinearMap::complex_map(sylvester), vec(cal_c), &rep.sigma_min);
    rep.X = unvec(x, m, m);
    rep.residual = equation_residual(p, rep.X);
    if (rep.residual > tol)
        throw ResidualCheckFailed("reduce_preserving: candidate fails the original equation");
    return rep;
}

SolveReport reduce_reversing(const Problem& p, double tol) {
    require_problem(p);
    if (classify(p.f).algebra != Algebra::reversing)
        throw WrongOperatorClass("reduce_reversing: operator is not multiplication reversing");
    if (!is_period2(p.f))
        throw WrongOperatorClass("reduce_reversing: permutation operator is not period-2");
    if (p.generalized())
        throw Error("reduce_reversing: generalized problems route to solve_kron");
    const Matrix fA = p.f(p.A), fB = p.f(p.B), fC = p.f(p.C);
    const ResolventShift shift = resolvent_shift(p.B, fA);  // Z = (B + l0 f(A))^{-1}
    const Matrix right1 = shift.Z * fA;
    const Matrix right2 = shift.Z * p.B;
    const Matrix rhs = p.C * right1 - fC * right2;

    // A X (Z f(A)) - f(B) X (Z B) = rhs, vectorized.
    const Matrix sylvester =
        kron(right1.transpose(), p.A) - kron(right2.transpose(), fB);
    SolveReport rep;
    rep.method = SolveMethod::reduction;
    const Vector x = gated_solve(RealLinearMap::complex_map(sylvester), vec(rhs), &rep.sigma_min);
    rep.X = unvec(x, p.size(), p.size());
    rep.residual = equation_residual(p, rep.X);
    if (rep.residual > tol)
        throw ResidualCheckFailed("reduce_reversing: candidate fails the original equation");
    return rep;
}

SolveReport closed_form_preserving(const Problem& p, PreservingVariant variant, double tol) {
    require_problem(p);
    if (classify(p.f).algebra != Algebra::preserving)
        throw WrongOperatorClass("closed_form_preserving: operator is not multiplication preserving");
    if (!is_period2(p.f))
        throw WrongOperatorClass("closed_form_preserving: permutation operator is not period-2");
    if (p.generalized())
        throw Error("closed_form_preserving: generalized problems route to solve_kron");
    const Matrix fA = p.f(p.A), fB = p.f(p.B), fC = p.f(p.C);
    const Matrix cal_a = fA * p.A;
    const Matrix cal_b = fB * p.B;
    const Matrix cal_c = fC * p.B - fA * p.C;
    const Eigen::Index m = p.size();

    // Characteristic polynomial det(lambda I - cal) of the chosen side.
    const Matrix& lead = (variant == PreservingVariant::chA) ? cal_a : cal_b;
    RelCharPoly ch = relative_charpoly(lead, Matrix::Identity(m, m));
    // det(lead - lambda I) = (-1)^m det(lambda I - lead).
    if (m % 2 == 1)
        for (Complex& c : ch.coeffs) c = -c;

    // sum_i p_i sum_{k=0}^{i-1} cal_a^k cal_c cal_b^{i-k-1}
    std::vector<Matrix> apow(static_cast<std::size_t>(m) + 1), bpow(static_cast<std::size_t>(m) + 1);
    apow[0] = Matrix::Identity(m, m);
    bpow[0] = Matrix::Identity(m, m);
    for (Eigen::Index i = 1; i <= m; ++i) {
        apow[static_cast<std::size_t>(i)] = apow[static_cast<std::size_t>(i - 1)] * cal_a;
        bpow[static_cast<std::size_t>(i)] = bpow[static_cast<std::size_t>(i - 1)] * cal_b;
    }
    Matrix num = Matrix::Zero(m, m);
    for (Eigen::Index i = 1; i <= m; ++i)
        for (Eigen::Index k = 0; k <= i - 1; ++k)
            num += ch.coeffs[static_cast<std::size_t>(i)] * apow[static_cast<std::size_t>(k)] *
                   cal_c * bpow[static_cast<std::size_t>(i - 1 - k)];

    // Evaluate ch at the other side's matrix.
    Matrix ch_at = Matrix::Zero(m, m);
    for (Eigen::Index j = 0; j <= m; ++j)
        ch_at += ch.coeffs[static_cast<std::size_t>(j)] * ((variant == PreservingVariant::chA)
                                                               ? bpow[static_cast<std::size_t>(j)]
                                                               : apow[static_cast<std::size_t>(j)]);
    const auto [smin, smax] = sigma_extrema(ch_at);
    if (smax == 0.0 || smin <= kKronTol * smax)
        throw SingularClosedFormMatrix("closed_form_preserving: ch matrix is rank deficient");

    SolveReport rep;
    rep.method = SolveMethod::closed_form_preserving;
    rep.sigma_min = smin;
    if (variant == PreservingVariant::chA) {
        // X = num * ch_A(cal_b)^{-1}, solved as ch^T X^T = num^T.
        rep.X = solve_linear(ch_at.transpose(), num.transpose()).transpose();
    } else {
        rep.X = -solve_linear(ch_at, num);
    }
    rep.residual = equation_residual(p, rep.X);
    if (rep.residual > tol)
        throw ResidualCheckFailed("closed_form_preserving: candidate fails the original equation");
    return rep;
}

ReversingClosedForm reversing_closed_form_detail(const Matrix& A, const Matrix& B,
                                                 const Matrix& C, const StructuredOperator& f) {
    const int m = static_cast<int>(A.rows());
    const Matrix fA = f(A), fB = f(B);
    ReversingClosedForm d;
    d.U = laurent_coefficients(A, fB, 2 * m);
    d.V = laurent_coefficients(B, fA, 2 * m);
    d.p = relative_charpoly(B, fA);
    d.T = t_sequence(d.U, d.V, C, f, m);

    d.M = rel_cayley_hamilton(d.p, d.U, m);
    // Internal gate: the V-side combination vanishes by the relative
    // Cayley-Hamilton identity; failure means the expansions are inaccurate.
    const Matrix vm = rel_cayley_hamilton(d.p, d.V, m);
    double pscale = 0.0;
    for (const Complex& c : d.p.coeffs) pscale = std::max(pscale, std::abs(c));
    double vscale = 0.0;
    for (int k = 0; k <= m; ++k) vscale = std::max(vscale, d.V.at(k).norm());
    if (vm.norm() > 1e-6 * std::max(pscale * vscale, 1e-300))
        throw QuadratureNotConverged("closed_form_reversing: ch_{B,f(A)}(V_m) gate failed");

    const auto [smin, smax] = sigma_extrema(d.M);
    if (smax == 0.0 || smin <= kKronTol * smax)
        throw SingularClosedFormMatrix("closed_form_reversing: ch_{B,f(A)}(U_m) is rank deficient");

    d.S = Matrix::Zero(m, m);
    for (int j = 0; j <= m; ++j) d.S += d.p.coeffs[static_cast<std::size_t>(j)] * d.T[static_cast<std::size_t>(j)];
    // M f(X) = S from the coefficient comparison, so X = f(M^{-1} S).
    d.X = f(solve_linear(d.M, d.S));
    return d;
}

SolveReport closed_form_reversing(const Problem& p, double tol) {
    require_problem(p);
    if (classify(p.f).algebra != Algebra::reversing)
        throw WrongOperatorClass("closed_form_reversing: operator is not multiplication reversing");
    if (!is_period2(p.f))
        throw WrongOperatorClass("closed_form_reversing: permutation operator is not period-2");
    if (p.generalized())
        throw Error("closed_form_reversing: generalized problems route to solve_kron");

    SolveReport rep;
    rep.method = SolveMethod::closed_form_reversing;
    try {
        const ReversingClosedForm d = reversing_closed_form_detail(p.A, p.B, p.C, p.f);
        rep.X = d.X;
        rep.sigma_min = sigma_extrema(d.M).first;
    } catch (const SingularClosedFormMatrix&) {
        // Equivalent equation f(B) X + f(X) f(A) = f(C) has the same solution
        // set; its route works when A (rather than f(B)) is invertible.
        try {
            const ReversingClosedForm d = reversing_closed_form_detail(
                p.f(p.B), p.f(p.A), p.f(p.C), p.f);
            rep.X = d.X;
            rep.sigma_min = sigma_extrema(d.M).first;
            rep.warnings.push_back("closed form used the equivalent-equation route");
        } catch (const SingularClosedFormMatrix&) {
            SolveReport kr = solve_kron(p);
            kr.warnings.push_back(
                "closed form unavailable (both ch matrices rank deficient); solved by kron");
            return kr;
        }
    }
    rep.residual = equation_residual(p, rep.X);
    if (rep.residual > tol)
        throw ResidualCheckFailed("closed_form_reversing: candidate fails the original equation");
    return rep;
}

SolveReport solve(const Problem& p, MethodChoice method, double tol) {
    require_problem(p);
    const OperatorClass cls = classify(p.f);
    const bool preserving = cls.algebra == Algebra::preserving;

    SolveReport rep;
    if (p.generalized()) {
        rep = solve_kron(p);  // generalized instances route to kron
        if (method == MethodChoice::reduction || method == MethodChoice::closed_form)
            rep.warnings.push_back("generalized problem: requested method replaced by kron");
        rep.solvability = check_generalized(p.A, p.coeff_d(), p.coeff_e(), p.B, p.f);
        return rep;
    }

    switch (method) {
        case MethodChoice::kron:
            rep = solve_kron(p);
            break;
        case MethodChoice::reduction:
            rep = preserving ? reduce_preserving(p, tol) : reduce_reversing(p, tol);
            break;
        case MethodChoice::closed_form:
            rep = preserving ? closed_form_preserving(p, PreservingVariant::chA, tol)
                             : closed_form_reversing(p, tol);
            break;
        case MethodChoice::auto_dispatch:
            try {
                rep = preserving ? reduce_preserving(p, tol) : reduce_reversing(p, tol);
            } catch (const NotUniquelySolvable&) {
                rep = solve_kron(p);
                rep.warnings.push_back("reduction unavailable; fell back to kron");
            } catch (const ResidualCheckFailed&) {
                rep = solve_kron(p);
                rep.warnings.push_back("reduction failed verification; fell back to kron");
            } catch (const SingularPencil&) {
                rep = solve_kron(p);
                rep.warnings.push_back("reduction pencil singular; fell back to kron");
            }
            break;
    }
    rep.solvability = preserving ? check_preserving(p.A, p.B, p.f)
                                 : check_reversing(p.A, p.B, p.f);
    rep.residual = equation_residual(p, rep.X);
    return rep;
}

}  // namespace sylf
