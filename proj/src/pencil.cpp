#include "sylf/pencil.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace sylf {

namespace {

constexpr double kRecurrenceGate = 1e-9;
constexpr int kNodeStart = 128;
constexpr int kNodeCap = 4096;

void require_pencil(const Matrix& D, const Matrix& E, const char* who) {
    if (D.rows() != D.cols() || E.rows() != E.cols() || D.rows() != E.rows())
        throw DimensionMismatch(std::string(who) + ": pencil matrices must be square and equal size");
}

}  // namespace

HomogPair make_homog(Complex lambda) { return make_homog(lambda, Complex(1.0, 0.0)); }

HomogPair make_homog(Complex alpha, Complex beta) {
    const double n = std::hypot(std::abs(alpha), std::abs(beta));
    if (n == 0.0) return {Complex(0, 0), Complex(0, 0)};
    return {alpha / n, beta / n};
}

HomogPair homog_infinity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

double chordal_distance(const HomogPair& p, const HomogPair& q) {
    return std::abs(p.alpha * q.beta - q.alpha * p.beta);
}

double reciprocal_distance(const HomogPair& p, const HomogPair& q, ScalarMapKind s) {
    // 1/s(p) is (s(beta) : s(alpha)); chordal distance of q from that point.
    const Complex sa = scalar_map(s, p.alpha);
    const Complex sb = scalar_map(s, p.beta);
    return std::abs(q.alpha * sa - q.beta * sb);
}

int RelCharPoly::degree() const {
    double maxc = 0.0;
    for (const Complex& c : coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0) return -1;
    int deg = -1;
    for (int j = 0; j < static_cast<int>(coeffs.size()); ++j)
        if (std::abs(coeffs[j]) > 1e-10 * maxc) deg = j;
    return deg;
}

Complex RelCharPoly::eval(Complex lambda) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

RelCharPoly relative_charpoly(const Matrix& D, const Matrix& E) {
    require_pencil(D, E, "relative_charpoly");
    const int m = static_cast<int>(D.rows());
    const double nd = D.norm(), ne = E.norm();
    const double r = (ne > 0.0) ? std::max(1.0, nd / ne) : 1.0;

    // det(D - lambda E) at m+1 scaled roots of unity, then the inverse DFT
    // recovers the coefficients: p_k = r^{-k} (1/(m+1)) sum_j w^{-jk} q_j.
    const int n = m + 1;
    std::vector<Complex> q(n);
    for (int j = 0; j < n; ++j) {
        const Complex node = std::polar(r, 2.0 * std::numbers::pi * j / n);
        q[j] = determinant(Matrix(D - node * E));
    }
    RelCharPoly p;
    p.coeffs.resize(n);
    for (int k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) acc += q[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
        p.coeffs[k] = acc / (static_cast<double>(n) * std::pow(r, k));
    }
    return p;
}

PencilSpectrum pencil_spectrum(const Matrix& D, const Matrix& E) {
    require_pencil(D, E, "pencil_spectrum");
    const int m = static_cast<int>(D.rows());
    const RelCharPoly p = relative_charpoly(D, E);

    double maxc = 0.0;
    for (const Complex& c : p.coeffs) maxc = std::max(maxc, std::abs(c));
    const double r = (E.norm() > 0.0) ? std::max(1.0, D.norm() / E.norm()) : 1.0;
    const double det_scale = std::pow(D.norm() + r * E.norm(), m);
    PencilSpectrum spec;
    if (maxc <= 1e-12 * det_scale || maxc == 0.0) {
        spec.regular = false;
        return spec;
    }
    spec.regular = true;

    const int deg = p.degree();
    if (deg > 0) {
        // Roots of the degree-deg truncation via its companion matrix.
        Matrix comp = Matrix::Zero(deg, deg);
        for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p.coeffs[i] / p.coeffs[deg];
        for (const Complex& root : eigenvalues(comp)) spec.pairs.push_back(make_homog(root));
    }
    for (int j = deg; j < m; ++j) spec.pairs.push_back(homog_infinity());
    return spec;
}

namespace {

// 0, 1, -1, 2, -2, i, -i, 3, -3, 2i, -2i, ... reals lead, imaginaries lag one.
std::vector<Complex> shift_candidates(int count) {
    std::vector<Complex> c;
    c.emplace_back(0.0, 0.0);
    int re = 1, im = 1;
    bool real_turn = true;
    while (static_cast<int>(c.size()) < count) {
        if (real_turn || re <= 2) {
            c.emplace_back(re, 0.0);
            c.emplace_back(-re, 0.0);
            ++re;
        } else {
            c.emplace_back(0.0, im);
            c.emplace_back(0.0, -im);
            ++im;
        }
        if (re > 2) real_turn = !real_turn;
    }
    c.resize(count);
    return c;
}

double pivot_ratio(const Matrix& M) {
    const double scale = max_abs(M);
    if (scale == 0.0) return 0.0;
    Eigen::FullPivLU<Matrix> lu(M);
    return lu.matrixLU().diagonal().cwiseAbs().minCoeff() / scale;
}

}  // namespace

ResolventShift resolvent_shift(const Matrix& A, const Matrix& B) {
    require_pencil(A, B, "resolvent_shift");
    const int m = static_cast<int>(A.rows());
    const auto candidates = shift_candidates(2 * m + 4);
    double best = -1.0;
    Complex best_gamma;
    for (const Complex& g : candidates) {
        const double score = pivot_ratio(A + g * B);
        if (score > best) {
            best = score;
            best_gamma = g;
        }
    }
    if (best < kPivotTol)
        throw SingularPencil("resolvent_shift: no candidate makes A + gamma B invertible");
    Matrix shifted = A + best_gamma * B;
    return {best_gamma, shifted.inverse()};
}

Matrix LaurentExpansion::at(int k) const {
    if (k > kmax)
        throw MissingCoefficient("LaurentExpansion: coefficient above computed range");
    if (k < kmin) return Matrix::Zero(m, m);
    return coeffs[static_cast<std::size_t>(k - kmin)];
}

LaurentExpansion laurent_coefficients(const Matrix& D, const Matrix& E, int kmax) {
    require_pencil(D, E, "laurent_coefficients");
    const int m = static_cast<int>(D.rows());
    if (kmax < m) throw Error("laurent_coefficients: kmax must be at least m");

    const PencilSpectrum spec = pencil_spectrum(D, E);
    if (!spec.regular) throw SingularPencil("laurent_coefficients: pencil is singular");
    double rho = 0.0;
    for (const HomogPair& p : spec.pairs)
        if (!p.infinite()) rho = std::max(rho, std::abs(p.lambda()));
    const double radius = 2.0 * (1.0 + rho);

    const int kmin = -m;
    const int ncoef = kmax - kmin + 1;
    const double denom = (D.norm() > 0.0) ? D.norm() : std::max(E.norm(), 1.0);

    int nodes = kNodeStart;
    while (nodes < 2 * (kmax + m + 8)) nodes *= 2;

    LaurentExpansion L;
    L.m = m;
    L.kmin = kmin;
    L.kmax = kmax;
    L.radius = radius;
    const Matrix I = Matrix::Identity(m, m);

    // Summands of size radius^{k+1} cancel down to coefficients of size
    // rho^k, so the whole node computation runs in extended precision.
    using LComplex = std::complex<long double>;
    using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
    const LMatrix D_l = D.cast<LComplex>();
    const LMatrix E_l = E.cast<LComplex>();
    const LMatrix I_l = LMatrix::Identity(m, m);

    for (;; nodes *= 2) {
        if (nodes > kNodeCap)
            throw QuadratureNotConverged("laurent_coefficients: residual gate unmet at node cap");
        std::vector<LMatrix> acc(static_cast<std::size_t>(ncoef), LMatrix::Zero(m, m));
        for (int n = 0; n < nodes; ++n) {
            const long double theta =
                2.0L * std::numbers::pi_v<long double> * n / nodes;
            const LComplex lambda = std::polar(static_cast<long double>(radius), theta);
            const LMatrix resolvent = LMatrix(D_l - lambda * E_l).partialPivLu().solve(I_l);
            // (1/2 pi i) contour integral of lambda^k resolvent equals the
            // average of lambda^{k+1} resolvent over the contour nodes.
            LComplex power = std::pow(lambda, kmin + 1);
            for (int k = 0; k < ncoef; ++k) {
                acc[static_cast<std::size_t>(k)] += power * resolvent;
                power *= lambda;
            }
        }
        std::vector<Matrix> U(static_cast<std::size_t>(ncoef));
        for (int k = 0; k < ncoef; ++k)
            U[static_cast<std::size_t>(k)] =
                (acc[static_cast<std::size_t>(k)] / static_cast<long double>(nodes))
                    .cast<Complex>();
        auto at = [&](int k) -> const Matrix& { return U[static_cast<std::size_t>(k - kmin)]; };
        double rec = (D * at(-1) - E * at(0) - I).norm();
        for (int k = kmin; k < kmax; ++k) {
            if (k == -1) continue;
            rec = std::max(rec, (D * at(k) - E * at(k + 1)).norm());
        }
        rec /= denom;
        if (rec < kRecurrenceGate) {
            L.coeffs = std::move(U);
            L.residual = rec;
            break;
        }
    }

    // mu = largest j <= m with ||U_{-j}|| above 1e-9 of the expansion scale
    // near the origin of the index range.
    double scale = 0.0;
    for (int k = kmin; k <= std::min(kmax, m); ++k) scale = std::max(scale, L.at(k).norm());
    L.mu = 0;
    for (int j = 1; j <= m; ++j)
        if (L.at(-j).norm() > 1e-9 * scale) L.mu = j;
    return L;
}

Matrix rel_cayley_hamilton(const RelCharPoly& p, const LaurentExpansion& L, int k) {
    const int m = p.order();
    if (m != L.m)
        throw DimensionMismatch("rel_cayley_hamilton: polynomial order does not match expansion size");
    Matrix acc = Matrix::Zero(L.m, L.m);
    for (int j = 0; j <= m; ++j) acc += p.coeffs[static_cast<std::size_t>(j)] * L.at(k + j - m);
    return acc;
}

std::vector<Matrix> t_sequence(const LaurentExpansion& U, const LaurentExpansion& V,
                               const Matrix& C, const StructuredOperator& f, int jmax) {
    if (U.m != V.m || C.rows() != U.m || C.cols() != U.m)
        throw DimensionMismatch("t_sequence: size mismatch");
    const Matrix fC = f(C);
    std::vector<Matrix> T;
    T.reserve(static_cast<std::size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j) {
        Matrix acc = Matrix::Zero(U.m, U.m);
        for (int s = -U.mu; s <= j - 1 + V.mu; ++s) acc += U.at(s) * C * V.at(j - 1 - s);
        for (int s = -U.mu; s <= j + V.mu; ++s) acc -= U.at(s) * fC * V.at(j - s);
        T.push_back(std::move(acc));
    }
    return T;
}

}  // namespace sylf
