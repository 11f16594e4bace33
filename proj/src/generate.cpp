#include "sylf/generate.hpp"

#include <cmath>
#include <numbers>

namespace sylf {

std::uint64_t Rng::next_u64() {
    // splitmix64
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Matrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = cnormal();
    return M;
}

std::vector<int> Rng::permutation(int m) {
    std::vector<int> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i) {
        const auto j = static_cast<int>(next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    }
    return p;
}

std::vector<int> Rng::involution(int m) {
    std::vector<int> p(static_cast<std::size_t>(m), -1);
    std::vector<int> free;
    for (int i = 0; i < m; ++i) free.push_back(i);
    while (!free.empty()) {
        const int i = free.front();
        free.erase(free.begin());
        if (free.empty() || (next_u64() & 1u)) {
            p[static_cast<std::size_t>(i)] = i;
        } else {
            const auto pick = static_cast<std::size_t>(next_u64() % free.size());
            const int j = free[pick];
            free.erase(free.begin() + static_cast<std::ptrdiff_t>(pick));
            p[static_cast<std::size_t>(i)] = j;
            p[static_cast<std::size_t>(j)] = i;
        }
    }
    return p;
}

InstanceKind instance_kind_from_name(const std::string& name) {
    if (name == "generic") return InstanceKind::generic;
    if (name == "condition_a") return InstanceKind::condition_a;
    if (name == "condition_b") return InstanceKind::condition_b;
    if (name == "singular") return InstanceKind::singular;
    throw ParseError("unknown instance kind '" + name + "'");
}

std::string instance_kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::generic: return "generic";
        case InstanceKind::condition_a: return "condition_a";
        case InstanceKind::condition_b: return "condition_b";
        case InstanceKind::singular: return "singular";
    }
    return "?";
}

namespace {

Matrix scaled_to_norm(Rng& rng, int m, double target) {
    const Matrix G = rng.gaussian(m, m);
    const double s = sigma_extrema(G).second;
    return s > 0.0 ? Matrix(target / s * G) : Matrix::Identity(m, m) * target;
}

/// Upper triangular with prescribed diagonal and mild strict part.
Matrix triangular_with_diagonal(Rng& rng, const std::vector<Complex>& diag) {
    const int m = static_cast<int>(diag.size());
    Matrix T = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = diag[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) T(i, j) = 0.2 * rng.cnormal();
    }
    return T;
}

Matrix mild_similarity(Rng& rng, int m) {
    return Matrix::Identity(m, m) + scaled_to_norm(rng, m, 0.4);
}

/// Random matrix with spectrum in the annulus [rmin, rmax].
Matrix annulus_spectrum_matrix(Rng& rng, int m, double rmin, double rmax) {
    std::vector<Complex> diag;
    diag.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const double r = rmin + (rmax - rmin) * rng.uniform();
        diag.push_back(std::polar(r, 2.0 * std::numbers::pi * rng.uniform()));
    }
    const Matrix Q = mild_similarity(rng, m);
    return Q * triangular_with_diagonal(rng, diag) * Q.inverse();
}

Problem singular_instance(Rng& rng, int m, const StructuredOperator& f) {
    Problem p;
    p.f = f;
    p.C = rng.gaussian(m, m);
    switch (f.kind) {
        case OpKind::identity:
        case OpKind::perm_similarity: {
            // Shared eigenvalue mu between sigma(P^T A) and sigma(-P^T B).
            const Complex mu = std::polar(1.0 + rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
            std::vector<Complex> d1{mu}, d2{-mu};
            for (int i = 1; i < m; ++i) {
                d1.push_back(std::polar(0.3 + 1.7 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()));
                d2.push_back(std::polar(0.3 + 1.7 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()));
            }
            const Matrix S1 = mild_similarity(rng, m), S2 = mild_similarity(rng, m);
            Matrix A = S1 * triangular_with_diagonal(rng, d1) * S1.inverse();
            Matrix B = S2 * triangular_with_diagonal(rng, d2) * S2.inverse();
            if (f.kind == OpKind::perm_similarity) {
                const Matrix P = f.perm_matrix();
                A = P * A;
                B = P * B;
            }
            p.A = A;
            p.B = B;
            return p;
        }
        case OpKind::conjugate:
        case OpKind::conjugate_transpose:
            // X + f(X) kills the imaginary (or skew-Hermitian) part.
            p.A = Matrix::Identity(m, m);
            p.B = Matrix::Identity(m, m);
            return p;
        case OpKind::transpose:
        case OpKind::perm_reversing: {
            // Pencil P^T A - lambda B^T P gets an exact reciprocal pair (or a
            // self-reciprocal -1 when m = 1).
            std::vector<Complex> diag;
            if (m == 1) {
                diag.push_back(Complex(-1.0, 0.0));
            } else {
                const Complex mu = std::polar(1.3 + rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
                diag.push_back(mu);
                diag.push_back(1.0 / mu);
                for (int i = 2; i < m; ++i)
                    diag.push_back(std::polar(0.3 + 0.4 * rng.uniform(),
                                              2.0 * std::numbers::pi * rng.uniform()));
            }
            const Matrix T = triangular_with_diagonal(rng, diag);
            if (f.kind == OpKind::transpose) {
                p.A = T;
                p.B = Matrix::Identity(m, m);
            } else {
                const Matrix P = f.perm_matrix();
                p.A = P * T;
                p.B = P;
            }
            return p;
        }
    }
    throw Error("singular_instance: unknown operator kind");
}

}  // namespace

Problem gen_problem(Rng& rng, int m, const StructuredOperator& f, InstanceKind kind) {
    if (m < 1 || m > kMaxEquationSize)
        throw DimensionMismatch("gen_problem: m outside 1..32");
    if (f.is_perm_kind() && static_cast<int>(f.perm.size()) != m)
        throw DimensionMismatch("gen_problem: permutation size mismatch");
    const bool preserving = classify(f).algebra == Algebra::preserving;

    Problem p;
    p.f = f;
    switch (kind) {
        case InstanceKind::generic:
            p.A = rng.gaussian(m, m);
            p.B = rng.gaussian(m, m);
            p.C = rng.gaussian(m, m);
            return p;
        case InstanceKind::condition_a: {
            if (!preserving)
                throw WrongOperatorClass("gen_problem: condition_a needs a preserving operator");
            if (!is_period2(f))
                throw WrongOperatorClass("gen_problem: condition_a needs a period-2 operator");
            // rho(A f(A)) <= ||A||^2 = 0.09 while |sigma(B f(B))| >= sigma_min(B)^2 >= 2.25.
            p.A = scaled_to_norm(rng, m, 0.3);
            p.B = 2.0 * (Matrix::Identity(m, m) + scaled_to_norm(rng, m, 0.25));
            p.C = rng.gaussian(m, m);
            return p;
        }
        case InstanceKind::condition_b: {
            if (preserving)
                throw WrongOperatorClass("gen_problem: condition_b needs a reversing operator");
            if (!is_period2(f))
                throw WrongOperatorClass("gen_problem: condition_b needs a period-2 operator");
            // A = M0 f(B) puts sigma(A - l f(B)) = sigma(M0) inside the unit
            // circle, hence sigma(B - l f(A)) lands on the reciprocals outside.
            p.B = Matrix::Identity(m, m) + scaled_to_norm(rng, m, 0.3);
            const Matrix M0 = annulus_spectrum_matrix(rng, m, 0.25, 0.7);
            p.A = M0 * f(p.B);
            p.C = rng.gaussian(m, m);
            return p;
        }
        case InstanceKind::singular:
            return singular_instance(rng, m, f);
    }
    throw Error("gen_problem: unknown instance kind");
}

PalindromicQEP gen_palindromic(Rng& rng, int m, const StructuredOperator& f) {
    const Matrix A2 = rng.gaussian(m, m);
    const Matrix G = rng.gaussian(m, m);
    const Matrix A1 = G + f(G);
    return make_qep(A2, A1, f);
}

PalindromicQEP gen_palindromic_separated(Rng& rng, int m, const StructuredOperator& f,
                                         int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        PalindromicQEP q = gen_palindromic(rng, m, f);
        const Matrix Z = assemble_z(build_z(q));
        const Matrix FZ = big_f(f, Z);
        const PencilSpectrum spec = pencil_spectrum(Z, Matrix(-FZ));
        if (!spec.regular) continue;
        bool ok = true;
        std::vector<HomogPair> outer;
        for (const HomogPair& e : spec.pairs) {
            if (e.infinite()) {
                ok = false;  // keep both halves finite
                break;
            }
            const double mod = std::abs(e.lambda());
            if (std::abs(std::log(std::max(mod, 1e-12))) < 0.05) {
                ok = false;  // too close to the unit circle
                break;
            }
            if (mod > 1.0) outer.push_back(e);
        }
        if (!ok || static_cast<int>(outer.size()) != m) continue;
        for (std::size_t i = 0; ok && i < outer.size(); ++i)
            for (std::size_t j = i + 1; ok && j < outer.size(); ++j)
                if (chordal_distance(outer[i], outer[j]) < 0.05) ok = false;
        if (ok) return q;
    }
    throw Error("gen_palindromic_separated: no well-separated instance found");
}

}  // namespace sylf
