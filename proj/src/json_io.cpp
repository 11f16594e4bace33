#include "sylf/json_io.hpp"

#include <cmath>

namespace sylf {

namespace {

std::vector<std::vector<double>> grid_from_json(const Json& j, Eigen::Index rows,
                                                Eigen::Index cols, const char* key) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw ParseError(std::string("matrix '") + key + "': expected " +
                         std::to_string(rows) + " rows");
    std::vector<std::vector<double>> out;
    out.reserve(j.size());
    for (const Json& row : j) {
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError(std::string("matrix '") + key + "': ragged or missized row");
        std::vector<double> r;
        r.reserve(row.size());
        for (const Json& v : row) {
            if (!v.is_number()) throw ParseError(std::string("matrix '") + key + "': non-numeric entry");
            r.push_back(v.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re"))
        throw ParseError("matrix: object with rows, cols, re expected");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 0 || cols < 0) throw ParseError("matrix: negative dimension");
    const auto re = grid_from_json(j.at("re"), rows, cols, "re");
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = Complex(re[i][k], 0.0);
    if (j.contains("im")) {
        const auto im = grid_from_json(j.at("im"), rows, cols, "im");
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index k = 0; k < cols; ++k) M(i, k).imag(im[i][k]);
    }
    if (!all_finite(M)) throw ParseError("matrix: entries must be finite");
    return M;
}

Json matrix_to_json(const Matrix& M) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json rr = Json::array(), ri = Json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) {
            rr.push_back(M(i, k).real());
            ri.push_back(M(i, k).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return Json{{"rows", M.rows()}, {"cols", M.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

StructuredOperator operator_from_json(const Json& j, Eigen::Index m) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("operator: object with kind expected");
    const std::string kind = j.at("kind").get<std::string>();
    StructuredOperator f;
    if (kind == "identity") f.kind = OpKind::identity;
    else if (kind == "transpose") f.kind = OpKind::transpose;
    else if (kind == "conjugate") f.kind = OpKind::conjugate;
    else if (kind == "conjugate_transpose") f.kind = OpKind::conjugate_transpose;
    else if (kind == "perm_similarity") f.kind = OpKind::perm_similarity;
    else if (kind == "perm_reversing") f.kind = OpKind::perm_reversing;
    else throw ParseError("operator: unknown kind '" + kind + "'");

    if (!f.is_perm_kind()) return f;
    if (j.contains("perm")) {
        for (const Json& v : j.at("perm")) {
            if (!v.is_number_integer()) throw ParseError("operator: perm entries must be integers");
            f.perm.push_back(v.get<int>() - 1);  // wire format is 1-based
        }
    } else if (j.contains("perm_index")) {
        f.perm = index_to_permutation(j.at("perm_index").get<std::uint64_t>(),
                                      static_cast<int>(m));
    } else {
        throw ParseError("operator: perm kinds need 'perm' or 'perm_index'");
    }
    validate_permutation(f.perm);
    if (static_cast<Eigen::Index>(f.perm.size()) != m)
        throw ParseError("operator: permutation size does not match matrix size");
    return f;
}

Json operator_to_json(const StructuredOperator& f) {
    Json j{{"kind", kind_name(f.kind)}};
    if (f.is_perm_kind()) {
        Json perm = Json::array();
        for (int p : f.perm) perm.push_back(p + 1);
        j["perm"] = std::move(perm);
    }
    return j;
}

Problem problem_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("problem: object expected");
    for (const char* key : {"A", "B", "C", "operator"})
        if (!j.contains(key)) throw ParseError(std::string("problem: missing '") + key + "'");
    Problem p;
    p.A = matrix_from_json(j.at("A"));
    p.B = matrix_from_json(j.at("B"));
    p.C = matrix_from_json(j.at("C"));
    if (j.contains("D")) p.D = matrix_from_json(j.at("D"));
    if (j.contains("E")) p.E = matrix_from_json(j.at("E"));
    p.f = operator_from_json(j.at("operator"), p.A.rows());

    const Eigen::Index m = p.A.rows();
    auto square = [m](const Matrix& M) { return M.rows() == m && M.cols() == m; };
    if (p.A.rows() != p.A.cols() || !square(p.B) || !square(p.C) ||
        (p.D && !square(*p.D)) || (p.E && !square(*p.E)))
        throw ParseError("problem: matrices must be square and share one size");
    return p;
}

Json problem_to_json(const Problem& p) {
    Json j{{"A", matrix_to_json(p.A)},
           {"B", matrix_to_json(p.B)},
           {"C", matrix_to_json(p.C)},
           {"operator", operator_to_json(p.f)}};
    if (p.D) j["D"] = matrix_to_json(*p.D);
    if (p.E) j["E"] = matrix_to_json(*p.E);
    return j;
}

Json homog_to_json(const HomogPair& p) {
    Json j{{"alpha", {p.alpha.real(), p.alpha.imag()}},
           {"beta", {p.beta.real(), p.beta.imag()}}};
    if (p.infinite())
        j["lambda"] = "inf";
    else {
        const Complex l = p.lambda();
        j["lambda"] = {l.real(), l.imag()};
    }
    return j;
}

Json solvability_to_json(const SolvabilityReport& rep) {
    Json details = Json::array();
    for (const auto& [p, q] : rep.details)
        details.push_back(Json{{"first", homog_to_json(p)}, {"second", homog_to_json(q)}});
    Json j{{"condition_name", rep.condition_name},
           {"holds", rep.holds},
           {"margin", rep.margin},
           {"kron_nonsingular", rep.kron_nonsingular},
           {"sigma_min", rep.sigma_min},
           {"marginal", rep.marginal},
           {"details", std::move(details)}};
    if (rep.used_reduced_form) j["used_reduced_form"] = true;
    return j;
}

Json solve_report_to_json(const SolveReport& rep) {
    Json j{{"X", matrix_to_json(rep.X)},
           {"method", method_name(rep.method)},
           {"residual", rep.residual},
           {"sigma_min", rep.sigma_min},
           {"warnings", rep.warnings}};
    if (rep.solvability) j["solvability"] = solvability_to_json(*rep.solvability);
    return j;
}

Json laurent_to_json(const LaurentExpansion& L) {
    Json coeffs = Json::array();
    for (int k = -L.mu; k <= L.kmax; ++k)
        coeffs.push_back(Json{{"k", k}, {"U", matrix_to_json(L.at(k))}});
    return Json{{"mu", L.mu},
                {"radius", L.radius},
                {"residual", L.residual},
                {"coefficients", std::move(coeffs)}};
}

Json newton_trace_to_json(const NewtonTrace& t) {
    Json iters = Json::array();
    for (const NewtonStep& s : t.iterates)
        iters.push_back(Json{{"k", s.k},
                             {"residual_norm", s.residual_norm},
                             {"step_norm", s.step_norm}});
    return Json{{"converged", t.converged},
                {"iterates", std::move(iters)},
                {"X", matrix_to_json(t.X)}};
}

Json pairing_to_json(const PairingReport& rep) {
    Json pairs = Json::array();
    for (const auto& [p, q] : rep.pairs)
        pairs.push_back(Json{{"first", homog_to_json(p)}, {"second", homog_to_json(q)}});
    Json unmatched = Json::array();
    for (const HomogPair& p : rep.unmatched) unmatched.push_back(homog_to_json(p));
    return Json{{"pairs", std::move(pairs)},
                {"unmatched", std::move(unmatched)},
                {"all_paired", rep.all_paired}};
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace sylf
