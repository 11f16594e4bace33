#include "sylf/cli_app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sylf/generate.hpp"
#include "sylf/json_io.hpp"

namespace sylf {

namespace {

struct GlobalOpts {
    double tol = kVerifyTol;
    std::uint64_t seed = 0;
    std::string output;  // empty = stdout
};

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

void emit(const GlobalOpts& g, std::ostream& out, const Json& j) {
    if (g.output.empty()) {
        out << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(g.output);
    if (!f) throw Error("cannot write '" + g.output + "'");
    f << j.dump(2) << "\n";
}

SolvabilityReport analyze_problem(const Problem& p) {
    if (p.generalized())
        return check_generalized(p.A, p.coeff_d(), p.coeff_e(), p.B, p.f);
    if (p.f.is_perm_kind())
        return permutation_solvability(p.A, p.B, p.f.perm, p.f.kind);
    return classify(p.f).algebra == Algebra::preserving ? check_preserving(p.A, p.B, p.f)
                                                        : check_reversing(p.A, p.B, p.f);
}

int cmd_analyze(const GlobalOpts& g, const std::string& file, std::ostream& out) {
    const Problem p = problem_from_json(load_json_file(file));
    const SolvabilityReport rep = analyze_problem(p);
    emit(g, out, solvability_to_json(rep));
    if (rep.holds) return 0;
    return rep.kron_nonsingular ? 2 : 3;
}

MethodChoice method_from_name(const std::string& name) {
    if (name == "auto") return MethodChoice::auto_dispatch;
    if (name == "kron") return MethodChoice::kron;
    if (name == "reduction") return MethodChoice::reduction;
    if (name == "closed-form") return MethodChoice::closed_form;
    throw ParseError("unknown method '" + name + "'");
}

int cmd_solve(const GlobalOpts& g, const std::string& file, const std::string& method,
              std::ostream& out, std::ostream& err) {
    const Problem p = problem_from_json(load_json_file(file));
    try {
        const SolveReport rep = solve(p, method_from_name(method), g.tol);
        emit(g, out, solve_report_to_json(rep));
        return 0;
    } catch (const NotUniquelySolvable& e) {
        err << "error: " << e.what() << " (sigma_min = " << e.sigma_min << ")\n";
        return 3;
    } catch (const ResidualCheckFailed& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int cmd_gen(const GlobalOpts& g, int m, const std::string& kind_name,
            const std::string& op_name, std::uint64_t perm_index, std::ostream& out) {
    Rng rng(g.seed);
    Json op_json{{"kind", op_name}};
    if (op_name == "perm_similarity" || op_name == "perm_reversing") {
        if (perm_index > 0) {
            Json perm = Json::array();
            for (int v : index_to_permutation(perm_index, m)) perm.push_back(v + 1);
            op_json["perm"] = std::move(perm);
        } else {
            Json perm = Json::array();
            for (int v : rng.involution(m)) perm.push_back(v + 1);
            op_json["perm"] = std::move(perm);
        }
    }
    const StructuredOperator f = operator_from_json(op_json, m);
    const Problem p = gen_problem(rng, m, f, instance_kind_from_name(kind_name));
    Json j = problem_to_json(p);
    j["seed"] = g.seed;  // logged for replay
    emit(g, out, j);
    return 0;
}

int cmd_laurent(const GlobalOpts& g, const std::string& file, int kmax, std::ostream& out) {
    const Json j = load_json_file(file);
    if (!j.contains("D") || !j.contains("E"))
        throw ParseError("laurent: file needs matrices 'D' and 'E'");
    const Matrix D = matrix_from_json(j.at("D"));
    const Matrix E = matrix_from_json(j.at("E"));
    if (kmax < static_cast<int>(D.rows())) kmax = static_cast<int>(D.rows());
    const LaurentExpansion L = laurent_coefficients(D, E, kmax);
    emit(g, out, laurent_to_json(L));
    return 0;
}

int cmd_qep(const GlobalOpts& g, const std::string& file, std::ostream& out, std::ostream& err) {
    const Json j = load_json_file(file);
    if (!j.contains("A2") || !j.contains("A1") || !j.contains("operator"))
        throw ParseError("qep: file needs 'A2', 'A1', 'operator'");
    const Matrix A2 = matrix_from_json(j.at("A2"));
    const Matrix A1 = matrix_from_json(j.at("A1"));
    const StructuredOperator f = operator_from_json(j.at("operator"), A2.rows());
    const double tol = j.contains("tol") ? j.at("tol").get<double>() : g.tol;
    const int maxit = j.contains("maxit") ? j.at("maxit").get<int>() : 50;
    const Matrix X0 = j.contains("x0") ? matrix_from_json(j.at("x0"))
                                       : Matrix(Matrix::Zero(A2.rows(), A2.cols()));

    const PalindromicQEP qep = make_qep(A2, A1, f);
    const RiccatiBlocks blocks = build_z(qep);
    const NewtonTrace trace = newton_riccati(blocks, f, X0, tol, maxit);
    if (!trace.converged) {
        Json rep{{"newton_trace", newton_trace_to_json(trace)}};
        emit(g, out, rep);
        err << "error: Newton iteration did not converge\n";
        return 5;
    }
    const QepEigenvalues eigs = qep_eigs_from_riccati(blocks, f, trace.X);
    std::vector<HomogPair> all = eigs.primary;
    all.insert(all.end(), eigs.reciprocal.begin(), eigs.reciprocal.end());
    const PairingReport pairing = check_pairing(all, classify(f).scalar_map_kind);

    Json eig_json = Json::array();
    for (const HomogPair& e : all) eig_json.push_back(homog_to_json(e));
    Json rep{{"eigenvalues", std::move(eig_json)},
             {"pairs", pairing_to_json(pairing)},
             {"newton_trace", newton_trace_to_json(trace)},
             {"residuals",
              Json{{"riccati", riccati_residual(trace.X, blocks, f).norm()}}}};
    emit(g, out, rep);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structured Sylvester equation toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--tol", g.tol, "verification tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--output", g.output, "write the report to a file instead of stdout");

    std::string file, method = "auto", kind = "generic", op_name = "identity";
    int m = 2, kmax = 0;
    std::uint64_t perm_index = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "solvability analysis of a problem file");
    analyze->add_option("file", file, "problem JSON")->required();

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem file");
    solve_cmd->add_option("file", file, "problem JSON")->required();
    solve_cmd->add_option("--method", method, "auto|kron|reduction|closed-form");

    CLI::App* gen = app.add_subcommand("gen", "generate a seeded random problem");
    gen->add_option("--m", m, "matrix size")->check(CLI::Range(1, kMaxEquationSize));
    gen->add_option("--kind", kind, "generic|condition_a|condition_b|singular");
    gen->add_option("--operator", op_name, "operator kind");
    gen->add_option("--perm-index", perm_index, "lexicographic permutation index (1-based)");

    CLI::App* laurent = app.add_subcommand("laurent", "Laurent expansion of a regular pencil");
    laurent->add_option("file", file, "pencil JSON with D and E")->required();
    laurent->add_option("--kmax", kmax, "highest coefficient index");

    CLI::App* qep = app.add_subcommand("qep", "palindromic QEP via the f-Riccati Newton iteration");
    qep->add_option("file", file, "QEP JSON with A2, A1, operator")->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.get_name() << ": " << e.what() << "\n";
        return 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(g, file, out);
        if (solve_cmd->parsed()) return cmd_solve(g, file, method, out, err);
        if (gen->parsed()) return cmd_gen(g, m, kind, op_name, perm_index, out);
        if (laurent->parsed()) return cmd_laurent(g, file, kmax, out);
        if (qep->parsed()) return cmd_qep(g, file, out, err);
    } catch (const NotUniquelySolvable& e) {
        err << "error: " << e.what() << " (sigma_min = " << e.sigma_min << ")\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace sylf
