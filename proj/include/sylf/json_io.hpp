#pragma once

#include <json.hpp>

#include "sylf/palindromic.hpp"
#include "sylf/solvers.hpp"

namespace sylf {

using Json = nlohmann::json;

// Matrix wire schema:
//   {"rows": r, "cols": c, "re": [[row-major reals]], "im": [[...]] (optional)}
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& M);

// Operator wire schema:
//   {"kind": "...", "perm": [1-based ints] | "perm_index": int}
// m is the operand size, needed to expand perm_index.
StructuredOperator operator_from_json(const Json& j, Eigen::Index m);
Json operator_to_json(const StructuredOperator& f);

// Problem file: {"A":.., "B":.., "C":.., "D":..?, "E":..?, "operator":..}
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& p);

Json homog_to_json(const HomogPair& p);
Json solvability_to_json(const SolvabilityReport& rep);
Json solve_report_to_json(const SolveReport& rep);
Json laurent_to_json(const LaurentExpansion& L);
Json newton_trace_to_json(const NewtonTrace& t);
Json pairing_to_json(const PairingReport& rep);

/// Parses text as JSON, mapping failures to ParseError.
Json parse_json_text(const std::string& text);

}  // namespace sylf
