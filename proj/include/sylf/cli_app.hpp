#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sylf {

// Exit codes shared by the subcommands:
//   0 success / condition holds
//   1 parse, dimension, or internal errors
//   2 analyze: condition fails but the equation is still uniquely solvable
//   3 not uniquely solvable
//   4 solve: residual gate failed
//   5 qep: Newton did not converge
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sylf
