// Problem files.
//
//   # comment
//   goal:           one formula per line (the set X)
//   assume:         one formula per line (global assumptions / TBox)
//   abox:           "a : formula" or "sigma(a,b)" per line
//
// A file is either a formula problem (goal + assume) or an ABox problem
// (abox + assume), never both.

#ifndef PDL_PROBLEM_HPP
#define PDL_PROBLEM_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pdl/errors.hpp"
#include "pdl/formula.hpp"

namespace pdl {

struct ProblemFile {
  std::vector<Formula> formulas;
  std::vector<Formula> assumptions;
  std::vector<Assertion> assertions;

  bool is_abox() const { return !assertions.empty(); }
};

// Throws ParseError (with file, line and column) on malformed input.
ProblemFile parse_problem(std::string_view text, const std::string& file = {});
ProblemFile load_problem(const std::filesystem::path& path);

}  // namespace pdl

#endif  // PDL_PROBLEM_HPP
