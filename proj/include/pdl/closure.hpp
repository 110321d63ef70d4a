// Fischer–Ladner closure of NNF formula sets.

#ifndef PDL_CLOSURE_HPP
#define PDL_CLOSURE_HPP

#include <cstddef>
#include <span>

#include "pdl/formula.hpp"

namespace pdl {

// The least superset of X closed under the Fischer–Ladner equations
// (including the box/diamond unfoldings of composite programs). All members
// of X must be in NNF.
FormulaSet fl_closure(std::span<const Formula> formulas);

// size(X): total number of symbols of the members plus |X| - 1 separators.
std::size_t size_of(std::span<const Formula> formulas);

}  // namespace pdl

#endif  // PDL_CLOSURE_HPP
