// Negation normal form.
//
// A formula is in NNF when "->" does not occur, "~" occurs only directly in
// front of propositions, and every test condition inside a program is itself
// in NNF.

#ifndef PDL_NORMAL_FORM_HPP
#define PDL_NORMAL_FORM_HPP

#include "pdl/formula.hpp"

namespace pdl {

bool is_nnf(Formula f);
bool is_nnf(Program p);

// An equivalent formula in NNF.
Formula to_nnf(Formula f);
Program to_nnf(Program p);

// The NNF of ~f, written f̄. Requires is_nnf(f); throws std::invalid_argument
// otherwise. An involution on NNF formulas.
Formula negate_nnf(Formula f);

}  // namespace pdl

#endif  // PDL_NORMAL_FORM_HPP
