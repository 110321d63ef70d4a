// Concrete text syntax for formulas and programs.
//
//   formula := true | false | IDENT | ~formula | formula & formula
//            | formula "|" formula | formula -> formula
//            | <program> formula | [program] formula | (formula)
//   program := IDENT | program ; program | program + program | program*
//            | formula ? | (program)
//
// Precedence, tightest first: unary operators and postfix *, then ";", "+",
// "&", "|", and "->" (right-associative). "#" starts a line comment.

#ifndef PDL_PARSER_HPP
#define PDL_PARSER_HPP

#include <string_view>

#include "pdl/errors.hpp"
#include "pdl/formula.hpp"

namespace pdl {

// Parses a complete formula; throws ParseError on malformed input.
Formula parse_formula(std::string_view text);

// Parses a complete program; throws ParseError on malformed input.
Program parse_program(std::string_view text);

// Parses an ABox line: "a : formula" or "sigma(a,b)".
Assertion parse_assertion(std::string_view text);

}  // namespace pdl

#endif  // PDL_PARSER_HPP
