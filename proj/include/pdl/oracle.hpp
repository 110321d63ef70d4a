// Brute-force satisfiability over small Kripke models.
//
// An independent check for the tableau procedures: enumerates every model
// with 1..k states over a fixed signature. It can confirm satisfiability but
// never refute it beyond the state bound.

#ifndef PDL_ORACLE_HPP
#define PDL_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pdl/formula.hpp"
#include "pdl/kripke.hpp"

namespace pdl {

// Either a formula problem (goal X, checked at some state) or an ABox
// problem; gamma must hold everywhere.
struct OracleProblem {
  std::vector<Formula> goal;
  std::vector<Assertion> abox;
  std::vector<Formula> gamma;

  Signature signature() const;
};

struct OracleOptions {
  std::size_t max_states = 3;  // at most 4
  // Upper bound on enumerated (model, assignment) pairs; exceeding it throws
  // ResourceError.
  std::uint64_t budget = 200'000'000;
};

// A model with at most max_states states over `sig` that validates gamma and
// satisfies the goal (at some state) or the ABox, if one exists.
std::optional<KripkeModel> find_small_model(const OracleProblem& problem, const Signature& sig, OracleOptions options);
std::optional<KripkeModel> find_small_model(const OracleProblem& problem, OracleOptions options = {});

bool bounded_model_sat(const OracleProblem& problem, std::size_t max_states);

}  // namespace pdl

#endif  // PDL_ORACLE_HPP
