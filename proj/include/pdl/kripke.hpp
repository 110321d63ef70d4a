// Finite Kripke models and exact model checking.

#ifndef PDL_KRIPKE_HPP
#define PDL_KRIPKE_HPP

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdl/formula.hpp"

namespace pdl {

using StateSet = boost::dynamic_bitset<>;

// A binary relation on states 0..n-1 as a boolean matrix; row i holds the
// successors of i.
class Relation {
 public:
  explicit Relation(std::size_t states = 0) : rows_(states, StateSet(states)) {}

  static Relation identity(std::size_t states);
  static Relation diagonal(const StateSet& states);

  std::size_t states() const { return rows_.size(); }
  bool contains(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  void insert(std::size_t i, std::size_t j) { rows_[i].set(j); }
  const StateSet& successors(std::size_t i) const { return rows_[i]; }
  std::size_t pair_count() const;

  Relation operator|(const Relation& other) const;
  // Relational composition: (x,z) iff (x,y) ∈ this and (y,z) ∈ other.
  Relation compose(const Relation& other) const;
  // Reflexive-transitive closure by iterated squaring.
  Relation star() const;
  // {x : some successor of x lies in target}.
  StateSet preimage(const StateSet& target) const;

  bool operator==(const Relation&) const = default;

 private:
  std::vector<StateSet> rows_;
};

class KripkeModel {
 public:
  explicit KripkeModel(std::size_t states = 0);

  std::size_t size() const { return states_; }

  // Registers p (resp. σ) with an empty extension if it is not known yet.
  void declare_prop(std::string_view p);
  void declare_relation(std::string_view sigma);
  void set_prop(std::string_view p, std::size_t state);
  void add_edge(std::string_view sigma, std::size_t from, std::size_t to);
  void set_var(std::string_view a, std::size_t state);

  // p^M; empty for propositions the model does not mention.
  StateSet prop(std::string_view p) const;
  // σ^M; empty for programs the model does not mention.
  Relation relation(std::string_view sigma) const;
  std::optional<std::size_t> var(std::string_view a) const;

  const std::map<std::string, StateSet, std::less<>>& props() const { return props_; }
  const std::map<std::string, Relation, std::less<>>& relations() const { return relations_; }
  const std::map<std::string, std::size_t, std::less<>>& vars() const { return vars_; }

  // Optional display names, one per state.
  std::vector<std::string> state_names;

  bool operator==(const KripkeModel& other) const;

 private:
  std::size_t states_;
  std::map<std::string, StateSet, std::less<>> props_;
  std::map<std::string, Relation, std::less<>> relations_;
  std::map<std::string, std::size_t, std::less<>> vars_;
};

Relation eval_program(const KripkeModel& m, Program alpha);
// φ^M as a state set; accepts full syntax including "->" and nested "~".
StateSet eval_formula(const KripkeModel& m, Formula phi);
bool model_check(const KripkeModel& m, std::size_t w, Formula phi);

// M, w ⊨ φ for every state w and every φ in gamma.
bool validate(const KripkeModel& m, std::span<const Formula> gamma);
// Every member of x holds at w.
bool satisfies_at(const KripkeModel& m, std::size_t w, std::span<const Formula> x);
// Every assertion holds under the model's variable assignment. Throws
// std::invalid_argument when a variable is unassigned.
bool satisfies_abox(const KripkeModel& m, std::span<const Assertion> abox);

// Line format: "states: n", "prop p: i j", "rel s: (i,j) ...", "var a = i".
std::string serialize(const KripkeModel& m);
KripkeModel deserialize(std::string_view text);

}  // namespace pdl

#endif  // PDL_KRIPKE_HPP
