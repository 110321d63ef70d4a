// Tableau rules for PDL and for PDL with ABoxes.
//
// Simple nodes carry traditional NNF formulas and are expanded with the
// unprimed rules; complex nodes carry assertions and are expanded with the
// primed rules. Rule selection is deterministic: clash rules first, then
// unary static rules, then branching static rules, then the transitional
// rule; ties go to the least principal in canonical order.

#ifndef PDL_CALCULUS_HPP
#define PDL_CALCULUS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pdl/formula.hpp"

namespace pdl {

enum class NodeKind : std::uint8_t { Simple, Complex };

// Sorted, duplicate-free item vector.
using ItemSet = std::vector<Item>;

// The contents of a tableau node: its label L(v), the set rfs(v) of
// principals reduced by a static rule since the last transition, and the
// simple/complex tag. The unit of global caching.
struct NodeContents {
  NodeKind kind = NodeKind::Simple;
  ItemSet label;
  ItemSet rfs;

  bool operator==(const NodeContents&) const = default;
  std::size_t hash() const;

  static NodeContents simple(std::vector<Formula> label, std::vector<Formula> rfs = {});
  static NodeContents complex(std::vector<Assertion> label, std::vector<Assertion> rfs = {});

  bool contains(const Item& item) const;
  bool in_rfs(const Item& item) const;
  // The formulas of a simple label.
  std::vector<Formula> formulas() const;
  // {φ : var:φ ∈ label} for a complex label.
  std::vector<Formula> projection(std::string_view var) const;
};

ItemSet make_item_set(std::vector<Item> items);
bool item_set_contains(std::span<const Item> set, const Item& item);

enum class RuleId : std::uint8_t {
  Bot0, Bot, And, Or, BoxSeq, DmdSeq, BoxUnion, DmdUnion, BoxTest, DmdTest, BoxStar, DmdStar, Trans,
  Bot0P, BotP, AndP, OrP, BoxSeqP, DmdSeqP, BoxUnionP, DmdUnionP, BoxTestP, DmdTestP, BoxStarP, DmdStarP,
  BoxPrime, TransP
};

const char* rule_name(RuleId rule);
bool is_primed(RuleId rule);
bool is_transitional(RuleId rule);  // Trans, TransP
bool is_static(RuleId rule);        // every other rule
bool is_and_rule(RuleId rule);      // the "and"-rules: Trans, TransP
bool is_clash(RuleId rule);         // Bot0, Bot, Bot0P, BotP
bool is_unary(RuleId rule);         // static rules with exactly one conclusion
bool is_rfs_restricted(RuleId rule);
bool is_diamond_rule(RuleId rule);  // (◇;), (◇∪), (◇?), (◇*) and primes

// A selected rule application on some node. The premise is the node's own
// contents; it is supplied to apply_rule rather than stored here.
struct RuleInstance {
  RuleId rule;
  std::optional<Item> principal;  // absent for Trans/TransP
  std::optional<Assertion> side;  // the role assertion σ(a,b) used by (□′)
};

struct Conclusion {
  NodeContents contents;
  std::optional<Item> edge_label;  // present iff the rule is transitional
};

// The highest-priority applicable rule, or nullopt for an end node.
std::optional<RuleInstance> applicable_rule(const NodeContents& contents, std::span<const Formula> gamma);

// Conclusions of applying inst to contents, in rule order. For static rules
// with several conclusions the order is that of the rule schema; for
// transitional rules it is the canonical order of the diamond principals.
std::vector<Conclusion> apply_rule(const NodeContents& contents, const RuleInstance& inst,
                                   std::span<const Formula> gamma);

// The formula lists produced by the static decomposition of f, one list per
// conclusion, or nullopt when f is not a static principal.
std::optional<std::vector<std::vector<Formula>>> decompose(Formula f);

// For a diamond principal f reduced by a static rule, the formula that a
// trace of f continues with in conclusion number `branch`.
Formula trace_successor(Formula f, std::size_t branch);

// The label {⊥} with empty rfs.
const NodeContents& bottom_contents();

}  // namespace pdl

template <>
struct std::hash<pdl::NodeContents> {
  std::size_t operator()(const pdl::NodeContents& c) const noexcept { return c.hash(); }
};

#endif  // PDL_CALCULUS_HPP
