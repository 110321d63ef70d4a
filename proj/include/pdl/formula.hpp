// Formulas and programs of propositional dynamic logic.
//
// Terms are hash-consed: every structurally distinct formula or program is
// stored once in a process-wide, mutex-guarded table, so handle equality is
// pointer equality and hashing is O(1). The canonical order used for sorted
// formula sets is structural (constructor tag first, then children) and does
// not depend on creation order.

#ifndef PDL_FORMULA_HPP
#define PDL_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pdl {

// Declaration order is the canonical tag order.
enum class FormulaKind : std::uint8_t { Top, Bottom, Prop, Not, Diamond, Box, And, Or, Implies };
enum class ProgramKind : std::uint8_t { Atomic, Seq, Union, Star, Test };

namespace detail {
struct FormulaNode;
struct ProgramNode;
}  // namespace detail

class Program;

class Formula {
 public:
  FormulaKind kind() const;
  // Proposition name; only for Prop.
  const std::string& name() const;
  // Operand of Not, Diamond and Box.
  Formula body() const;
  Formula left() const;
  Formula right() const;
  // Program of Diamond and Box.
  Program program() const;

  std::size_t hash() const;
  // Number of symbols (constructor nodes of formulas and nested programs).
  std::size_t length() const;

  bool is_literal() const;  // p or ~p
  bool is_diamond() const { return kind() == FormulaKind::Diamond; }
  bool is_box() const { return kind() == FormulaKind::Box; }

  bool operator==(const Formula& other) const { return node_ == other.node_; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

  const detail::FormulaNode* node() const { return node_; }

 private:
  friend class detail_access;
  explicit Formula(const detail::FormulaNode* node) : node_(node) {}
  const detail::FormulaNode* node_;
};

class Program {
 public:
  ProgramKind kind() const;
  // Atomic program name; only for Atomic.
  const std::string& name() const;
  Program left() const;   // Seq, Union
  Program right() const;  // Seq, Union
  Program body() const;   // Star
  Formula condition() const;  // Test

  std::size_t hash() const;
  std::size_t length() const;
  bool is_atomic() const { return kind() == ProgramKind::Atomic; }

  bool operator==(const Program& other) const { return node_ == other.node_; }
  friend std::strong_ordering operator<=>(const Program& a, const Program& b);

 private:
  friend class detail_access;
  explicit Program(const detail::ProgramNode* node) : node_(node) {}
  const detail::ProgramNode* node_;
};

// Formula constructors.
Formula top();
Formula bottom();
Formula prop(std::string_view name);
Formula neg(Formula f);
Formula conj(Formula l, Formula r);
Formula disj(Formula l, Formula r);
Formula implies(Formula l, Formula r);
Formula diamond(Program p, Formula f);
Formula box(Program p, Formula f);

// Program constructors.
Program atomic(std::string_view name);
Program seq(Program l, Program r);
Program choice(Program l, Program r);
Program star(Program p);
Program test(Formula f);

// Interned identifier; equal names share one address.
const std::string* intern_symbol(std::string_view name);

// A state-variable assertion: a:φ (concept) or σ(a,b) (role).
class Assertion {
 public:
  enum class Kind : std::uint8_t { Concept, Role };

  static Assertion concept_of(std::string_view subject, Formula formula);
  static Assertion role_of(std::string_view program, std::string_view from, std::string_view to);

  Kind kind() const { return kind_; }
  bool is_concept() const { return kind_ == Kind::Concept; }
  bool is_role() const { return kind_ == Kind::Role; }
  // Concept: the individual a. Role: the source a.
  const std::string& subject() const { return *subject_; }
  // Concept only.
  Formula formula() const { return *formula_; }
  // Role only.
  const std::string& role() const { return *role_; }
  const std::string& object() const { return *object_; }

  std::size_t hash() const;

  bool operator==(const Assertion& other) const = default;
  friend std::strong_ordering operator<=>(const Assertion& a, const Assertion& b);

 private:
  Assertion() = default;
  Kind kind_ = Kind::Concept;
  const std::string* subject_ = nullptr;
  std::optional<Formula> formula_;
  const std::string* role_ = nullptr;
  const std::string* object_ = nullptr;
};

// A label element: a traditional formula (simple nodes) or an assertion
// (complex nodes).
using Item = std::variant<Formula, Assertion>;

std::string to_string(const Item& item);
std::size_t hash_item(const Item& item);

using ABox = std::vector<Assertion>;

// Sorted, duplicate-free formula vector.
using FormulaSet = std::vector<Formula>;

FormulaSet make_set(std::vector<Formula> formulas);
bool set_contains(std::span<const Formula> set, Formula f);
void set_insert(FormulaSet& set, Formula f);

std::string to_string(Formula f);
std::string to_string(Program p);
std::string to_string(const Assertion& a);
std::ostream& operator<<(std::ostream& os, Formula f);
std::ostream& operator<<(std::ostream& os, Program p);
std::ostream& operator<<(std::ostream& os, const Assertion& a);

// Propositions, atomic programs and state variables occurring anywhere.
struct Signature {
  std::vector<std::string> propositions;
  std::vector<std::string> programs;
  std::vector<std::string> variables;

  void add(Formula f);
  void add(Program p);
  void add(const Assertion& a);
  void normalize();  // sort + unique
};

}  // namespace pdl

template <>
struct std::hash<pdl::Formula> {
  std::size_t operator()(const pdl::Formula& f) const noexcept { return f.hash(); }
};

template <>
struct std::hash<pdl::Program> {
  std::size_t operator()(const pdl::Program& p) const noexcept { return p.hash(); }
};

template <>
struct std::hash<pdl::Assertion> {
  std::size_t operator()(const pdl::Assertion& a) const noexcept { return a.hash(); }
};

#endif  // PDL_FORMULA_HPP
