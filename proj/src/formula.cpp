#include "pdl/formula.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pdl {

namespace detail {

struct FormulaNode {
  FormulaKind kind;
  const std::string* name;  // Prop
  const FormulaNode* a;     // Not/Diamond/Box body, And/Or/Implies left
  const FormulaNode* b;     // And/Or/Implies right
  const ProgramNode* prog;  // Diamond/Box
  std::size_t hash;
  std::size_t length;
};

struct ProgramNode {
  ProgramKind kind;
  const std::string* name;  // Atomic
  const ProgramNode* a;     // Seq/Union left, Star body
  const ProgramNode* b;     // Seq/Union right
  const FormulaNode* cond;  // Test
  std::size_t hash;
  std::size_t length;
};

}  // namespace detail

namespace {

using detail::FormulaNode;
using detail::ProgramNode;

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct FormulaKey {
  FormulaKind kind;
  const std::string* name;
  const FormulaNode* a;
  const FormulaNode* b;
  const ProgramNode* prog;
  bool operator==(const FormulaKey&) const = default;
};

struct ProgramKey {
  ProgramKind kind;
  const std::string* name;
  const ProgramNode* a;
  const ProgramNode* b;
  const FormulaNode* cond;
  bool operator==(const ProgramKey&) const = default;
};

struct KeyHash {
  std::size_t operator()(const FormulaKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = mix(h, std::hash<const void*>{}(k.name));
    h = mix(h, std::hash<const void*>{}(k.a));
    h = mix(h, std::hash<const void*>{}(k.b));
    return mix(h, std::hash<const void*>{}(k.prog));
  }
  std::size_t operator()(const ProgramKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) + 17;
    h = mix(h, std::hash<const void*>{}(k.name));
    h = mix(h, std::hash<const void*>{}(k.a));
    h = mix(h, std::hash<const void*>{}(k.b));
    return mix(h, std::hash<const void*>{}(k.cond));
  }
};

// Process-wide hash-consing tables. Nodes live in deques so their addresses
// stay valid; all access goes through one mutex.
struct Interner {
  std::mutex mutex;
  std::unordered_set<std::string> symbols;
  std::deque<FormulaNode> formulas;
  std::deque<ProgramNode> programs;
  std::unordered_map<FormulaKey, const FormulaNode*, KeyHash> formula_index;
  std::unordered_map<ProgramKey, const ProgramNode*, KeyHash> program_index;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

const FormulaNode* make_formula(FormulaKind kind, const std::string* name, const FormulaNode* a,
                                const FormulaNode* b, const ProgramNode* prog) {
  // Structural hash: independent of addresses, so it is stable across runs.
  std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
  std::size_t length = 1;
  if (name) h = mix(h, std::hash<std::string>{}(*name));
  if (prog) h = mix(h, prog->hash), length += prog->length;
  if (a) h = mix(h, a->hash), length += a->length;
  if (b) h = mix(h, b->hash), length += b->length;

  FormulaKey key{kind, name, a, b, prog};
  Interner& in = interner();
  std::lock_guard lock(in.mutex);
  if (auto it = in.formula_index.find(key); it != in.formula_index.end()) return it->second;
  const FormulaNode* node = &in.formulas.emplace_back(FormulaNode{kind, name, a, b, prog, h, length});
  in.formula_index.emplace(key, node);
  return node;
}

const ProgramNode* make_program(ProgramKind kind, const std::string* name, const ProgramNode* a,
                                const ProgramNode* b, const FormulaNode* cond) {
  std::size_t h = (static_cast<std::size_t>(kind) + 31) * 0x100000001b3ULL;
  std::size_t length = 1;
  if (name) h = mix(h, std::hash<std::string>{}(*name));
  if (a) h = mix(h, a->hash), length += a->length;
  if (b) h = mix(h, b->hash), length += b->length;
  if (cond) h = mix(h, cond->hash), length += cond->length;

  ProgramKey key{kind, name, a, b, cond};
  Interner& in = interner();
  std::lock_guard lock(in.mutex);
  if (auto it = in.program_index.find(key); it != in.program_index.end()) return it->second;
  const ProgramNode* node = &in.programs.emplace_back(ProgramNode{kind, name, a, b, cond, h, length});
  in.program_index.emplace(key, node);
  return node;
}

std::strong_ordering compare_names(const std::string* x, const std::string* y) {
  if (x == y) return std::strong_ordering::equal;
  const int c = x->compare(*y);
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::strong_ordering compare(const ProgramNode* x, const ProgramNode* y);

std::strong_ordering compare(const FormulaNode* x, const FormulaNode* y) {
  if (x == y) return std::strong_ordering::equal;
  if (auto c = x->kind <=> y->kind; c != 0) return c;
  switch (x->kind) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      return std::strong_ordering::equal;
    case FormulaKind::Prop:
      return compare_names(x->name, y->name);
    case FormulaKind::Not:
      return compare(x->a, y->a);
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      if (auto c = compare(x->prog, y->prog); c != 0) return c;
      return compare(x->a, y->a);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      if (auto c = compare(x->a, y->a); c != 0) return c;
      return compare(x->b, y->b);
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const ProgramNode* x, const ProgramNode* y) {
  if (x == y) return std::strong_ordering::equal;
  if (auto c = x->kind <=> y->kind; c != 0) return c;
  switch (x->kind) {
    case ProgramKind::Atomic:
      return compare_names(x->name, y->name);
    case ProgramKind::Star:
      return compare(x->a, y->a);
    case ProgramKind::Test:
      return compare(x->cond, y->cond);
    case ProgramKind::Seq:
    case ProgramKind::Union:
      if (auto c = compare(x->a, y->a); c != 0) return c;
      return compare(x->b, y->b);
  }
  return std::strong_ordering::equal;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  return head(name.front()) && std::all_of(name.begin() + 1, name.end(), tail);
}

const std::string* checked_symbol(std::string_view name, const char* what) {
  if (!is_identifier(name) || name == "true" || name == "false")
    throw std::invalid_argument(std::string("invalid ") + what + " name '" + std::string(name) + "'");
  return intern_symbol(name);
}

}  // namespace

// Grants the free constructor functions access to the private handle
// constructors.
class detail_access {
 public:
  static Formula formula(const FormulaNode* n) { return Formula(n); }
  static Program program(const ProgramNode* n) { return Program(n); }
  static const ProgramNode* node(Program p) { return p.node_; }
};

const std::string* intern_symbol(std::string_view name) {
  Interner& in = interner();
  std::lock_guard lock(in.mutex);
  return &*in.symbols.emplace(name).first;
}

// ---- Formula ----

FormulaKind Formula::kind() const { return node_->kind; }

const std::string& Formula::name() const {
  assert(kind() == FormulaKind::Prop);
  return *node_->name;
}

Formula Formula::body() const {
  assert(kind() == FormulaKind::Not || kind() == FormulaKind::Diamond || kind() == FormulaKind::Box);
  return Formula(node_->a);
}

Formula Formula::left() const {
  assert(node_->b != nullptr);
  return Formula(node_->a);
}

Formula Formula::right() const {
  assert(node_->b != nullptr);
  return Formula(node_->b);
}

Program Formula::program() const {
  assert(node_->prog != nullptr);
  return detail_access::program(node_->prog);
}

std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::length() const { return node_->length; }

bool Formula::is_literal() const {
  return kind() == FormulaKind::Prop || (kind() == FormulaKind::Not && body().kind() == FormulaKind::Prop);
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) { return compare(a.node_, b.node_); }

// ---- Program ----

ProgramKind Program::kind() const { return node_->kind; }

const std::string& Program::name() const {
  assert(kind() == ProgramKind::Atomic);
  return *node_->name;
}

Program Program::left() const {
  assert(node_->b != nullptr);
  return Program(node_->a);
}

Program Program::right() const {
  assert(node_->b != nullptr);
  return Program(node_->b);
}

Program Program::body() const {
  assert(kind() == ProgramKind::Star);
  return Program(node_->a);
}

Formula Program::condition() const {
  assert(kind() == ProgramKind::Test);
  return detail_access::formula(node_->cond);
}

std::size_t Program::hash() const { return node_->hash; }
std::size_t Program::length() const { return node_->length; }

std::strong_ordering operator<=>(const Program& a, const Program& b) { return compare(a.node_, b.node_); }

// ---- constructors ----

Formula top() { return detail_access::formula(make_formula(FormulaKind::Top, nullptr, nullptr, nullptr, nullptr)); }

Formula bottom() {
  return detail_access::formula(make_formula(FormulaKind::Bottom, nullptr, nullptr, nullptr, nullptr));
}

Formula prop(std::string_view name) {
  return detail_access::formula(
      make_formula(FormulaKind::Prop, checked_symbol(name, "proposition"), nullptr, nullptr, nullptr));
}

Formula neg(Formula f) {
  return detail_access::formula(make_formula(FormulaKind::Not, nullptr, f.node(), nullptr, nullptr));
}

Formula conj(Formula l, Formula r) {
  return detail_access::formula(make_formula(FormulaKind::And, nullptr, l.node(), r.node(), nullptr));
}

Formula disj(Formula l, Formula r) {
  return detail_access::formula(make_formula(FormulaKind::Or, nullptr, l.node(), r.node(), nullptr));
}

Formula implies(Formula l, Formula r) {
  return detail_access::formula(make_formula(FormulaKind::Implies, nullptr, l.node(), r.node(), nullptr));
}

Formula diamond(Program p, Formula f) {
  return detail_access::formula(
      make_formula(FormulaKind::Diamond, nullptr, f.node(), nullptr, detail_access::node(p)));
}

Formula box(Program p, Formula f) {
  return detail_access::formula(make_formula(FormulaKind::Box, nullptr, f.node(), nullptr, detail_access::node(p)));
}

Program atomic(std::string_view name) {
  return detail_access::program(
      make_program(ProgramKind::Atomic, checked_symbol(name, "program"), nullptr, nullptr, nullptr));
}

Program seq(Program l, Program r) {
  return detail_access::program(
      make_program(ProgramKind::Seq, nullptr, detail_access::node(l), detail_access::node(r), nullptr));
}

Program choice(Program l, Program r) {
  return detail_access::program(
      make_program(ProgramKind::Union, nullptr, detail_access::node(l), detail_access::node(r), nullptr));
}

Program star(Program p) {
  return detail_access::program(make_program(ProgramKind::Star, nullptr, detail_access::node(p), nullptr, nullptr));
}

Program test(Formula f) {
  return detail_access::program(make_program(ProgramKind::Test, nullptr, nullptr, nullptr, f.node()));
}

// ---- Assertion ----

Assertion Assertion::concept_of(std::string_view subject, Formula formula) {
  Assertion a;
  a.kind_ = Kind::Concept;
  a.subject_ = checked_symbol(subject, "state variable");
  a.formula_ = formula;
  return a;
}

Assertion Assertion::role_of(std::string_view program, std::string_view from, std::string_view to) {
  Assertion a;
  a.kind_ = Kind::Role;
  a.role_ = checked_symbol(program, "program");
  a.subject_ = checked_symbol(from, "state variable");
  a.object_ = checked_symbol(to, "state variable");
  return a;
}

std::size_t Assertion::hash() const {
  std::size_t h = mix(static_cast<std::size_t>(kind_) + 7, std::hash<std::string>{}(*subject_));
  if (is_concept()) return mix(h, formula_->hash());
  h = mix(h, std::hash<std::string>{}(*role_));
  return mix(h, std::hash<std::string>{}(*object_));
}

std::strong_ordering operator<=>(const Assertion& a, const Assertion& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = compare_names(a.subject_, b.subject_); c != 0) return c;
  if (a.is_concept()) return *a.formula_ <=> *b.formula_;
  if (auto c = compare_names(a.role_, b.role_); c != 0) return c;
  return compare_names(a.object_, b.object_);
}

std::size_t hash_item(const Item& item) {
  return std::visit([](const auto& x) { return x.hash(); }, item) ^ item.index();
}

// ---- sets ----

FormulaSet make_set(std::vector<Formula> formulas) {
  std::sort(formulas.begin(), formulas.end());
  formulas.erase(std::unique(formulas.begin(), formulas.end()), formulas.end());
  return formulas;
}

bool set_contains(std::span<const Formula> set, Formula f) { return std::binary_search(set.begin(), set.end(), f); }

void set_insert(FormulaSet& set, Formula f) {
  auto it = std::lower_bound(set.begin(), set.end(), f);
  if (it == set.end() || *it != f) set.insert(it, f);
}

// ---- printing ----
//
// Formula precedence levels: 1 "->", 2 "|", 3 "&", 4 unary/atoms.
// Program precedence levels: 1 "+", 2 ";", 3 postfix/atoms.
// Binary operators parse left-associatively ("->" right-associatively), so
// the side that would re-associate is printed one level tighter.

namespace {

void print(std::ostream& os, Formula f, int level);
void print(std::ostream& os, Program p, int level);

void print(std::ostream& os, Formula f, int level) {
  auto binary = [&](const char* op, int own, int left_level, int right_level) {
    if (level > own) os << '(';
    print(os, f.left(), left_level);
    os << ' ' << op << ' ';
    print(os, f.right(), right_level);
    if (level > own) os << ')';
  };
  switch (f.kind()) {
    case FormulaKind::Top: os << "true"; break;
    case FormulaKind::Bottom: os << "false"; break;
    case FormulaKind::Prop: os << f.name(); break;
    case FormulaKind::Not:
      os << '~';
      print(os, f.body(), 4);
      break;
    case FormulaKind::Diamond:
      os << '<';
      print(os, f.program(), 1);
      os << '>';
      print(os, f.body(), 4);
      break;
    case FormulaKind::Box:
      os << '[';
      print(os, f.program(), 1);
      os << ']';
      print(os, f.body(), 4);
      break;
    case FormulaKind::And: binary("&", 3, 3, 4); break;
    case FormulaKind::Or: binary("|", 2, 2, 3); break;
    case FormulaKind::Implies: binary("->", 1, 2, 1); break;
  }
}

void print(std::ostream& os, Program p, int level) {
  auto binary = [&](char op, int own, int left_level, int right_level) {
    if (level > own) os << '(';
    print(os, p.left(), left_level);
    os << op;
    print(os, p.right(), right_level);
    if (level > own) os << ')';
  };
  switch (p.kind()) {
    case ProgramKind::Atomic: os << p.name(); break;
    case ProgramKind::Seq: binary(';', 2, 2, 3); break;
    case ProgramKind::Union: binary('+', 1, 1, 2); break;
    case ProgramKind::Star:
      print(os, p.body(), 3);
      os << '*';
      break;
    case ProgramKind::Test: {
      const Formula c = p.condition();
      const bool atom = c.kind() == FormulaKind::Prop || c.kind() == FormulaKind::Top ||
                        c.kind() == FormulaKind::Bottom;
      if (!atom) os << '(';
      print(os, c, 1);
      if (!atom) os << ')';
      os << '?';
      break;
    }
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, Formula f) {
  print(os, f, 1);
  return os;
}

std::ostream& operator<<(std::ostream& os, Program p) {
  print(os, p, 1);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Assertion& a) {
  if (a.is_concept()) return os << a.subject() << " : " << a.formula();
  return os << a.role() << '(' << a.subject() << ',' << a.object() << ')';
}

std::string to_string(Formula f) {
  std::ostringstream os;
  os << f;
  return os.str();
}

std::string to_string(Program p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

std::string to_string(const Assertion& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::string to_string(const Item& item) {
  return std::visit([](const auto& x) { return to_string(x); }, item);
}

// ---- signature ----

void Signature::add(Formula f) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
      break;
    case FormulaKind::Prop:
      propositions.push_back(f.name());
      break;
    case FormulaKind::Not:
      add(f.body());
      break;
    case FormulaKind::Diamond:
    case FormulaKind::Box:
      add(f.program());
      add(f.body());
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      add(f.left());
      add(f.right());
      break;
  }
}

void Signature::add(Program p) {
  switch (p.kind()) {
    case ProgramKind::Atomic:
      programs.push_back(p.name());
      break;
    case ProgramKind::Seq:
    case ProgramKind::Union:
      add(p.left());
      add(p.right());
      break;
    case ProgramKind::Star:
      add(p.body());
      break;
    case ProgramKind::Test:
      add(p.condition());
      break;
  }
}

void Signature::add(const Assertion& a) {
  variables.push_back(a.subject());
  if (a.is_concept()) {
    add(a.formula());
  } else {
    programs.push_back(a.role());
    variables.push_back(a.object());
  }
}

void Signature::normalize() {
  for (auto* v : {&propositions, &programs, &variables}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

}  // namespace pdl
