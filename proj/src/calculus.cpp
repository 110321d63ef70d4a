#include "pdl/calculus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pdl/errors.hpp"
#include "pdl/normal_form.hpp"

namespace pdl {

// ---- contents ----

ItemSet make_item_set(std::vector<Item> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

bool item_set_contains(std::span<const Item> set, const Item& item) {
  return std::binary_search(set.begin(), set.end(), item);
}

std::size_t NodeContents::hash() const {
  std::size_t h = static_cast<std::size_t>(kind) + 0x51ed27;
  for (const Item& item : label) h = h * 1000003 ^ hash_item(item);
  h = h * 1000003 ^ 0x2545f491;
  for (const Item& item : rfs) h = h * 1000003 ^ hash_item(item);
  return h;
}

NodeContents NodeContents::simple(std::vector<Formula> label, std::vector<Formula> rfs) {
  NodeContents c;
  c.kind = NodeKind::Simple;
  c.label = make_item_set({label.begin(), label.end()});
  c.rfs = make_item_set({rfs.begin(), rfs.end()});
  return c;
}

NodeContents NodeContents::complex(std::vector<Assertion> label, std::vector<Assertion> rfs) {
  NodeContents c;
  c.kind = NodeKind::Complex;
  c.label = make_item_set({label.begin(), label.end()});
  c.rfs = make_item_set({rfs.begin(), rfs.end()});
  return c;
}

bool NodeContents::contains(const Item& item) const { return item_set_contains(label, item); }

bool NodeContents::in_rfs(const Item& item) const { return item_set_contains(rfs, item); }

std::vector<Formula> NodeContents::formulas() const {
  std::vector<Formula> out;
  out.reserve(label.size());
  for (const Item& item : label)
    if (const Formula* f = std::get_if<Formula>(&item)) out.push_back(*f);
  return out;
}

std::vector<Formula> NodeContents::projection(std::string_view var) const {
  std::vector<Formula> out;
  for (const Item& item : label) {
    const Assertion* a = std::get_if<Assertion>(&item);
    if (a && a->is_concept() && a->subject() == var) out.push_back(a->formula());
  }
  return out;
}

const NodeContents& bottom_contents() {
  static const NodeContents contents = NodeContents::simple({bottom()});
  return contents;
}

// ---- rule classification ----

const char* rule_name(RuleId rule) {
  switch (rule) {
    case RuleId::Bot0: return "bot0";
    case RuleId::Bot: return "bot";
    case RuleId::And: return "and";
    case RuleId::Or: return "or";
    case RuleId::BoxSeq: return "box-seq";
    case RuleId::DmdSeq: return "dmd-seq";
    case RuleId::BoxUnion: return "box-union";
    case RuleId::DmdUnion: return "dmd-union";
    case RuleId::BoxTest: return "box-test";
    case RuleId::DmdTest: return "dmd-test";
    case RuleId::BoxStar: return "box-star";
    case RuleId::DmdStar: return "dmd-star";
    case RuleId::Trans: return "trans";
    case RuleId::Bot0P: return "bot0'";
    case RuleId::BotP: return "bot'";
    case RuleId::AndP: return "and'";
    case RuleId::OrP: return "or'";
    case RuleId::BoxSeqP: return "box-seq'";
    case RuleId::DmdSeqP: return "dmd-seq'";
    case RuleId::BoxUnionP: return "box-union'";
    case RuleId::DmdUnionP: return "dmd-union'";
    case RuleId::BoxTestP: return "box-test'";
    case RuleId::DmdTestP: return "dmd-test'";
    case RuleId::BoxStarP: return "box-star'";
    case RuleId::DmdStarP: return "dmd-star'";
    case RuleId::BoxPrime: return "box'";
    case RuleId::TransP: return "trans'";
  }
  return "?";
}

bool is_primed(RuleId rule) { return rule >= RuleId::Bot0P; }

bool is_transitional(RuleId rule) { return rule == RuleId::Trans || rule == RuleId::TransP; }

bool is_static(RuleId rule) { return !is_transitional(rule); }

bool is_and_rule(RuleId rule) { return is_transitional(rule); }

bool is_clash(RuleId rule) {
  return rule == RuleId::Bot0 || rule == RuleId::Bot || rule == RuleId::Bot0P || rule == RuleId::BotP;
}

bool is_unary(RuleId rule) {
  switch (rule) {
    case RuleId::Bot0: case RuleId::Bot: case RuleId::And: case RuleId::BoxSeq: case RuleId::DmdSeq:
    case RuleId::BoxUnion: case RuleId::DmdTest: case RuleId::BoxStar:
    case RuleId::Bot0P: case RuleId::BotP: case RuleId::AndP: case RuleId::BoxSeqP: case RuleId::DmdSeqP:
    case RuleId::BoxUnionP: case RuleId::DmdTestP: case RuleId::BoxStarP: case RuleId::BoxPrime:
      return true;
    default:
      return false;
  }
}

bool is_rfs_restricted(RuleId rule) {
  switch (rule) {
    case RuleId::And: case RuleId::Or: case RuleId::BoxSeq: case RuleId::BoxUnion: case RuleId::BoxTest:
    case RuleId::BoxStar:
      return true;
    default:
      // Every primed reduction rule is restricted: they keep their principal,
      // so without the restriction they would re-apply indefinitely.
      return is_primed(rule) && !is_clash(rule) && rule != RuleId::BoxPrime && rule != RuleId::TransP;
  }
}

bool is_diamond_rule(RuleId rule) {
  switch (rule) {
    case RuleId::DmdSeq: case RuleId::DmdUnion: case RuleId::DmdTest: case RuleId::DmdStar:
    case RuleId::DmdSeqP: case RuleId::DmdUnionP: case RuleId::DmdTestP: case RuleId::DmdStarP:
      return true;
    default:
      return false;
  }
}

namespace {

RuleId primed(RuleId rule) {
  switch (rule) {
    case RuleId::Bot0: return RuleId::Bot0P;
    case RuleId::Bot: return RuleId::BotP;
    case RuleId::And: return RuleId::AndP;
    case RuleId::Or: return RuleId::OrP;
    case RuleId::BoxSeq: return RuleId::BoxSeqP;
    case RuleId::DmdSeq: return RuleId::DmdSeqP;
    case RuleId::BoxUnion: return RuleId::BoxUnionP;
    case RuleId::DmdUnion: return RuleId::DmdUnionP;
    case RuleId::BoxTest: return RuleId::BoxTestP;
    case RuleId::DmdTest: return RuleId::DmdTestP;
    case RuleId::BoxStar: return RuleId::BoxStarP;
    case RuleId::DmdStar: return RuleId::DmdStarP;
    case RuleId::Trans: return RuleId::TransP;
    default: return rule;
  }
}

// The unprimed static reduction rule whose principal has the shape of f.
std::optional<RuleId> reduction_rule(Formula f) {
  switch (f.kind()) {
    case FormulaKind::And: return RuleId::And;
    case FormulaKind::Or: return RuleId::Or;
    case FormulaKind::Box:
    case FormulaKind::Diamond: {
      const bool b = f.is_box();
      switch (f.program().kind()) {
        case ProgramKind::Atomic: return std::nullopt;
        case ProgramKind::Seq: return b ? RuleId::BoxSeq : RuleId::DmdSeq;
        case ProgramKind::Union: return b ? RuleId::BoxUnion : RuleId::DmdUnion;
        case ProgramKind::Test: return b ? RuleId::BoxTest : RuleId::DmdTest;
        case ProgramKind::Star: return b ? RuleId::BoxStar : RuleId::DmdStar;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool is_atomic_diamond(Formula f) { return f.is_diamond() && f.program().is_atomic(); }

const Formula* as_formula(const Item& item) { return std::get_if<Formula>(&item); }

const Assertion* as_concept(const Item& item) {
  const Assertion* a = std::get_if<Assertion>(&item);
  return a && a->is_concept() ? a : nullptr;
}

std::optional<RuleInstance> select_simple(const NodeContents& c) {
  const std::vector<Formula> label = c.formulas();
  if (c != bottom_contents()) {
    if (set_contains(label, bottom())) return RuleInstance{RuleId::Bot0, Item{bottom()}, std::nullopt};
    for (Formula f : label)
      if (f.kind() == FormulaKind::Prop && set_contains(label, neg(f)))
        return RuleInstance{RuleId::Bot, Item{f}, std::nullopt};
  }
  for (const bool unary_pass : {true, false}) {
    for (Formula f : label) {
      const auto rule = reduction_rule(f);
      if (!rule || is_unary(*rule) != unary_pass) continue;
      if (is_rfs_restricted(*rule) && c.in_rfs(Item{f})) continue;
      return RuleInstance{*rule, Item{f}, std::nullopt};
    }
  }
  if (std::any_of(label.begin(), label.end(), is_atomic_diamond))
    return RuleInstance{RuleId::Trans, std::nullopt, std::nullopt};
  return std::nullopt;
}

std::optional<RuleInstance> select_complex(const NodeContents& c) {
  for (const Item& item : c.label)
    if (const Assertion* a = as_concept(item); a && a->formula() == bottom())
      return RuleInstance{RuleId::Bot0P, item, std::nullopt};
  for (const Item& item : c.label) {
    const Assertion* a = as_concept(item);
    if (a && a->formula().kind() == FormulaKind::Prop &&
        c.contains(Item{Assertion::concept_of(a->subject(), neg(a->formula()))}))
      return RuleInstance{RuleId::BotP, item, std::nullopt};
  }
  // (□′): a:[σ]φ with σ(a,b) and b:φ missing. Role assertions sort after
  // concept assertions, so the roles form a suffix of the label.
  auto box_prime_side = [&](const Assertion& a) -> std::optional<Assertion> {
    const Formula f = a.formula();
    if (!f.is_box() || !f.program().is_atomic()) return std::nullopt;
    for (const Item& item : c.label) {
      const Assertion* r = std::get_if<Assertion>(&item);
      if (!r || !r->is_role() || r->role() != f.program().name() || r->subject() != a.subject()) continue;
      if (!c.contains(Item{Assertion::concept_of(r->object(), f.body())})) return *r;
    }
    return std::nullopt;
  };
  for (const bool unary_pass : {true, false}) {
    for (const Item& item : c.label) {
      const Assertion* a = as_concept(item);
      if (!a) continue;
      if (unary_pass) {
        if (auto side = box_prime_side(*a)) return RuleInstance{RuleId::BoxPrime, item, side};
      }
      const auto rule = reduction_rule(a->formula());
      if (!rule || is_unary(*rule) != unary_pass || c.in_rfs(item)) continue;
      return RuleInstance{primed(*rule), item, std::nullopt};
    }
  }
  for (const Item& item : c.label)
    if (const Assertion* a = as_concept(item); a && is_atomic_diamond(a->formula()))
      return RuleInstance{RuleId::TransP, std::nullopt, std::nullopt};
  return std::nullopt;
}

// {φ} ∪ {ψ : [σ]ψ ∈ boxes} ∪ Γ as a simple node with empty rfs.
NodeContents transition(Formula target, Program sigma, const std::vector<Formula>& boxes,
                        std::span<const Formula> gamma) {
  std::vector<Formula> label{target};
  for (Formula b : boxes)
    if (b.program() == sigma) label.push_back(b.body());
  label.insert(label.end(), gamma.begin(), gamma.end());
  return NodeContents::simple(std::move(label));
}

std::vector<Conclusion> apply_simple(const NodeContents& c, const RuleInstance& inst, std::span<const Formula> gamma) {
  if (is_clash(inst.rule)) return {Conclusion{bottom_contents(), std::nullopt}};
  const std::vector<Formula> label = c.formulas();
  if (inst.rule == RuleId::Trans) {
    std::vector<Formula> boxes;
    for (Formula f : label)
      if (f.is_box() && f.program().is_atomic()) boxes.push_back(f);
    std::vector<Conclusion> out;
    for (Formula f : label)
      if (is_atomic_diamond(f)) out.push_back({transition(f.body(), f.program(), boxes, gamma), Item{f}});
    return out;
  }
  const Formula principal = std::get<Formula>(*inst.principal);
  const auto alternatives = decompose(principal);
  if (!alternatives || reduction_rule(principal) != inst.rule)
    throw InternalError(std::string("rule ") + rule_name(inst.rule) + " does not match " + to_string(principal));
  std::vector<Conclusion> out;
  for (const auto& derived : *alternatives) {
    NodeContents w;
    w.kind = NodeKind::Simple;
    w.label.reserve(c.label.size() + derived.size());
    for (const Item& item : c.label)
      if (*as_formula(item) != principal) w.label.push_back(item);
    w.label.insert(w.label.end(), derived.begin(), derived.end());
    w.label = make_item_set(std::move(w.label));
    w.rfs = c.rfs;
    w.rfs.push_back(Item{principal});
    w.rfs = make_item_set(std::move(w.rfs));
    out.push_back({std::move(w), std::nullopt});
  }
  return out;
}

std::vector<Conclusion> apply_complex(const NodeContents& c, const RuleInstance& inst,
                                      std::span<const Formula> gamma) {
  if (is_clash(inst.rule)) return {Conclusion{bottom_contents(), std::nullopt}};
  if (inst.rule == RuleId::TransP) {
    std::vector<Conclusion> out;
    for (const Item& item : c.label) {
      const Assertion* a = as_concept(item);
      if (!a || !is_atomic_diamond(a->formula())) continue;
      std::vector<Formula> boxes;
      for (Formula f : c.projection(a->subject()))
        if (f.is_box() && f.program().is_atomic()) boxes.push_back(f);
      out.push_back({transition(a->formula().body(), a->formula().program(), boxes, gamma), item});
    }
    return out;
  }
  const Assertion principal = std::get<Assertion>(*inst.principal);
  if (inst.rule == RuleId::BoxPrime) {
    NodeContents w = c;
    w.label.push_back(Item{Assertion::concept_of(inst.side->object(), principal.formula().body())});
    w.label = make_item_set(std::move(w.label));
    return {Conclusion{std::move(w), std::nullopt}};
  }
  const auto alternatives = decompose(principal.formula());
  if (!alternatives || primed(*reduction_rule(principal.formula())) != inst.rule)
    throw InternalError(std::string("rule ") + rule_name(inst.rule) + " does not match " + to_string(principal));
  std::vector<Conclusion> out;
  for (const auto& derived : *alternatives) {
    NodeContents w = c;
    for (Formula f : derived) w.label.push_back(Item{Assertion::concept_of(principal.subject(), f)});
    w.label = make_item_set(std::move(w.label));
    w.rfs.push_back(*inst.principal);
    w.rfs = make_item_set(std::move(w.rfs));
    out.push_back({std::move(w), std::nullopt});
  }
  return out;
}

}  // namespace

std::optional<std::vector<std::vector<Formula>>> decompose(Formula f) {
  using Alternatives = std::vector<std::vector<Formula>>;
  switch (f.kind()) {
    case FormulaKind::And: return Alternatives{{f.left(), f.right()}};
    case FormulaKind::Or: return Alternatives{{f.left()}, {f.right()}};
    case FormulaKind::Box:
    case FormulaKind::Diamond: break;
    default: return std::nullopt;
  }
  const bool b = f.is_box();
  auto wrap = [b](Program p, Formula body) { return b ? box(p, body) : diamond(p, body); };
  const Program p = f.program();
  const Formula body = f.body();
  switch (p.kind()) {
    case ProgramKind::Atomic:
      return std::nullopt;
    case ProgramKind::Seq:
      return Alternatives{{wrap(p.left(), wrap(p.right(), body))}};
    case ProgramKind::Union:
      if (b) return Alternatives{{box(p.left(), body), box(p.right(), body)}};
      return Alternatives{{diamond(p.left(), body)}, {diamond(p.right(), body)}};
    case ProgramKind::Test:
      if (b) return Alternatives{{negate_nnf(p.condition())}, {body}};
      return Alternatives{{p.condition(), body}};
    case ProgramKind::Star:
      if (b) return Alternatives{{body, box(p.body(), f)}};
      return Alternatives{{body}, {diamond(p.body(), f)}};
  }
  return std::nullopt;
}

Formula trace_successor(Formula f, std::size_t branch) {
  if (!f.is_diamond()) throw InternalError("trace_successor: not a diamond: " + to_string(f));
  const Program p = f.program();
  switch (p.kind()) {
    case ProgramKind::Seq: return diamond(p.left(), diamond(p.right(), f.body()));
    case ProgramKind::Union: return diamond(branch == 0 ? p.left() : p.right(), f.body());
    case ProgramKind::Test: return f.body();
    case ProgramKind::Star: return branch == 0 ? f.body() : diamond(p.body(), f);
    case ProgramKind::Atomic: break;
  }
  throw InternalError("trace_successor: atomic diamond " + to_string(f));
}

std::optional<RuleInstance> applicable_rule(const NodeContents& contents, std::span<const Formula>) {
  return contents.kind == NodeKind::Simple ? select_simple(contents) : select_complex(contents);
}

std::vector<Conclusion> apply_rule(const NodeContents& contents, const RuleInstance& inst,
                                   std::span<const Formula> gamma) {
  if (is_primed(inst.rule) != (contents.kind == NodeKind::Complex))
    throw InternalError(std::string("rule ") + rule_name(inst.rule) + " applied to the wrong node kind");
  if (!is_transitional(inst.rule) && !inst.principal)
    throw InternalError(std::string("rule ") + rule_name(inst.rule) + " needs a principal");
  return contents.kind == NodeKind::Simple ? apply_simple(contents, inst, gamma)
                                           : apply_complex(contents, inst, gamma);
}

}  // namespace pdl
