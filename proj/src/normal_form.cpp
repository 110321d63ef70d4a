#include "pdl/normal_form.hpp"

#include <stdexcept>

namespace pdl {

bool is_nnf(Program p) {
  switch (p.kind()) {
    case ProgramKind::Atomic: return true;
    case ProgramKind::Seq:
    case ProgramKind::Union: return is_nnf(p.left()) && is_nnf(p.right());
    case ProgramKind::Star: return is_nnf(p.body());
    case ProgramKind::Test: return is_nnf(p.condition());
  }
  return false;
}

bool is_nnf(Formula f) {
  switch (f.kind()) {
    case FormulaKind::Top:
    case FormulaKind::Bottom:
    case FormulaKind::Prop: return true;
    case FormulaKind::Not: return f.body().kind() == FormulaKind::Prop;
    case FormulaKind::And:
    case FormulaKind::Or: return is_nnf(f.left()) && is_nnf(f.right());
    case FormulaKind::Implies: return false;
    case FormulaKind::Diamond:
    case FormulaKind::Box: return is_nnf(f.program()) && is_nnf(f.body());
  }
  return false;
}

namespace {

Formula nnf(Formula f, bool negated);

Formula nnf(Formula f, bool negated) {
  switch (f.kind()) {
    case FormulaKind::Top: return negated ? bottom() : top();
    case FormulaKind::Bottom: return negated ? top() : bottom();
    case FormulaKind::Prop: return negated ? neg(f) : f;
    case FormulaKind::Not: return nnf(f.body(), !negated);
    case FormulaKind::And: {
      Formula l = nnf(f.left(), negated), r = nnf(f.right(), negated);
      return negated ? disj(l, r) : conj(l, r);
    }
    case FormulaKind::Or: {
      Formula l = nnf(f.left(), negated), r = nnf(f.right(), negated);
      return negated ? conj(l, r) : disj(l, r);
    }
    case FormulaKind::Implies: {
      Formula l = nnf(f.left(), !negated), r = nnf(f.right(), negated);
      return negated ? conj(l, r) : disj(l, r);
    }
    case FormulaKind::Diamond: {
      Program p = to_nnf(f.program());
      Formula body = nnf(f.body(), negated);
      return negated ? box(p, body) : diamond(p, body);
    }
    case FormulaKind::Box: {
      Program p = to_nnf(f.program());
      Formula body = nnf(f.body(), negated);
      return negated ? diamond(p, body) : box(p, body);
    }
  }
  return f;
}

}  // namespace

Program to_nnf(Program p) {
  switch (p.kind()) {
    case ProgramKind::Atomic: return p;
    case ProgramKind::Seq: return seq(to_nnf(p.left()), to_nnf(p.right()));
    case ProgramKind::Union: return choice(to_nnf(p.left()), to_nnf(p.right()));
    case ProgramKind::Star: return star(to_nnf(p.body()));
    case ProgramKind::Test: return test(nnf(p.condition(), false));
  }
  return p;
}

Formula to_nnf(Formula f) { return nnf(f, false); }

Formula negate_nnf(Formula f) {
  if (!is_nnf(f)) throw std::invalid_argument("negate_nnf: formula is not in NNF: " + to_string(f));
  // Programs of an NNF formula are already normalized, so nnf() leaves them
  // unchanged and only the outer connectives are dualized.
  return nnf(f, true);
}

}  // namespace pdl
