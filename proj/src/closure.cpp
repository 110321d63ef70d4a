#include "pdl/closure.hpp"

#include <stdexcept>
#include <unordered_set>

#include "pdl/normal_form.hpp"

namespace pdl {

namespace {

class ClosureBuilder {
 public:
  void formula(Formula f) {
    if (!expanded_.insert(f).second) return;
    add(f);
    switch (f.kind()) {
      case FormulaKind::And:
      case FormulaKind::Or:
        formula(f.left());
        formula(f.right());
        break;
      case FormulaKind::Box:
      case FormulaKind::Diamond:
        modal(f);
        formula(f.body());
        break;
      default:
        break;
    }
  }

  FormulaSet take() { return make_set(std::move(result_)); }

 private:
  // FL□ / FL◇: unfolds the outermost program of a modal formula without
  // descending into its body.
  void modal(Formula f) {
    if (!unfolded_.insert(f).second) return;
    add(f);
    const bool is_box = f.is_box();
    auto wrap = [is_box](Program p, Formula body) { return is_box ? box(p, body) : diamond(p, body); };
    const Program p = f.program();
    const Formula body = f.body();
    switch (p.kind()) {
      case ProgramKind::Atomic:
        break;
      case ProgramKind::Seq:
        modal(wrap(p.left(), wrap(p.right(), body)));
        modal(wrap(p.right(), body));
        break;
      case ProgramKind::Union:
        modal(wrap(p.left(), body));
        modal(wrap(p.right(), body));
        break;
      case ProgramKind::Star:
        modal(wrap(p.body(), f));
        break;
      case ProgramKind::Test:
        formula(is_box ? negate_nnf(p.condition()) : p.condition());
        break;
    }
  }

  void add(Formula f) {
    if (members_.insert(f).second) result_.push_back(f);
  }

  std::unordered_set<Formula> members_;
  std::unordered_set<Formula> expanded_;  // FL(f) taken
  std::unordered_set<Formula> unfolded_;  // FL□/FL◇(f) taken
  std::vector<Formula> result_;
};

}  // namespace

FormulaSet fl_closure(std::span<const Formula> formulas) {
  ClosureBuilder builder;
  for (Formula f : formulas) {
    if (!is_nnf(f)) throw std::invalid_argument("fl_closure: formula is not in NNF: " + to_string(f));
    builder.formula(f);
  }
  return builder.take();
}

std::size_t size_of(std::span<const Formula> formulas) {
  std::size_t total = 0;
  for (Formula f : formulas) total += f.length();
  return formulas.empty() ? 0 : total + formulas.size() - 1;
}

}  // namespace pdl
