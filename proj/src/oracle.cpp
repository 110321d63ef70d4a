#include "pdl/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pdl/errors.hpp"

namespace pdl {

Signature OracleProblem::signature() const {
  Signature sig;
  for (Formula f : goal) sig.add(f);
  for (Formula f : gamma) sig.add(f);
  for (const Assertion& a : abox) sig.add(a);
  sig.normalize();
  return sig;
}

namespace {

constexpr std::size_t kMaxStates = 4;
using Mask = std::uint32_t;
using Rel = std::array<Mask, kMaxStates>;  // successor mask per state

// Evaluates formulas over one small model with state sets as bit masks.
class SmallModel {
 public:
  SmallModel(std::size_t n, const Signature& sig) : n_(n), full_((Mask{1} << n) - 1), sig_(sig) {
    props_.assign(sig.propositions.size(), 0);
    rels_.assign(sig.programs.size(), Rel{});
  }

  Mask full() const { return full_; }
  std::vector<Mask>& props() { return props_; }
  std::vector<Rel>& rels() { return rels_; }

  Mask eval(Formula f) {
    switch (f.kind()) {
      case FormulaKind::Top: return full_;
      case FormulaKind::Bottom: return 0;
      case FormulaKind::Prop: return props_[index(sig_.propositions, f.name())];
      case FormulaKind::Not: return full_ & ~eval(f.body());
      case FormulaKind::And: return eval(f.left()) & eval(f.right());
      case FormulaKind::Or: return eval(f.left()) | eval(f.right());
      case FormulaKind::Implies: return (full_ & ~eval(f.left())) | eval(f.right());
      case FormulaKind::Diamond: return pre(program(f.program()), eval(f.body()));
      case FormulaKind::Box: return full_ & ~pre(program(f.program()), full_ & ~eval(f.body()));
    }
    return 0;
  }

  Rel program(Program p) {
    switch (p.kind()) {
      case ProgramKind::Atomic: return rels_[index(sig_.programs, p.name())];
      case ProgramKind::Seq: return compose(program(p.left()), program(p.right()));
      case ProgramKind::Union: {
        Rel a = program(p.left()), b = program(p.right());
        for (std::size_t i = 0; i < n_; ++i) a[i] |= b[i];
        return a;
      }
      case ProgramKind::Star: {
        Rel r = program(p.body());
        for (std::size_t i = 0; i < n_; ++i) r[i] |= Mask{1} << i;
        while (true) {
          Rel sq = compose(r, r);
          if (sq == r) return r;
          r = sq;
        }
      }
      case ProgramKind::Test: {
        const Mask m = eval(p.condition());
        Rel r{};
        for (std::size_t i = 0; i < n_; ++i)
          if (m >> i & 1) r[i] = Mask{1} << i;
        return r;
      }
    }
    return Rel{};
  }

  KripkeModel to_model() const {
    KripkeModel k(n_);
    for (std::size_t p = 0; p < props_.size(); ++p) {
      k.declare_prop(sig_.propositions[p]);
      for (std::size_t i = 0; i < n_; ++i)
        if (props_[p] >> i & 1) k.set_prop(sig_.propositions[p], i);
    }
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      k.declare_relation(sig_.programs[r]);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (rels_[r][i] >> j & 1) k.add_edge(sig_.programs[r], i, j);
    }
    return k;
  }

 private:
  static std::size_t index(const std::vector<std::string>& names, const std::string& name) {
    return static_cast<std::size_t>(std::lower_bound(names.begin(), names.end(), name) - names.begin());
  }

  Rel compose(const Rel& a, const Rel& b) const {
    Rel r{};
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (a[i] >> j & 1) r[i] |= b[j];
    return r;
  }

  Mask pre(const Rel& r, Mask target) const {
    Mask out = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (r[i] & target) out |= Mask{1} << i;
    return out;
  }

  std::size_t n_;
  Mask full_;
  const Signature& sig_;
  std::vector<Mask> props_;
  std::vector<Rel> rels_;
};

// Increments a little-endian vector of counters with the given radix.
bool next(std::vector<std::uint64_t>& digits, std::uint64_t radix) {
  for (auto& d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

}  // namespace

std::optional<KripkeModel> find_small_model(const OracleProblem& problem, const Signature& sig,
                                            OracleOptions options) {
  if (options.max_states > kMaxStates)
    throw ResourceError("oracle supports at most " + std::to_string(kMaxStates) + " states");
  const std::size_t vars = sig.variables.size();
  std::uint64_t spent = 0;
  for (std::size_t n = 1; n <= options.max_states; ++n) {
    const std::uint64_t valuations = std::uint64_t{1} << n;     // per proposition
    const std::uint64_t relations = std::uint64_t{1} << (n * n);  // per program
    SmallModel model(n, sig);
    std::vector<std::uint64_t> prop_digits(sig.propositions.size(), 0);
    std::vector<std::uint64_t> rel_digits(sig.programs.size(), 0);
    do {
      for (std::size_t r = 0; r < rel_digits.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
          model.rels()[r][i] = static_cast<Mask>(rel_digits[r] >> (i * n)) & model.full();
      do {
        for (std::size_t p = 0; p < prop_digits.size(); ++p) model.props()[p] = static_cast<Mask>(prop_digits[p]);
        if (++spent > options.budget) throw ResourceError("oracle enumeration budget exceeded");

        bool valid = true;
        for (Formula g : problem.gamma)
          if (model.eval(g) != model.full()) {
            valid = false;
            break;
          }
        if (!valid) continue;

        Mask goal = model.full();
        for (Formula f : problem.goal) goal &= model.eval(f);
        if (!goal) continue;

        if (problem.abox.empty()) {
          KripkeModel k = model.to_model();
          return k;
        }
        // Evaluate every concept once, then search variable assignments.
        std::vector<std::pair<const Assertion*, Mask>> concepts;
        for (const Assertion& a : problem.abox)
          if (a.is_concept()) concepts.emplace_back(&a, model.eval(a.formula()));
        auto var_index = [&](const std::string& a) {
          return static_cast<std::size_t>(std::lower_bound(sig.variables.begin(), sig.variables.end(), a) -
                                          sig.variables.begin());
        };
        std::vector<std::uint64_t> assign(vars, 0);
        do {
          if (++spent > options.budget) throw ResourceError("oracle enumeration budget exceeded");
          bool ok = std::all_of(concepts.begin(), concepts.end(), [&](const auto& c) {
            return c.second >> assign[var_index(c.first->subject())] & 1;
          });
          for (const Assertion& a : problem.abox) {
            if (!ok) break;
            if (a.is_role()) {
              const auto r = static_cast<std::size_t>(
                  std::lower_bound(sig.programs.begin(), sig.programs.end(), a.role()) - sig.programs.begin());
              ok = model.rels()[r][assign[var_index(a.subject())]] >> assign[var_index(a.object())] & 1;
            }
          }
          if (ok) {
            KripkeModel k = model.to_model();
            for (std::size_t v = 0; v < vars; ++v) k.set_var(sig.variables[v], assign[v]);
            return k;
          }
        } while (next(assign, n));
      } while (next(prop_digits, valuations));
    } while (next(rel_digits, relations));
  }
  return std::nullopt;
}

std::optional<KripkeModel> find_small_model(const OracleProblem& problem, OracleOptions options) {
  return find_small_model(problem, problem.signature(), options);
}

bool bounded_model_sat(const OracleProblem& problem, std::size_t max_states) {
  return find_small_model(problem, OracleOptions{max_states}).has_value();
}

}  // namespace pdl
