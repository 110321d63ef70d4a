#include "pdl/kripke.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include "pdl/errors.hpp"

namespace pdl {

// ---- Relation ----

Relation Relation::identity(std::size_t states) {
  Relation r(states);
  for (std::size_t i = 0; i < states; ++i) r.insert(i, i);
  return r;
}

Relation Relation::diagonal(const StateSet& states) {
  Relation r(states.size());
  for (std::size_t i = states.find_first(); i != StateSet::npos; i = states.find_next(i)) r.insert(i, i);
  return r;
}

std::size_t Relation::pair_count() const {
  std::size_t n = 0;
  for (const StateSet& row : rows_) n += row.count();
  return n;
}

Relation Relation::operator|(const Relation& other) const {
  Relation r = *this;
  for (std::size_t i = 0; i < rows_.size(); ++i) r.rows_[i] |= other.rows_[i];
  return r;
}

Relation Relation::compose(const Relation& other) const {
  Relation r(states());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = rows_[i].find_first(); j != StateSet::npos; j = rows_[i].find_next(j))
      r.rows_[i] |= other.rows_[j];
  return r;
}

Relation Relation::star() const {
  Relation r = identity(states()) | *this;
  while (true) {
    Relation squared = r.compose(r);
    if (squared == r) return r;
    r = std::move(squared);
  }
}

StateSet Relation::preimage(const StateSet& target) const {
  StateSet out(states());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].intersects(target)) out.set(i);
  return out;
}

// ---- KripkeModel ----

KripkeModel::KripkeModel(std::size_t states) : states_(states) {}

void KripkeModel::declare_prop(std::string_view p) {
  if (props_.find(p) == props_.end()) props_.emplace(std::string(p), StateSet(states_));
}

void KripkeModel::declare_relation(std::string_view sigma) {
  if (relations_.find(sigma) == relations_.end()) relations_.emplace(std::string(sigma), Relation(states_));
}

void KripkeModel::set_prop(std::string_view p, std::size_t state) {
  if (state >= states_) throw std::out_of_range("proposition assigned to a missing state");
  declare_prop(p);
  props_.find(p)->second.set(state);
}

void KripkeModel::add_edge(std::string_view sigma, std::size_t from, std::size_t to) {
  if (from >= states_ || to >= states_) throw std::out_of_range("relation pair on a missing state");
  declare_relation(sigma);
  relations_.find(sigma)->second.insert(from, to);
}

void KripkeModel::set_var(std::string_view a, std::size_t state) {
  if (state >= states_) throw std::out_of_range("state variable assigned to a missing state");
  vars_.insert_or_assign(std::string(a), state);
}

StateSet KripkeModel::prop(std::string_view p) const {
  auto it = props_.find(p);
  return it == props_.end() ? StateSet(states_) : it->second;
}

Relation KripkeModel::relation(std::string_view sigma) const {
  auto it = relations_.find(sigma);
  return it == relations_.end() ? Relation(states_) : it->second;
}

std::optional<std::size_t> KripkeModel::var(std::string_view a) const {
  auto it = vars_.find(a);
  if (it == vars_.end()) return std::nullopt;
  return it->second;
}

bool KripkeModel::operator==(const KripkeModel& other) const {
  return states_ == other.states_ && props_ == other.props_ && relations_ == other.relations_ &&
         vars_ == other.vars_;
}

// ---- evaluation ----

Relation eval_program(const KripkeModel& m, Program alpha) {
  switch (alpha.kind()) {
    case ProgramKind::Atomic: return m.relation(alpha.name());
    case ProgramKind::Seq: return eval_program(m, alpha.left()).compose(eval_program(m, alpha.right()));
    case ProgramKind::Union: return eval_program(m, alpha.left()) | eval_program(m, alpha.right());
    case ProgramKind::Star: return eval_program(m, alpha.body()).star();
    case ProgramKind::Test: return Relation::diagonal(eval_formula(m, alpha.condition()));
  }
  return Relation(m.size());
}

StateSet eval_formula(const KripkeModel& m, Formula phi) {
  const std::size_t n = m.size();
  switch (phi.kind()) {
    case FormulaKind::Top: return StateSet(n).set();
    case FormulaKind::Bottom: return StateSet(n);
    case FormulaKind::Prop: return m.prop(phi.name());
    case FormulaKind::Not: return ~eval_formula(m, phi.body());
    case FormulaKind::And: return eval_formula(m, phi.left()) & eval_formula(m, phi.right());
    case FormulaKind::Or: return eval_formula(m, phi.left()) | eval_formula(m, phi.right());
    case FormulaKind::Implies: return ~eval_formula(m, phi.left()) | eval_formula(m, phi.right());
    case FormulaKind::Diamond: return eval_program(m, phi.program()).preimage(eval_formula(m, phi.body()));
    case FormulaKind::Box:
      return ~eval_program(m, phi.program()).preimage(~eval_formula(m, phi.body()));
  }
  return StateSet(n);
}

bool model_check(const KripkeModel& m, std::size_t w, Formula phi) { return eval_formula(m, phi).test(w); }

bool validate(const KripkeModel& m, std::span<const Formula> gamma) {
  for (Formula g : gamma)
    if (!eval_formula(m, g).all()) return false;
  return true;
}

bool satisfies_at(const KripkeModel& m, std::size_t w, std::span<const Formula> x) {
  for (Formula f : x)
    if (!model_check(m, w, f)) return false;
  return true;
}

bool satisfies_abox(const KripkeModel& m, std::span<const Assertion> abox) {
  auto lookup = [&](const std::string& a) {
    auto s = m.var(a);
    if (!s) throw std::invalid_argument("state variable '" + a + "' has no assigned state");
    return *s;
  };
  for (const Assertion& a : abox) {
    if (a.is_concept()) {
      if (!model_check(m, lookup(a.subject()), a.formula())) return false;
    } else if (!m.relation(a.role()).contains(lookup(a.subject()), lookup(a.object()))) {
      return false;
    }
  }
  return true;
}

// ---- serialization ----

std::string serialize(const KripkeModel& m) {
  std::ostringstream os;
  os << "states: " << m.size() << '\n';
  for (const auto& [p, set] : m.props()) {
    os << "prop " << p << ':';
    for (std::size_t i = set.find_first(); i != StateSet::npos; i = set.find_next(i)) os << ' ' << i;
    os << '\n';
  }
  for (const auto& [s, rel] : m.relations()) {
    os << "rel " << s << ':';
    for (std::size_t i = 0; i < rel.states(); ++i)
      for (std::size_t j = rel.successors(i).find_first(); j != StateSet::npos; j = rel.successors(i).find_next(j))
        os << " (" << i << ',' << j << ')';
    os << '\n';
  }
  for (const auto& [a, i] : m.vars()) os << "var " << a << " = " << i << '\n';
  return os.str();
}

KripkeModel deserialize(std::string_view text) {
  static const std::regex states_re(R"(\s*states:\s*(\d+)\s*)");
  static const std::regex prop_re(R"(\s*prop\s+([A-Za-z_]\w*)\s*:((?:\s*\d+)*)\s*)");
  static const std::regex rel_re(R"(\s*rel\s+([A-Za-z_]\w*)\s*:((?:\s*\(\s*\d+\s*,\s*\d+\s*\))*)\s*)");
  static const std::regex var_re(R"(\s*var\s+([A-Za-z_]\w*)\s*=\s*(\d+)\s*)");
  static const std::regex pair_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  static const std::regex number_re(R"(\d+)");

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<KripkeModel> model;
  auto state = [&](const std::string& digits) {
    const std::size_t i = std::stoul(digits);
    if (i >= model->size()) throw ParseError("state " + digits + " out of range", line_no, 1);
    return i;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch match;
    if (std::regex_match(line, match, states_re)) {
      if (model) throw ParseError("duplicate 'states:' line", line_no, 1);
      model.emplace(std::stoul(match[1]));
      continue;
    }
    if (!model) throw ParseError("expected 'states: n' first", line_no, 1);
    if (std::regex_match(line, match, prop_re)) {
      const std::string name = match[1], rest = match[2];
      model->declare_prop(name);
      for (std::sregex_iterator it(rest.begin(), rest.end(), number_re), end; it != end; ++it)
        model->set_prop(name, state(it->str()));
    } else if (std::regex_match(line, match, rel_re)) {
      const std::string name = match[1], rest = match[2];
      model->declare_relation(name);
      for (std::sregex_iterator it(rest.begin(), rest.end(), pair_re), end; it != end; ++it)
        model->add_edge(name, state((*it)[1]), state((*it)[2]));
    } else if (std::regex_match(line, match, var_re)) {
      model->set_var(match[1].str(), state(match[2]));
    } else {
      throw ParseError("unrecognized model line: " + line, line_no, 1);
    }
  }
  if (!model) throw ParseError("missing 'states: n' line", line_no, 1);
  return *model;
}

}  // namespace pdl
