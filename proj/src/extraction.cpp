#include "pdl/extraction.hpp"

#include <deque>
#include <map>

#include "pdl/errors.hpp"
#include "pdl/normal_form.hpp"

namespace pdl {

// ---- model graph checks ----

std::vector<std::string> saturation_violations(const ModelGraph& m) {
  std::vector<std::string> out;
  for (std::size_t v = 0; v < m.size(); ++v) {
    const FormulaSet& h = m.labels[v];
    auto has = [&](Formula f) { return set_contains(h, f); };
    auto report = [&](Formula f, const std::string& what) {
      out.push_back(m.names[v] + ": " + to_string(f) + " " + what);
    };
    for (Formula f : h) {
      switch (f.kind()) {
        case FormulaKind::And:
          if (!has(f.left()) || !has(f.right())) report(f, "without both conjuncts");
          break;
        case FormulaKind::Or:
          if (!has(f.left()) && !has(f.right())) report(f, "without a disjunct");
          break;
        case FormulaKind::Diamond:
          if (f.program().kind() == ProgramKind::Test && !has(f.program().condition())) report(f, "without its test");
          break;
        case FormulaKind::Box: {
          const Program p = f.program();
          const Formula body = f.body();
          switch (p.kind()) {
            case ProgramKind::Seq:
              if (!has(box(p.left(), box(p.right(), body)))) report(f, "not unfolded");
              break;
            case ProgramKind::Union:
              if (!has(box(p.left(), body)) || !has(box(p.right(), body))) report(f, "not unfolded");
              break;
            case ProgramKind::Test:
              if (!has(negate_nnf(p.condition())) && !has(body)) report(f, "not unfolded");
              break;
            case ProgramKind::Star:
              if (!has(body) || !has(box(p.body(), f))) report(f, "not unfolded");
              break;
            case ProgramKind::Atomic: {
              auto it = m.relations.find(p.name());
              if (it == m.relations.end()) break;
              for (const auto& [from, to] : it->second)
                if (from == v && !set_contains(m.labels[to], body))
                  report(f, "but " + m.names[to] + " lacks " + to_string(body));
              break;
            }
          }
          break;
        }
        default:
          break;
      }
    }
  }
  return out;
}

std::vector<std::string> consistency_violations(const ModelGraph& m) {
  std::vector<std::string> out;
  // Local consistency.
  for (std::size_t v = 0; v < m.size(); ++v) {
    const FormulaSet& h = m.labels[v];
    if (set_contains(h, bottom())) out.push_back(m.names[v] + ": contains false");
    for (Formula f : h)
      if (f.kind() == FormulaKind::Prop && set_contains(h, neg(f)))
        out.push_back(m.names[v] + ": clash on " + to_string(f));
  }
  // Global consistency: every ⟨α⟩φ reaches a non-diamond along traces.
  std::vector<std::pair<std::size_t, Formula>> nodes;
  std::map<std::pair<std::size_t, Formula>, std::size_t> index;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (Formula f : m.labels[v]) {
      index.emplace(std::pair{v, f}, nodes.size());
      nodes.emplace_back(v, f);
    }
  std::vector<std::vector<std::size_t>> reverse(nodes.size());
  auto link = [&](std::size_t from, std::size_t v, Formula f) {
    if (auto it = index.find({v, f}); it != index.end()) reverse[it->second].push_back(from);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [v, f] = nodes[i];
    if (!f.is_diamond()) continue;
    const Program p = f.program();
    switch (p.kind()) {
      case ProgramKind::Seq: link(i, v, diamond(p.left(), diamond(p.right(), f.body()))); break;
      case ProgramKind::Union:
        link(i, v, diamond(p.left(), f.body()));
        link(i, v, diamond(p.right(), f.body()));
        break;
      case ProgramKind::Star:
        link(i, v, f.body());
        link(i, v, diamond(p.body(), f));
        break;
      case ProgramKind::Test: link(i, v, f.body()); break;
      case ProgramKind::Atomic:
        if (auto it = m.relations.find(p.name()); it != m.relations.end())
          for (const auto& [from, to] : it->second)
            if (from == v) link(i, to, f.body());
        break;
    }
  }
  std::vector<bool> productive(nodes.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!nodes[i].second.is_diamond()) {
      productive[i] = true;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i : reverse[j])
      if (!productive[i]) {
        productive[i] = true;
        queue.push_back(i);
      }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!productive[i]) out.push_back(m.names[nodes[i].first] + ": unrealized " + to_string(nodes[i].second));
  return out;
}

KripkeModel to_kripke(const ModelGraph& m) {
  KripkeModel k(m.size());
  k.state_names = m.names;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (Formula f : m.labels[v])
      if (f.kind() == FormulaKind::Prop) k.set_prop(f.name(), v);
  for (const auto& [sigma, pairs] : m.relations) {
    k.declare_relation(sigma);
    for (const auto& [from, to] : pairs) k.add_edge(sigma, from, to);
  }
  for (const auto& [a, v] : m.variables) k.set_var(a, v);
  return k;
}

// ---- saturation paths ----

namespace {

// The first trace-graph step along a shortest path to an end t-node.
const TraceGraph::TEdge& shortest_step(const TraceGraph& t, std::size_t i) {
  const std::size_t d = t.distance(i);
  if (d == TraceGraph::kUnreachable || d == 0) throw InternalError("no realization step from an end or unproductive t-node");
  for (const auto& e : t.successors(i))
    if (t.distance(e.target) == d - 1) return e;
  throw InternalError("trace-graph distances are inconsistent");
}

NodeId first_member_successor(const AndOrGraph& g, const Marking& m, NodeId v) {
  for (const Edge& e : g.node(v).out_edges)
    if (m.contains(e.target)) return e.target;
  throw InternalError("or-node " + std::to_string(v) + " has no successor in the marking");
}

}  // namespace

std::vector<NodeId> saturation_path(const AndOrGraph& g, const Marking& m, const TraceGraph& t, NodeId v) {
  std::vector<NodeId> path{v};
  NodeId cur = v;
  const std::size_t guard = 4 * g.size() + 16;
  while (g.node(cur).node_class == NodeClass::Or) {
    if (path.size() > guard) throw InternalError("saturation path does not terminate");
    const TableauNode& n = g.node(cur);
    const Formula* principal = n.rule && n.rule->principal ? std::get_if<Formula>(&*n.rule->principal) : nullptr;
    if (!principal || !principal->is_diamond()) {
      cur = first_member_successor(g, m, cur);
      path.push_back(cur);
      continue;
    }
    // Follow a realization of the eventuality through or-nodes until it is
    // fulfilled or an "and"-node is reached.
    auto i = t.find(cur, *n.rule->principal);
    if (!i) throw InternalError("missing t-node for principal " + to_string(*principal));
    do {
      *i = shortest_step(t, *i).target;
      cur = t.node(*i).node;
      path.push_back(cur);
    } while (!t.is_end(*i) && g.node(cur).node_class == NodeClass::Or);
  }
  return path;
}

// ---- extraction ----

namespace {

class Extractor {
 public:
  Extractor(const AndOrGraph& g, const Marking& m) : g_(g), m_(m), t_(build_trace_graph(g, m)) {}

  Extraction run() {
    const NodeId vk = saturation_path(g_, m_, t_, m_.root).back();
    if (g_.node(vk).contents.kind == NodeKind::Simple) {
      state_for(vk, "tau");
    } else {
      seed_variables(vk);
    }
    while (!pending_.empty()) {
      const std::size_t w = pending_.front();
      pending_.pop_front();
      resolve(w);
    }
    Extraction out;
    out.graph = std::move(graph_);
    out.model = to_kripke(out.graph);
    out.root_state = 0;
    return out;
  }

 private:
  std::size_t state_for(NodeId u, const std::string& name = {}) {
    const NodeContents& c = g_.node(u).contents;
    std::vector<Formula> h = c.formulas();
    for (const Item& item : c.rfs) h.push_back(std::get<Formula>(item));
    FormulaSet label = make_set(std::move(h));
    if (auto it = by_label_.find(label); it != by_label_.end()) return it->second;
    const std::size_t w = graph_.size();
    graph_.names.push_back(name.empty() ? "w" + std::to_string(fresh_++) : name);
    by_label_.emplace(label, w);
    graph_.labels.push_back(std::move(label));
    origin_.push_back(u);
    pending_.push_back(w);
    return w;
  }

  void seed_variables(NodeId vk) {
    const NodeContents& c = g_.node(vk).contents;
    Signature sig;
    for (const Item& item : c.label) sig.add(std::get<Assertion>(item));
    sig.normalize();
    for (const std::string& a : sig.variables) {
      const std::size_t w = graph_.size();
      graph_.names.push_back(a);
      graph_.labels.push_back(make_set(c.projection(a)));
      graph_.variables.emplace(a, w);
      by_label_.emplace(graph_.labels.back(), w);
      origin_.push_back(vk);
    }
    for (const Item& item : c.label) {
      const Assertion& a = std::get<Assertion>(item);
      if (a.is_role())
        graph_.relations[a.role()].emplace(graph_.variables.at(a.subject()), graph_.variables.at(a.object()));
    }
    for (const std::string& a : sig.variables) {
      for (const Item& item : c.label) {
        const Assertion& x = std::get<Assertion>(item);
        if (x.is_concept() && x.subject() == a && x.formula().is_diamond() && x.formula().program().is_atomic())
          realize(graph_.variables.at(a), vk, item);
      }
    }
  }

  void resolve(std::size_t w) {
    const NodeId u = origin_[w];
    for (const Item& item : g_.node(u).contents.label) {
      const Formula f = std::get<Formula>(item);
      if (f.is_diamond() && f.program().is_atomic()) realize(w, u, item);
    }
  }

  // Realizes the eventuality `tracked` (an atomic diamond in L(u), or its
  // a:-form at a complex node) starting from state w with f(w) = u.
  void realize(std::size_t w, NodeId u, const Item& tracked) {
    auto i = t_.find(u, tracked);
    if (!i) throw InternalError("missing t-node for " + to_string(tracked));
    std::size_t from = w;
    std::string sigma;
    bool first = true;
    auto program_of = [](const Item& item) {
      const Formula* f = std::get_if<Formula>(&item);
      return (f ? *f : std::get<Assertion>(item).formula()).program().name();
    };
    while (!t_.is_end(*i)) {
      const auto& step = shortest_step(t_, *i);
      const NodeId at = t_.node(*i).node;
      if (step.graph_edge && g_.node(at).node_class == NodeClass::And) {
        if (!first) {
          const std::size_t to = state_for(at);
          graph_.relations[sigma].emplace(from, to);
          from = to;
        }
        first = false;
        sigma = program_of(t_.node(*i).tracked);
      }
      *i = step.target;
    }
    const NodeId last = saturation_path(g_, m_, t_, t_.node(*i).node).back();
    const std::size_t to = state_for(last);
    graph_.relations[sigma].emplace(from, to);
  }

  const AndOrGraph& g_;
  const Marking& m_;
  const TraceGraph t_;
  ModelGraph graph_;
  std::map<FormulaSet, std::size_t> by_label_;
  std::vector<NodeId> origin_;  // f(w)
  std::deque<std::size_t> pending_;
  std::size_t fresh_ = 1;
};

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

Extraction extract_model(const AndOrGraph& g, const Marking& m) {
  if (auto problems = verify_marking(g, m); !problems.empty())
    throw InternalError("extract_model: marking is not consistent:" + join(problems));
  Extraction out = Extractor(g, m).run();
  auto problems = saturation_violations(out.graph);
  auto more = consistency_violations(out.graph);
  problems.insert(problems.end(), more.begin(), more.end());
  if (!problems.empty()) throw InternalError("extract_model: model graph check failed:" + join(problems));
  return out;
}

Extraction extract_model(const Verdict& verdict) {
  if (!verdict.satisfiable || !verdict.witness || !verdict.graph)
    throw std::invalid_argument("extract_model: verdict has no witness");
  return extract_model(*verdict.graph, *verdict.witness);
}

}  // namespace pdl
