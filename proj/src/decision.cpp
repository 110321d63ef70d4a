#include "pdl/decision.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_set>

#include "pdl/errors.hpp"
#include "pdl/normal_form.hpp"

namespace pdl {

// ---- NodeSet ----

bool NodeSet::insert(NodeId id) {
  if (id >= bits_.size()) bits_.resize(std::max<std::size_t>(id + 1, bits_.size() * 2), false);
  if (bits_[id]) return false;
  bits_[id] = true;
  ++count_;
  return true;
}

std::vector<NodeId> NodeSet::ids() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

// ---- UnsatNodes propagation ----

NodeSet update_unsat_nodes(AndOrGraph& g, NodeSet unsat, std::span<const NodeId> v_new) {
  std::deque<NodeId> queue;
  // Fathers of every given node are re-examined, including nodes that were
  // already unsat: the graph may have grown since they were marked.
  for (NodeId v : v_new) {
    unsat.insert(v);
    g.set_status(v, NodeStatus::Unsat);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : g.node(v).in_edges) {
      if (unsat.contains(u)) continue;
      const TableauNode& father = g.node(u);
      const bool dead =
          father.node_class == NodeClass::And ||
          (father.node_class == NodeClass::Or &&
           std::all_of(father.out_edges.begin(), father.out_edges.end(),
                       [&](const Edge& e) { return unsat.contains(e.target); }));
      if (dead) {
        unsat.insert(u);
        g.set_status(u, NodeStatus::Unsat);
        queue.push_back(u);
      }
    }
  }
  return unsat;
}

// ---- markings ----

std::optional<Marking> current_marking(const AndOrGraph& g, const NodeSet& unsat, NodeId root) {
  if (unsat.contains(root)) return std::nullopt;
  Marking m;
  m.root = root;
  std::deque<NodeId> queue{root};
  m.member_.insert(root);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    const auto& edges = g.node(v).out_edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const NodeId w = edges[i].target;
      if (unsat.contains(w)) continue;
      m.edges.push_back({v, i});
      if (m.member_.insert(w)) queue.push_back(w);
    }
  }
  m.nodes = m.member_.ids();
  std::sort(m.edges.begin(), m.edges.end(),
            [](const auto& a, const auto& b) { return std::tie(a.from, a.index) < std::tie(b.from, b.index); });
  return m;
}

// ---- trace graph ----

std::optional<std::size_t> TraceGraph::find(NodeId v, const Item& tracked) const {
  if (auto it = index_.find({v, tracked}); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t TraceGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.size();
  return n;
}

std::size_t TraceGraph::add(NodeId v, const Item& tracked) {
  auto [it, fresh] = index_.try_emplace({v, tracked}, nodes_.size());
  if (fresh) {
    nodes_.push_back({v, tracked});
    edges_.emplace_back();
    const Formula* f = std::get_if<Formula>(&tracked);
    end_.push_back(!(f ? f->is_diamond() : std::get<Assertion>(tracked).formula().is_diamond()));
  }
  return it->second;
}

namespace {

// Formulas a static trace of a:⟨α⟩ξ may continue with inside one complex
// label.
std::vector<Formula> static_trace_steps(Formula f) {
  const Program p = f.program();
  switch (p.kind()) {
    case ProgramKind::Seq: return {trace_successor(f, 0)};
    case ProgramKind::Union: return {trace_successor(f, 0), trace_successor(f, 1)};
    case ProgramKind::Test: return {f.body()};
    case ProgramKind::Star: return {trace_successor(f, 0), trace_successor(f, 1)};
    case ProgramKind::Atomic: return {};
  }
  return {};
}

bool has_tnodes(const TableauNode& n) {
  return n.contents.kind == NodeKind::Simple || n.node_class != NodeClass::Or;
}

}  // namespace

TraceGraph build_trace_graph(const AndOrGraph& g, const Marking& m) {
  TraceGraph t;
  for (NodeId v : m.nodes) {
    const TableauNode& n = g.node(v);
    if (!has_tnodes(n)) continue;
    for (const Item& item : n.contents.label) {
      const Assertion* a = std::get_if<Assertion>(&item);
      if (a && !a->is_concept()) continue;
      t.add(v, item);
    }
  }
  auto link = [&](std::size_t from, NodeId w, const Item& tracked, std::optional<std::size_t> graph_edge) {
    if (auto to = t.find(w, tracked)) t.edges_[from].push_back({*to, graph_edge});
  };

  const std::size_t count = t.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (t.end_[i]) continue;
    const NodeId v = t.nodes_[i].node;
    const Item tracked = t.nodes_[i].tracked;
    const TableauNode& n = g.node(v);
    const auto& edges = n.out_edges;

    if (n.contents.kind == NodeKind::Simple) {
      const Formula f = std::get<Formula>(tracked);
      if (n.node_class == NodeClass::Or) {
        const bool principal = n.rule->principal && *n.rule->principal == tracked;
        for (std::size_t k = 0; k < edges.size(); ++k) {
          if (!m.contains(edges[k].target)) continue;
          link(i, edges[k].target, principal ? Item{trace_successor(f, k)} : tracked, k);
        }
      } else if (n.node_class == NodeClass::And) {
        for (std::size_t k = 0; k < edges.size(); ++k)
          if (edges[k].label && *edges[k].label == tracked) link(i, edges[k].target, Item{f.body()}, k);
      }
      continue;
    }

    // Complex "and"-node or end node: static steps inside the label, then
    // the matching (trans′) edge for an atomic diamond.
    const Assertion& a = std::get<Assertion>(tracked);
    const Formula f = a.formula();
    if (!f.program().is_atomic()) {
      for (Formula next : static_trace_steps(f)) link(i, v, Item{Assertion::concept_of(a.subject(), next)}, std::nullopt);
    } else {
      for (std::size_t k = 0; k < edges.size(); ++k)
        if (edges[k].label && *edges[k].label == tracked) link(i, edges[k].target, Item{f.body()}, k);
    }
  }

  // Distance to an end t-node by reverse breadth-first search.
  std::vector<std::vector<std::size_t>> reverse(count);
  for (std::size_t i = 0; i < count; ++i)
    for (const auto& e : t.edges_[i]) reverse[e.target].push_back(i);
  t.distance_.assign(count, TraceGraph::kUnreachable);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < count; ++i)
    if (t.end_[i]) {
      t.distance_[i] = 0;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i : reverse[j])
      if (t.distance_[i] == TraceGraph::kUnreachable) {
        t.distance_[i] = t.distance_[j] + 1;
        queue.push_back(i);
      }
  }
  return t;
}

std::vector<std::string> verify_marking(const AndOrGraph& g, const Marking& m) {
  std::vector<std::string> problems;
  auto report = [&](NodeId v, const std::string& what) {
    problems.push_back("node " + std::to_string(v) + ": " + what);
  };
  if (!m.contains(m.root)) report(m.root, "root is not a member");
  for (const auto& e : m.edges) {
    if (!m.contains(e.from) || !m.contains(g.node(e.from).out_edges[e.index].target))
      report(e.from, "edge leaves the marking");
  }
  for (NodeId v : m.nodes) {
    const TableauNode& n = g.node(v);
    if (n.contents.contains(Item{bottom()})) report(v, "label with false in marking");
    std::size_t kept = 0;
    for (std::size_t k = 0; k < n.out_edges.size(); ++k)
      if (m.contains(n.out_edges[k].target)) ++kept;
    if (n.node_class == NodeClass::Or && kept == 0) report(v, "or-node without member successor");
    if (n.node_class == NodeClass::And && kept != n.out_edges.size()) report(v, "and-node missing a successor");
  }
  const TraceGraph t = build_trace_graph(g, m);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t.is_end(i) && !t.is_productive(i))
      report(t.node(i).node, "unfulfilled eventuality " + to_string(t.node(i).tracked));
  return problems;
}

std::optional<Marking> find_consistent_marking(AndOrGraph& g, NodeSet& unsat, NodeId root,
                                               std::size_t* iterations) {
  std::vector<NodeId> known = unsat.ids();
  if (auto bot = g.bottom_node(); bot && !unsat.contains(*bot)) known.push_back(*bot);
  unsat = update_unsat_nodes(g, std::move(unsat), known);
  while (!unsat.contains(root)) {
    if (iterations) ++*iterations;
    std::optional<Marking> m = current_marking(g, unsat, root);
    const TraceGraph t = build_trace_graph(g, *m);
    std::vector<NodeId> failing;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!t.is_end(i) && !t.is_productive(i)) failing.push_back(t.node(i).node);
    if (failing.empty()) {
      for (NodeId v : m->nodes)
        if (unsat.contains(v)) throw InternalError("witness marking contains an unsat node");
      return m;
    }
    std::sort(failing.begin(), failing.end());
    failing.erase(std::unique(failing.begin(), failing.end()), failing.end());
    const std::size_t before = unsat.size();
    unsat = update_unsat_nodes(g, std::move(unsat), failing);
    if (unsat.size() == before) throw InternalError("marking loop made no progress");
  }
  return std::nullopt;
}

// ---- drivers ----

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<Formula> nnf_all(std::span<const Formula> formulas) {
  std::vector<Formula> out;
  out.reserve(formulas.size());
  for (Formula f : formulas) out.push_back(to_nnf(f));
  return out;
}

Verdict solve_rooted(std::shared_ptr<AndOrGraph> graph, const char* algorithm, Clock::time_point start) {
  Verdict verdict;
  NodeSet unsat;
  verdict.witness = find_consistent_marking(*graph, unsat, graph->root(), &verdict.stats.iterations);
  verdict.satisfiable = verdict.witness.has_value();
  if (verdict.satisfiable)
    for (NodeId v : verdict.witness->nodes) graph->set_status(v, NodeStatus::Sat);
  verdict.stats.nodes = graph->size();
  verdict.stats.algorithm = algorithm;
  verdict.graph = std::move(graph);
  verdict.stats.millis = millis_since(start);
  return verdict;
}

}  // namespace

std::vector<Assertion> to_nnf(std::span<const Assertion> abox) {
  std::vector<Assertion> out;
  out.reserve(abox.size());
  for (const Assertion& a : abox)
    out.push_back(a.is_concept() ? Assertion::concept_of(a.subject(), to_nnf(a.formula())) : a);
  return out;
}

Verdict check_sat(std::span<const Formula> x, std::span<const Formula> gamma, SolveOptions options) {
  const auto start = Clock::now();
  const auto nx = nnf_all(x), ng = nnf_all(gamma);
  auto graph = std::make_shared<AndOrGraph>(build_graph(nx, ng, options.graph));
  return solve_rooted(std::move(graph), "sat", start);
}

Verdict check_abox_sat(std::span<const Assertion> abox, std::span<const Formula> gamma, SolveOptions options) {
  const auto start = Clock::now();
  const auto na = to_nnf(abox);
  const auto ng = nnf_all(gamma);
  auto graph = std::make_shared<AndOrGraph>(build_graph_abox(na, ng, options.graph));
  return solve_rooted(std::move(graph), "cached", start);
}

namespace {

// Depth-first search over complex nodes. Unary rules are followed in place;
// branching rules try conclusions in canonical label order.
class Backtracker {
 public:
  Backtracker(std::vector<Formula> gamma, SolveOptions options)
      : options_(options), graph_(std::make_shared<AndOrGraph>(gamma, options.graph)) {}

  std::optional<Marking> search(NodeContents contents) {
    const std::span<const Formula> gamma = graph_->gamma();
    while (true) {
      if (failed_.count(contents)) return std::nullopt;
      ++visited_;
      if (visited_ + graph_->size() > options_.graph.max_nodes)
        throw ResourceError("node cap of " + std::to_string(options_.graph.max_nodes) + " exceeded");
      const auto rule = applicable_rule(contents, gamma);
      if (rule && is_clash(rule->rule)) {
        failed_.insert(std::move(contents));
        return std::nullopt;
      }
      if (!rule || is_transitional(rule->rule)) return leaf(std::move(contents));
      auto conclusions = apply_rule(contents, *rule, gamma);
      if (conclusions.size() == 1) {
        // Unary: nothing to choose. The visited prefix is remembered on
        // failure through the final node only.
        contents = std::move(conclusions.front().contents);
        continue;
      }
      std::sort(conclusions.begin(), conclusions.end(),
                [](const Conclusion& a, const Conclusion& b) { return a.contents.label < b.contents.label; });
      for (Conclusion& c : conclusions)
        if (auto m = search(std::move(c.contents))) return m;
      failed_.insert(std::move(contents));
      return std::nullopt;
    }
  }

  std::shared_ptr<AndOrGraph> graph() const { return graph_; }
  std::size_t visited() const { return visited_; }
  std::size_t iterations() const { return iterations_; }

 private:
  std::optional<Marking> leaf(NodeContents contents) {
    const NodeId id = graph_->intern(contents);
    graph_->expand_all_from(id);
    auto m = find_consistent_marking(*graph_, unsat_, id, &iterations_);
    if (!m) failed_.insert(std::move(contents));
    return m;
  }

  SolveOptions options_;
  std::shared_ptr<AndOrGraph> graph_;
  NodeSet unsat_;
  std::unordered_set<NodeContents> failed_;
  std::size_t visited_ = 0;
  std::size_t iterations_ = 0;
};

}  // namespace

Verdict check_abox_sat_backtracking(std::span<const Assertion> abox, std::span<const Formula> gamma,
                                    SolveOptions options) {
  const auto start = Clock::now();
  const auto na = to_nnf(abox);
  const auto ng = nnf_all(gamma);
  Backtracker search(ng, options);
  Verdict verdict;
  verdict.witness = search.search(abox_root_contents(na, ng));
  verdict.satisfiable = verdict.witness.has_value();
  verdict.graph = search.graph();
  if (verdict.satisfiable) {
    verdict.graph->set_root(verdict.witness->root);
    for (NodeId v : verdict.witness->nodes) verdict.graph->set_status(v, NodeStatus::Sat);
  }
  verdict.stats.nodes = search.visited() + verdict.graph->size();
  verdict.stats.iterations = search.iterations();
  verdict.stats.algorithm = "backtrack";
  verdict.stats.millis = millis_since(start);
  return verdict;
}

// ---- instance checking ----

AboxProblem instance_problem(std::span<const Assertion> abox, std::span<const Formula> gamma, Formula phi,
                             std::string_view var, InstanceEncoding encoding) {
  AboxProblem problem{to_nnf(abox), nnf_all(gamma)};
  const Formula query = to_nnf(phi);
  const Formula negated = negate_nnf(query);
  if (encoding == InstanceEncoding::Direct) {
    problem.abox.push_back(Assertion::concept_of(var, negated));
    return problem;
  }
  Signature sig;
  for (const Assertion& a : abox) sig.add(a);
  for (Formula g : gamma) sig.add(g);
  sig.add(phi);
  sig.normalize();
  std::string fresh;
  for (std::size_t n = 0;; ++n) {
    fresh = "_fresh" + std::to_string(n);
    if (!std::binary_search(sig.propositions.begin(), sig.propositions.end(), fresh)) break;
  }
  const Formula p = prop(fresh);
  problem.tbox.push_back(disj(neg(p), query));
  problem.tbox.push_back(disj(p, negated));
  problem.abox.push_back(Assertion::concept_of(var, neg(p)));
  return problem;
}

bool instance_check(std::span<const Assertion> abox, std::span<const Formula> gamma, Formula phi,
                    std::string_view var, InstanceEncoding encoding, SolveOptions options) {
  const AboxProblem problem = instance_problem(abox, gamma, phi, var, encoding);
  return !check_abox_sat_backtracking(problem.abox, problem.tbox, options).satisfiable;
}

}  // namespace pdl
