#include "pdl/graph.hpp"

#include <sstream>
#include <string>

#include "pdl/errors.hpp"

namespace pdl {

const char* node_class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Or: return "or";
    case NodeClass::And: return "and";
    case NodeClass::End: return "end";
  }
  return "?";
}

AndOrGraph::AndOrGraph(std::vector<Formula> gamma, GraphOptions options)
    : gamma_(make_set(std::move(gamma))), options_(options) {}

std::optional<NodeId> AndOrGraph::find(const NodeContents& contents) const {
  if (auto it = cache_.find(&contents); it != cache_.end()) return it->second;
  return std::nullopt;
}

NodeId AndOrGraph::intern(const NodeContents& contents) {
  if (auto it = cache_.find(&contents); it != cache_.end()) return it->second;
  if (nodes_.size() >= options_.max_nodes)
    throw ResourceError("node cap of " + std::to_string(options_.max_nodes) + " exceeded");
  const auto id = static_cast<NodeId>(nodes_.size());
  TableauNode& node = nodes_.emplace_back();
  node.id = id;
  node.contents = contents;
  cache_.emplace(&node.contents, id);
  return id;
}

void AndOrGraph::expand(NodeId id) {
  if (nodes_[id].expanded()) return;
  // Copy: interning below may grow the deque, but never moves existing
  // elements; the copy keeps the code independent of that guarantee.
  const NodeContents contents = nodes_[id].contents;
  auto rule = applicable_rule(contents, gamma_);
  if (!rule) {
    nodes_[id].node_class = NodeClass::End;
    nodes_[id].status = NodeStatus::Expanded;
    return;
  }
  std::vector<Edge> edges;
  for (Conclusion& c : apply_rule(contents, *rule, gamma_)) {
    const NodeId target = intern(c.contents);
    edges.push_back({target, std::move(c.edge_label)});
    nodes_[target].in_edges.push_back(id);
  }
  TableauNode& node = nodes_[id];
  node.node_class = is_and_rule(rule->rule) ? NodeClass::And : NodeClass::Or;
  node.rule = std::move(rule);
  node.out_edges = std::move(edges);
  node.status = NodeStatus::Expanded;
}

void AndOrGraph::expand_all_from(NodeId from) {
  std::deque<NodeId> queue{from};
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    if (nodes_[id].expanded()) continue;
    expand(id);
    for (const Edge& e : nodes_[id].out_edges)
      if (!nodes_[e.target].expanded()) queue.push_back(e.target);
  }
}

AndOrGraph build_graph(std::span<const Formula> x, std::span<const Formula> gamma, GraphOptions options) {
  AndOrGraph graph({gamma.begin(), gamma.end()}, options);
  std::vector<Formula> label(x.begin(), x.end());
  label.insert(label.end(), gamma.begin(), gamma.end());
  graph.set_root(graph.intern(NodeContents::simple(std::move(label))));
  graph.expand_all_from(graph.root());
  return graph;
}

NodeContents abox_root_contents(std::span<const Assertion> abox, std::span<const Formula> gamma) {
  Signature sig;
  for (const Assertion& a : abox) sig.add(a);
  sig.normalize();
  std::vector<Assertion> label(abox.begin(), abox.end());
  for (const std::string& var : sig.variables)
    for (Formula g : gamma) label.push_back(Assertion::concept_of(var, g));
  return NodeContents::complex(std::move(label));
}

AndOrGraph build_graph_abox(std::span<const Assertion> abox, std::span<const Formula> gamma, GraphOptions options) {
  AndOrGraph graph({gamma.begin(), gamma.end()}, options);
  graph.set_root(graph.intern(abox_root_contents(abox, gamma)));
  graph.expand_all_from(graph.root());
  return graph;
}

namespace {

std::string escape_record(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (std::string_view("{}|<>\"\\").find(c) != std::string_view::npos) out += '\\';
    out += c;
  }
  return out;
}

std::string escape_quoted(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const AndOrGraph& graph) {
  std::ostringstream os;
  os << "digraph tableau {\n  node [shape=record, fontname=\"monospace\"];\n";
  for (NodeId id = 0; id < graph.size(); ++id) {
    const TableauNode& n = graph.node(id);
    os << "  n" << id << " [label=\"{" << id << (n.contents.kind == NodeKind::Complex ? " complex" : "") << " | "
       << node_class_name(n.node_class) << " | " << (n.rule ? rule_name(n.rule->rule) : "-") << " | ";
    for (const Item& item : n.contents.label) os << escape_record(to_string(item)) << "\\l";
    if (!n.contents.rfs.empty()) {
      os << " | rfs: ";
      for (const Item& item : n.contents.rfs) os << escape_record(to_string(item)) << "\\l";
    }
    os << "}\"";
    if (n.status == NodeStatus::Unsat) os << ", style=dashed";
    os << "];\n";
  }
  for (NodeId id = 0; id < graph.size(); ++id) {
    for (const Edge& e : graph.node(id).out_edges) {
      os << "  n" << id << " -> n" << e.target;
      if (e.label) os << " [label=\"" << escape_quoted(to_string(*e.label)) << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pdl
