// The "and-or" tableau graph with global caching.
//
// Every node has unique contents; a conclusion whose contents already exist
// is connected to the existing node instead of creating a new one. Nodes are
// expanded breadth-first, each at most once.

#ifndef PDL_GRAPH_HPP
#define PDL_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdl/calculus.hpp"
#include "pdl/formula.hpp"

namespace pdl {

using NodeId = std::uint32_t;

enum class NodeClass : std::uint8_t { Or, And, End };
enum class NodeStatus : std::uint8_t { Unexpanded, Expanded, Unsat, Sat };

const char* node_class_name(NodeClass c);

struct Edge {
  NodeId target;
  std::optional<Item> label;  // set on edges leaving "and"-nodes
};

struct TableauNode {
  NodeId id;
  NodeContents contents;
  NodeClass node_class = NodeClass::End;
  std::optional<RuleInstance> rule;
  std::vector<Edge> out_edges;
  std::vector<NodeId> in_edges;  // fathers, one entry per incoming edge
  NodeStatus status = NodeStatus::Unexpanded;

  bool expanded() const { return status != NodeStatus::Unexpanded; }
};

struct GraphOptions {
  std::size_t max_nodes = 1'000'000;
};

class AndOrGraph {
 public:
  explicit AndOrGraph(std::vector<Formula> gamma, GraphOptions options = {});
  AndOrGraph(const AndOrGraph&) = delete;
  AndOrGraph& operator=(const AndOrGraph&) = delete;
  // Moving keeps node addresses (deque storage), so the cache stays valid.
  AndOrGraph(AndOrGraph&&) = default;
  AndOrGraph& operator=(AndOrGraph&&) = default;

  // The node with these contents, created unexpanded if new. Throws
  // ResourceError when the node cap would be exceeded.
  NodeId intern(const NodeContents& contents);
  std::optional<NodeId> find(const NodeContents& contents) const;

  // Selects and applies the rule of an unexpanded node. No-op otherwise.
  void expand(NodeId id);
  // Expands every node reachable from `from`, breadth-first.
  void expand_all_from(NodeId from);

  const TableauNode& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return root_; }
  void set_root(NodeId id) { root_ = id; }
  std::span<const Formula> gamma() const { return gamma_; }
  // The simple node {⊥}, if it has been created.
  std::optional<NodeId> bottom_node() const { return find(bottom_contents()); }

  void set_status(NodeId id, NodeStatus status) { nodes_[id].status = status; }

 private:
  struct ContentsHash {
    std::size_t operator()(const NodeContents* c) const { return c->hash(); }
  };
  struct ContentsEq {
    bool operator()(const NodeContents* a, const NodeContents* b) const { return *a == *b; }
  };

  std::vector<Formula> gamma_;
  GraphOptions options_;
  std::deque<TableauNode> nodes_;
  std::unordered_map<const NodeContents*, NodeId, ContentsHash, ContentsEq> cache_;
  NodeId root_ = 0;
};

// The fully expanded graph for X w.r.t. Γ, rooted at X ∪ Γ with empty rfs.
// Inputs must be in NNF.
AndOrGraph build_graph(std::span<const Formula> x, std::span<const Formula> gamma, GraphOptions options = {});

// The fully expanded graph for an ABox w.r.t. Γ, rooted at the complex node
// A ∪ {a:φ | φ ∈ Γ, a occurs in A}.
AndOrGraph build_graph_abox(std::span<const Assertion> abox, std::span<const Formula> gamma,
                            GraphOptions options = {});

// Contents of the root node for an ABox problem.
NodeContents abox_root_contents(std::span<const Assertion> abox, std::span<const Formula> gamma);

// Graphviz rendering, one record per node ordered by id.
std::string to_dot(const AndOrGraph& graph);

}  // namespace pdl

#endif  // PDL_GRAPH_HPP
