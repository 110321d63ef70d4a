// Decision procedures over and-or graphs.
//
// A node becomes unsat when it is the {⊥} node, when it is an "and"-node with
// an unsat successor, when it is an "or"-node whose successors are all unsat,
// or when the current marking contains a trace of an eventuality ⟨α⟩φ
// through it that can never be fulfilled. The input is satisfiable iff the
// root never becomes unsat; the final marking is then a witness.

#ifndef PDL_DECISION_HPP
#define PDL_DECISION_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdl/graph.hpp"

namespace pdl {

// A set of node ids, sized on demand.
class NodeSet {
 public:
  bool contains(NodeId id) const { return id < bits_.size() && bits_[id]; }
  // Returns true when id was not yet a member.
  bool insert(NodeId id);
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::vector<NodeId> ids() const;

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

// A marking: a subgraph containing the root that keeps at least one
// successor of every member "or"-node and all successors of every member
// "and"-node.
struct Marking {
  struct EdgeRef {
    NodeId from;
    std::size_t index;  // position in from's out_edges
  };

  NodeId root = 0;
  std::vector<NodeId> nodes;  // ascending
  std::vector<EdgeRef> edges;

  bool contains(NodeId id) const { return member_.contains(id); }

  friend std::optional<Marking> current_marking(const AndOrGraph& g, const NodeSet& unsat, NodeId root);

 private:
  NodeSet member_;
};

// Nodes of the trace graph: (v, φ) for simple members v and φ ∈ L(v), and
// (v, a:φ) for complex members that are "and"-nodes or end nodes.
struct TNode {
  NodeId node;
  Item tracked;
};

class TraceGraph {
 public:
  static constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

  struct TEdge {
    std::size_t target;  // t-node index
    std::optional<std::size_t> graph_edge;  // index into the out_edges of the source node, if the step leaves it
  };

  std::size_t size() const { return nodes_.size(); }
  const TNode& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<TEdge>& successors(std::size_t i) const { return edges_[i]; }
  // Not of the form ⟨α⟩ξ (resp. a:⟨α⟩ξ).
  bool is_end(std::size_t i) const { return end_[i]; }
  bool is_productive(std::size_t i) const { return distance_[i] != kUnreachable; }
  // Length of a shortest path to an end t-node.
  std::size_t distance(std::size_t i) const { return distance_[i]; }
  std::optional<std::size_t> find(NodeId v, const Item& tracked) const;
  std::size_t edge_count() const;

  friend TraceGraph build_trace_graph(const AndOrGraph& g, const Marking& m);

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<NodeId, Item>& k) const { return k.first * 0x9e3779b1u ^ hash_item(k.second); }
  };

  std::size_t add(NodeId v, const Item& tracked);

  std::vector<TNode> nodes_;
  std::vector<std::vector<TEdge>> edges_;
  std::vector<bool> end_;
  std::vector<std::size_t> distance_;
  std::unordered_map<std::pair<NodeId, Item>, std::size_t, KeyHash> index_;
};

struct SolveStats {
  std::size_t nodes = 0;       // graph nodes (plus visited complex nodes for backtracking)
  std::size_t iterations = 0;  // rounds of the marking loop
  double millis = 0;
  std::string algorithm;
};

struct SolveOptions {
  GraphOptions graph;
};

struct Verdict {
  bool satisfiable = false;
  std::optional<Marking> witness;  // present iff satisfiable
  SolveStats stats;
  // The graph the witness refers to.
  std::shared_ptr<AndOrGraph> graph;
};

// The least superset of unsat ∪ v_new closed under backward propagation;
// marks every member with NodeStatus::Unsat.
NodeSet update_unsat_nodes(AndOrGraph& g, NodeSet unsat, std::span<const NodeId> v_new);

// The maximal subgraph reachable from root that avoids unsat nodes, or
// nullopt when root itself is unsat.
std::optional<Marking> current_marking(const AndOrGraph& g, const NodeSet& unsat, NodeId root);

TraceGraph build_trace_graph(const AndOrGraph& g, const Marking& m);

// Violations of the marking conditions, local consistency (no {⊥} member)
// and global consistency (every tracked eventuality productive). Empty when
// the marking is a consistent marking.
std::vector<std::string> verify_marking(const AndOrGraph& g, const Marking& m);

// Runs the marking loop from `root` on an expanded graph, extending unsat.
// Returns the consistent marking found, or nullopt when root becomes unsat.
std::optional<Marking> find_consistent_marking(AndOrGraph& g, NodeSet& unsat, NodeId root, std::size_t* iterations);

// Satisfiability of X w.r.t. global assumptions Γ. Inputs are normalized to
// NNF. Throws ResourceError when the node cap is exceeded.
Verdict check_sat(std::span<const Formula> x, std::span<const Formula> gamma, SolveOptions options = {});

// ABox consistency w.r.t. a TBox on the full ABox graph.
Verdict check_abox_sat(std::span<const Assertion> abox, std::span<const Formula> gamma, SolveOptions options = {});

// ABox consistency by depth-first search over the complex nodes; each
// complex "and"-node or end node reached is checked on the subgraph it
// generates. Simple nodes and unsat results are shared between branches.
Verdict check_abox_sat_backtracking(std::span<const Assertion> abox, std::span<const Formula> gamma,
                                    SolveOptions options = {});

enum class InstanceEncoding { Direct, FreshProp };

struct AboxProblem {
  std::vector<Assertion> abox;
  std::vector<Formula> tbox;
};

// The ABox problem that is unsatisfiable iff (A, Γ) entails φ(a).
AboxProblem instance_problem(std::span<const Assertion> abox, std::span<const Formula> gamma, Formula phi,
                             std::string_view var, InstanceEncoding encoding);

// Whether (A, Γ) entails φ(a), decided with the backtracking algorithm.
bool instance_check(std::span<const Assertion> abox, std::span<const Formula> gamma, Formula phi,
                    std::string_view var, InstanceEncoding encoding, SolveOptions options = {});

// Normalizes the formulas of concept assertions to NNF.
std::vector<Assertion> to_nnf(std::span<const Assertion> abox);

}  // namespace pdl

#endif  // PDL_DECISION_HPP
