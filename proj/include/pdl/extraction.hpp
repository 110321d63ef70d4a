// Model graphs and model extraction from consistent markings.
//
// A model graph ⟨W, (R_σ), H⟩ is built by gluing together the nodes of
// saturation paths in the marking: each state is labeled with L ∪ rfs of an
// "and"-node (or end node), and every ⟨σ⟩-eventuality of a state is realized
// by following a shortest trace in the trace graph.

#ifndef PDL_EXTRACTION_HPP
#define PDL_EXTRACTION_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdl/decision.hpp"
#include "pdl/kripke.hpp"

namespace pdl {

struct ModelGraph {
  std::vector<std::string> names;
  std::vector<FormulaSet> labels;  // H
  std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> relations;
  std::map<std::string, std::size_t> variables;  // ABox extraction only

  std::size_t size() const { return labels.size(); }
};

// Violations of the saturation conditions (decomposition of ∧, ∨, ⟨ψ?⟩,
// [;], [∪], [?], [*], and propagation of [σ]ψ along R_σ). Empty if saturated.
std::vector<std::string> saturation_violations(const ModelGraph& m);

// Violations of local consistency (⊥ or a pair p, ~p in a label) and of
// global consistency (a ⟨α⟩φ in a label without ◇-realization).
std::vector<std::string> consistency_violations(const ModelGraph& m);

// The Kripke model corresponding to a model graph: states W, σ^M = R_σ,
// p^M = {w : p ∈ H(w)}; state variables map to their W₀ states.
KripkeModel to_kripke(const ModelGraph& m);

// A saturation path of v w.r.t. the marking: or-nodes of the marking ending
// in an "and"-node or end node. At or-nodes whose principal is an
// eventuality, the path follows a shortest realization of it.
std::vector<NodeId> saturation_path(const AndOrGraph& g, const Marking& m, const TraceGraph& t, NodeId v);

struct Extraction {
  ModelGraph graph;
  KripkeModel model;
  std::size_t root_state = 0;  // τ for formula problems
};

// Builds the model graph and Kripke model from a consistent marking. A
// simple root yields τ plus fresh states; a complex root yields one state
// per state variable plus fresh states. Throws InternalError if the marking
// is not consistent.
Extraction extract_model(const AndOrGraph& g, const Marking& m);

// Convenience overload for a satisfiable verdict.
Extraction extract_model(const Verdict& verdict);

}  // namespace pdl

#endif  // PDL_EXTRACTION_HPP
