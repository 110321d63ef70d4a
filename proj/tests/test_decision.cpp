#include <gtest/gtest.h>

#include "marking_check.hpp"
#include "pdl/decision.hpp"
#include "pdl/errors.hpp"
#include "pdl/normal_form.hpp"
#include "pdl/oracle.hpp"
#include "pdl/parser.hpp"
#include "random_gen.hpp"

namespace pdl {
namespace {

std::vector<Formula> Fs(std::initializer_list<std::string_view> texts) {
  std::vector<Formula> out;
  for (auto t : texts) out.push_back(parse_formula(t));
  return out;
}

std::vector<Assertion> As(std::initializer_list<std::string_view> texts) {
  std::vector<Assertion> out;
  for (auto t : texts) out.push_back(parse_assertion(t));
  return out;
}

bool sat(std::initializer_list<std::string_view> x, std::initializer_list<std::string_view> gamma = {}) {
  const auto xs = Fs(x), gs = Fs(gamma);
  const Verdict v = check_sat(xs, gs);
  if (v.satisfiable) {
    EXPECT_TRUE(verify_marking(*v.graph, *v.witness).empty());
    EXPECT_TRUE(testing::check_marking(*v.graph, *v.witness).empty());
  }
  return v.satisfiable;
}

bool abox_sat(std::initializer_list<std::string_view> abox, std::initializer_list<std::string_view> gamma = {}) {
  const auto as = As(abox);
  const auto gs = Fs(gamma);
  const Verdict cached = check_abox_sat(as, gs);
  const Verdict backtrack = check_abox_sat_backtracking(as, gs);
  EXPECT_EQ(cached.satisfiable, backtrack.satisfiable);
  for (const Verdict* v : {&cached, &backtrack}) {
    if (!v->satisfiable) continue;
    EXPECT_TRUE(testing::check_marking(*v->graph, *v->witness).empty());
  }
  return cached.satisfiable;
}

TEST(Decision, FormulaExample) {
  const auto x = Fs({"<s*>p", "[s*]q"});
  const auto gamma = Fs({"~p | ~q"});
  const Verdict v = check_sat(x, gamma);
  EXPECT_FALSE(v.satisfiable);
  EXPECT_FALSE(v.witness);
  EXPECT_EQ(v.stats.nodes, 9u);
  EXPECT_EQ(v.stats.algorithm, "sat");
}

TEST(Decision, AboxExampleUnderBothAlgorithms) {
  const auto abox = As({"a : [s]<s*>p", "s(a,b)"});
  const auto gamma = Fs({"~p"});
  const Verdict cached = check_abox_sat(abox, gamma);
  EXPECT_FALSE(cached.satisfiable);
  EXPECT_EQ(cached.stats.nodes, 8u);
  EXPECT_EQ(cached.stats.algorithm, "cached");
  const Verdict backtrack = check_abox_sat_backtracking(abox, gamma);
  EXPECT_FALSE(backtrack.satisfiable);
  EXPECT_EQ(backtrack.stats.algorithm, "backtrack");
  EXPECT_TRUE(abox_sat({"a : [s]<s*>p", "s(a,b)"}));
}

TEST(Decision, HandPickedFormulas) {
  EXPECT_TRUE(sat({"p"}));
  EXPECT_FALSE(sat({"p & ~p"}));
  EXPECT_FALSE(sat({"<s>p", "[s]~p"}));
  EXPECT_TRUE(sat({"<s>p", "[t]~p"}));
  EXPECT_FALSE(sat({"<s*>p", "[s*]~p"}));
  EXPECT_FALSE(sat({"<(s;s)*>p", "[s*]~p"}));
  EXPECT_TRUE(sat({"<s*>p", "[s*]<s>true"}));
  EXPECT_TRUE(sat({"<(p?)*>q"}));
  EXPECT_FALSE(sat({"<p?>q", "~p"}));
  EXPECT_TRUE(sat({"[p?]q", "~p", "~q"}));
  EXPECT_FALSE(sat({"<s>p"}, {"[s]false"}));
  EXPECT_TRUE(sat({"<s+t>p", "[s]~p"}));
  EXPECT_FALSE(sat({"<s+t>p", "[s]~p", "[t]~p"}));
}

TEST(Decision, UnfulfilledEventualityIsUnsat) {
  // Locally the s-loop is fine, but <s*>p can never be fulfilled.
  const auto x = Fs({"<s*>p"});
  const auto gamma = Fs({"~p", "<s>true"});
  const Verdict v = check_sat(x, gamma);
  EXPECT_FALSE(v.satisfiable);
  EXPECT_GE(v.stats.iterations, 1u);
  EXPECT_TRUE(sat({"<s*>p"}, {"<s>true"}));
}

TEST(Decision, AboxReasoning) {
  EXPECT_TRUE(abox_sat({"a : p", "b : ~p"}));
  EXPECT_FALSE(abox_sat({"a : p", "a : ~p"}));
  EXPECT_FALSE(abox_sat({"a : [s]p", "s(a,b)", "b : ~p"}));
  EXPECT_FALSE(abox_sat({"a : [s*]p", "s(a,b)", "s(b,c)", "c : ~p"}));
  EXPECT_TRUE(abox_sat({"a : [s*]p", "s(a,b)", "s(b,c)", "c : ~q"}));
  EXPECT_FALSE(abox_sat({"a : <s>q", "s(a,a)"}, {"~q"}));
  EXPECT_TRUE(abox_sat({"a : <s*>q", "s(a,b)"}, {"p"}));
  EXPECT_FALSE(abox_sat({"a : [s;s]p", "s(a,b)", "s(b,c)", "c : ~p"}));
}

TEST(Decision, InstanceChecking) {
  const auto abox = As({"a : [s]p", "s(a,b)"});
  const std::vector<Formula> none;
  for (auto enc : {InstanceEncoding::Direct, InstanceEncoding::FreshProp}) {
    EXPECT_TRUE(instance_check(abox, none, parse_formula("p"), "b", enc));
    EXPECT_FALSE(instance_check(abox, none, parse_formula("q"), "b", enc));
    EXPECT_TRUE(instance_check(abox, none, parse_formula("<s>p"), "a", enc));
    EXPECT_TRUE(instance_check(abox, none, parse_formula("<s*>(p | q)"), "a", enc));
    const auto gamma = Fs({"p -> q"});
    EXPECT_TRUE(instance_check(abox, gamma, parse_formula("q"), "b", enc));
  }
  const AboxProblem fresh = instance_problem(abox, none, parse_formula("p"), "b", InstanceEncoding::FreshProp);
  EXPECT_EQ(fresh.tbox.size(), 2u);  // the fresh proposition is equivalent to the query
  const AboxProblem direct = instance_problem(abox, none, parse_formula("p"), "b", InstanceEncoding::Direct);
  EXPECT_EQ(direct.abox.back(), parse_assertion("b : ~p"));
}

TEST(Decision, UnsatPropagation) {
  const auto x = Fs({"<s*>p", "[s*]q"});
  const auto gamma = Fs({"~p | ~q"});
  AndOrGraph g = build_graph(x, gamma);
  const NodeId bot[] = {*g.bottom_node()};
  const NodeSet unsat = update_unsat_nodes(g, {}, bot);
  EXPECT_TRUE(unsat.contains(bot[0]));
  EXPECT_LT(unsat.size(), g.size());
  for (NodeId v : unsat.ids()) EXPECT_EQ(g.node(v).status, NodeStatus::Unsat);
  // Every unsat and-node has an unsat successor; every unsat or-node has
  // only unsat successors.
  for (NodeId v : unsat.ids()) {
    const TableauNode& n = g.node(v);
    std::size_t bad = 0;
    for (const Edge& e : n.out_edges) bad += unsat.contains(e.target) ? 1 : 0;
    if (n.node_class == NodeClass::And) {
      EXPECT_GE(bad, 1u);
    } else if (n.node_class == NodeClass::Or) {
      EXPECT_EQ(bad, n.out_edges.size());
    }
  }
  // The first marking exists, but fails global consistency.
  const auto m = current_marking(g, unsat, g.root());
  ASSERT_TRUE(m);
  EXPECT_FALSE(verify_marking(g, *m).empty());
  EXPECT_FALSE(testing::check_global(g, *m).empty());
}

TEST(Decision, NodeCap) {
  const auto x = Fs({"<s*>p", "[s*]q"});
  const auto gamma = Fs({"~p | ~q"});
  EXPECT_THROW(check_sat(x, gamma, SolveOptions{.graph = {.max_nodes = 3}}), ResourceError);
}

TEST(Decision, NonNnfInputIsNormalized) {
  EXPECT_FALSE(sat({"~[s*]p", "[s*]p"}));
  EXPECT_TRUE(sat({"~(p -> q)"}));
}

TEST(Decision, AlgorithmsAgreeOnRandomAboxes) {
  testing::RandomGen gen(37, {.vars = {"a", "b"}, .formula_depth = 3});
  for (int i = 0; i < 200; ++i) {
    const auto abox = gen.abox(2, static_cast<std::size_t>(gen.uniform(0, 2)));
    std::vector<Formula> gamma;
    if (gen.coin(0.3)) gamma.push_back(gen.formula(2));
    const Verdict cached = check_abox_sat(abox, gamma);
    const Verdict backtrack = check_abox_sat_backtracking(abox, gamma);
    ASSERT_EQ(cached.satisfiable, backtrack.satisfiable) << i;
    for (const Verdict* v : {&cached, &backtrack}) {
      if (!v->satisfiable) continue;
      EXPECT_TRUE(verify_marking(*v->graph, *v->witness).empty());
      EXPECT_TRUE(testing::check_marking(*v->graph, *v->witness).empty());
    }
  }
}

TEST(Decision, AgreesWithSmallModelSearch) {
  testing::RandomGen gen(41, {.formula_depth = 3});
  for (int i = 0; i < 150; ++i) {
    const std::vector<Formula> x{gen.formula()};
    std::vector<Formula> gamma;
    if (gen.coin(0.3)) gamma.push_back(gen.formula(2));
    const Verdict v = check_sat(x, gamma);
    if (bounded_model_sat(OracleProblem{x, {}, gamma}, 3)) {
      EXPECT_TRUE(v.satisfiable) << to_string(x[0]);
    }
  }
}

}  // namespace
}  // namespace pdl
