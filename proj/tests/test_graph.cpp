#include <gtest/gtest.h>

#include <algorithm>
#include <unordered_set>

#include "pdl/closure.hpp"
#include "pdl/errors.hpp"
#include "pdl/graph.hpp"
#include "pdl/normal_form.hpp"
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

// Structural invariants every fully expanded graph satisfies.
void expect_well_formed(const AndOrGraph& g) {
  std::unordered_set<NodeContents> seen;
  std::vector<std::size_t> fathers(g.size(), 0);
  for (NodeId v = 0; v < g.size(); ++v) {
    const TableauNode& n = g.node(v);
    EXPECT_EQ(n.id, v);
    EXPECT_TRUE(seen.insert(n.contents).second) << "duplicate node " << v;
    EXPECT_TRUE(n.expanded()) << "unexpanded node " << v;
    EXPECT_EQ(n.node_class == NodeClass::End, n.out_edges.empty()) << v;
    for (const Edge& e : n.out_edges) {
      ASSERT_LT(e.target, g.size());
      ++fathers[e.target];
      EXPECT_EQ(e.label.has_value(), n.node_class == NodeClass::And) << v;
      if (n.node_class == NodeClass::And) {
        EXPECT_EQ(g.node(e.target).contents.kind, NodeKind::Simple);
        EXPECT_TRUE(g.node(e.target).contents.rfs.empty()) << "rfs survives a transition at " << e.target;
      }
    }
    if (n.rule) {
      EXPECT_EQ(n.node_class == NodeClass::And, is_transitional(n.rule->rule)) << v;
    }
  }
  for (NodeId v = 0; v < g.size(); ++v) EXPECT_EQ(g.node(v).in_edges.size(), fathers[v]) << v;
}

TEST(Graph, FormulaRootExample) {
  const auto x = Fs({"<s*>p", "[s*]q"});
  const auto gamma = Fs({"~p | ~q"});
  const AndOrGraph g = build_graph(x, gamma);
  EXPECT_EQ(g.size(), 9u);
  const TableauNode& root = g.node(g.root());
  EXPECT_EQ(root.contents, NodeContents::simple(Fs({"<s*>p", "[s*]q", "~p | ~q"})));
  EXPECT_TRUE(g.bottom_node());
  expect_well_formed(g);
}

TEST(Graph, AboxRootExample) {
  const auto abox = As({"a : [s]<s*>p", "s(a,b)"});
  const auto gamma = Fs({"~p"});
  const AndOrGraph g = build_graph_abox(abox, gamma);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.node(g.root()).contents,
            NodeContents::complex(As({"a : [s]<s*>p", "s(a,b)", "a : ~p", "b : ~p"})));
  expect_well_formed(g);
}

TEST(Graph, NodeCapRaisesResourceError) {
  const auto x = Fs({"<s*>p", "[s*]q"});
  const auto gamma = Fs({"~p | ~q"});
  EXPECT_THROW(build_graph(x, gamma, GraphOptions{.max_nodes = 4}), ResourceError);
  EXPECT_NO_THROW(build_graph(x, gamma, GraphOptions{.max_nodes = 9}));
}

TEST(Graph, DotExport) {
  const auto x = Fs({"<s>p"});
  const std::vector<Formula> gamma;
  const std::string dot = to_dot(build_graph(x, gamma));
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("trans"), std::string::npos);
  EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(Graph, RandomGraphsStayInsideTheClosure) {
  testing::RandomGen gen(29, {.props = {"p", "q"}, .programs = {"s", "t"}, .formula_depth = 3, .program_depth = 2});
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> x{to_nnf(gen.formula())}, gamma;
    if (gen.coin()) gamma.push_back(to_nnf(gen.formula(2)));
    const AndOrGraph g = build_graph(x, gamma);
    expect_well_formed(g);
    std::vector<Formula> all = x;
    all.insert(all.end(), gamma.begin(), gamma.end());
    const FormulaSet fl = fl_closure(all);
    for (NodeId v = 0; v < g.size(); ++v) {
      const NodeContents& c = g.node(v).contents;
      if (c == bottom_contents()) continue;
      for (const ItemSet* part : {&c.label, &c.rfs})
        for (const Item& item : *part)
          EXPECT_TRUE(set_contains(fl, std::get<Formula>(item))) << to_string(item) << " not in FL";
    }
  }
}

TEST(Graph, RandomAboxGraphsAreWellFormed) {
  testing::RandomGen gen(31, {.formula_depth = 3});
  for (int i = 0; i < 100; ++i) {
    std::vector<Assertion> abox;
    for (const Assertion& a : gen.abox(2, 2))
      abox.push_back(a.is_concept() ? Assertion::concept_of(a.subject(), to_nnf(a.formula())) : a);
    std::vector<Formula> gamma;
    if (gen.coin()) gamma.push_back(to_nnf(gen.formula(2)));
    const AndOrGraph g = build_graph_abox(abox, gamma);
    expect_well_formed(g);
    // Primed rules only on complex nodes, unprimed only on simple ones.
    for (NodeId v = 0; v < g.size(); ++v) {
      const TableauNode& n = g.node(v);
      if (n.rule) {
        EXPECT_EQ(is_primed(n.rule->rule), n.contents.kind == NodeKind::Complex);
      }
    }
  }
}

}  // namespace
}  // namespace pdl
