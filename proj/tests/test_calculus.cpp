#include <gtest/gtest.h>

#include <algorithm>

#include "pdl/calculus.hpp"
#include "pdl/normal_form.hpp"
#include "pdl/parser.hpp"
#include "random_gen.hpp"

namespace pdl {
namespace {

Formula F(std::string_view text) { return parse_formula(text); }
Assertion A(std::string_view text) { return parse_assertion(text); }

NodeContents S(std::initializer_list<std::string_view> label, std::initializer_list<std::string_view> rfs = {}) {
  std::vector<Formula> l, r;
  for (auto t : label) l.push_back(F(t));
  for (auto t : rfs) r.push_back(F(t));
  return NodeContents::simple(l, r);
}

NodeContents C(std::initializer_list<std::string_view> label) {
  std::vector<Assertion> l;
  for (auto t : label) l.push_back(A(t));
  return NodeContents::complex(l);
}

const std::vector<Formula> kNoGamma;

TEST(Rules, Classification) {
  EXPECT_FALSE(is_primed(RuleId::And));
  EXPECT_TRUE(is_primed(RuleId::AndP));
  EXPECT_TRUE(is_primed(RuleId::BoxPrime));
  EXPECT_TRUE(is_transitional(RuleId::Trans));
  EXPECT_TRUE(is_transitional(RuleId::TransP));
  EXPECT_TRUE(is_and_rule(RuleId::Trans));
  EXPECT_FALSE(is_static(RuleId::TransP));
  EXPECT_TRUE(is_static(RuleId::DmdStar));
  EXPECT_TRUE(is_clash(RuleId::Bot0P));
  EXPECT_TRUE(is_unary(RuleId::And));
  EXPECT_TRUE(is_unary(RuleId::BoxStar));
  EXPECT_TRUE(is_unary(RuleId::DmdSeq));
  EXPECT_FALSE(is_unary(RuleId::Or));
  EXPECT_FALSE(is_unary(RuleId::BoxTest));
  EXPECT_FALSE(is_unary(RuleId::DmdStar));
  EXPECT_TRUE(is_rfs_restricted(RuleId::Or));
  EXPECT_TRUE(is_rfs_restricted(RuleId::BoxStar));
  EXPECT_FALSE(is_rfs_restricted(RuleId::DmdStar));
  EXPECT_TRUE(is_rfs_restricted(RuleId::DmdStarP));
  EXPECT_FALSE(is_rfs_restricted(RuleId::BoxPrime));
  EXPECT_TRUE(is_diamond_rule(RuleId::DmdUnionP));
  EXPECT_FALSE(is_diamond_rule(RuleId::BoxUnion));
  EXPECT_STREQ(rule_name(RuleId::TransP), "trans'");
}

TEST(Rules, Decomposition) {
  using Alts = std::vector<std::vector<Formula>>;
  EXPECT_EQ(decompose(F("p & q")), (Alts{{F("p"), F("q")}}));
  EXPECT_EQ(decompose(F("p | q")), (Alts{{F("p")}, {F("q")}}));
  EXPECT_EQ(decompose(F("<s;t>p")), (Alts{{F("<s><t>p")}}));
  EXPECT_EQ(decompose(F("[s+t]p")), (Alts{{F("[s]p"), F("[t]p")}}));
  EXPECT_EQ(decompose(F("<s+t>p")), (Alts{{F("<s>p")}, {F("<t>p")}}));
  EXPECT_EQ(decompose(F("[q?]p")), (Alts{{F("~q")}, {F("p")}}));
  EXPECT_EQ(decompose(F("<q?>p")), (Alts{{F("q"), F("p")}}));
  EXPECT_EQ(decompose(F("[s*]p")), (Alts{{F("p"), F("[s][s*]p")}}));
  EXPECT_EQ(decompose(F("<s*>p")), (Alts{{F("p")}, {F("<s><s*>p")}}));
  EXPECT_FALSE(decompose(F("<s>p")));
  EXPECT_FALSE(decompose(F("~p")));

  EXPECT_EQ(trace_successor(F("<s*>p"), 0), F("p"));
  EXPECT_EQ(trace_successor(F("<s*>p"), 1), F("<s><s*>p"));
  EXPECT_EQ(trace_successor(F("<s+t>p"), 1), F("<t>p"));
  EXPECT_EQ(trace_successor(F("<q?>p"), 0), F("p"));
}

TEST(Rules, ClashesComeFirst) {
  EXPECT_EQ(applicable_rule(S({"p", "~p", "q & r"}), kNoGamma)->rule, RuleId::Bot);
  EXPECT_EQ(applicable_rule(S({"false", "q & r"}), kNoGamma)->rule, RuleId::Bot0);
  EXPECT_FALSE(applicable_rule(bottom_contents(), kNoGamma));
  const auto out = apply_rule(S({"p", "~p"}), *applicable_rule(S({"p", "~p"}), kNoGamma), kNoGamma);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].contents, bottom_contents());
}

TEST(Rules, UnaryRulesBeforeBranching) {
  const NodeContents c = S({"p | q", "r & p"});
  const auto inst = applicable_rule(c, kNoGamma);
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->rule, RuleId::And);
  const auto out = apply_rule(c, *inst, kNoGamma);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].contents, S({"p | q", "r", "p"}, {"r & p"}));
  EXPECT_FALSE(out[0].edge_label);

  const auto next = apply_rule(out[0].contents, *applicable_rule(out[0].contents, kNoGamma), kNoGamma);
  ASSERT_EQ(next.size(), 2u);
  EXPECT_EQ(next[0].contents, S({"p", "r"}, {"p | q", "r & p"}));
  EXPECT_EQ(next[1].contents, S({"q", "p", "r"}, {"p | q", "r & p"}));
}

TEST(Rules, ReducedFormulasAreNotReducedAgain) {
  // The unprimed box and propositional rules skip formulas already in rfs;
  // the unprimed diamond rules do not.
  EXPECT_FALSE(applicable_rule(S({"p & q", "p", "q"}, {"p & q"}), kNoGamma));
  const auto dmd = applicable_rule(S({"<s;t>p"}, {"<s;t>p"}), kNoGamma);
  ASSERT_TRUE(dmd);
  EXPECT_EQ(dmd->rule, RuleId::DmdSeq);
}

TEST(Rules, TransitionCarriesBoxesAndAssumptions) {
  const std::vector<Formula> gamma{F("~p | ~q")};
  const NodeContents c = S({"<s>p", "<t>q", "[s]q", "[t]r", "p"});
  const auto inst = applicable_rule(c, gamma);
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->rule, RuleId::Trans);
  const auto out = apply_rule(c, *inst, gamma);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].contents, S({"p", "q", "~p | ~q"}));
  EXPECT_EQ(out[0].edge_label, Item{F("<s>p")});
  EXPECT_EQ(out[1].contents, S({"q", "r", "~p | ~q"}));
  for (const auto& k : out) EXPECT_TRUE(k.contents.rfs.empty());
}

TEST(Rules, EndNodesHaveNoRule) {
  EXPECT_FALSE(applicable_rule(S({"p", "~q", "[s]p"}), kNoGamma));
  EXPECT_FALSE(applicable_rule(S({}), kNoGamma));
}

TEST(PrimedRules, BoxPrimePropagatesAlongRoles) {
  const NodeContents c = C({"a : [s]q", "a : <s>p", "s(a,b)"});
  const auto inst = applicable_rule(c, kNoGamma);
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->rule, RuleId::BoxPrime);
  ASSERT_TRUE(inst->side);
  EXPECT_EQ(*inst->side, A("s(a,b)"));
  const auto out = apply_rule(c, *inst, kNoGamma);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].contents, C({"a : [s]q", "a : <s>p", "s(a,b)", "b : q"}));

  const auto trans = applicable_rule(out[0].contents, kNoGamma);
  ASSERT_TRUE(trans);
  EXPECT_EQ(trans->rule, RuleId::TransP);
  const auto succ = apply_rule(out[0].contents, *trans, kNoGamma);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(succ[0].contents, S({"p", "q"}));
  EXPECT_EQ(succ[0].edge_label, Item{A("a : <s>p")});
}

TEST(PrimedRules, ClashesPerSubject) {
  EXPECT_FALSE(applicable_rule(C({"a : p", "b : ~p"}), kNoGamma));
  EXPECT_EQ(applicable_rule(C({"a : p", "a : ~p"}), kNoGamma)->rule, RuleId::BotP);
  EXPECT_EQ(applicable_rule(C({"a : false"}), kNoGamma)->rule, RuleId::Bot0P);
}

TEST(PrimedRules, AreMonotonic) {
  // Conclusions of primed static rules keep the whole premise.
  testing::RandomGen gen(23, {.formula_depth = 3});
  std::size_t applications = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Assertion> abox;
    for (const Assertion& a : gen.abox(3, 2))
      abox.push_back(a.is_concept() ? Assertion::concept_of(a.subject(), to_nnf(a.formula())) : a);
    NodeContents c = NodeContents::complex(abox);
    for (int depth = 0; depth < 8; ++depth) {
      const auto inst = applicable_rule(c, kNoGamma);
      if (!inst || is_transitional(inst->rule) || is_clash(inst->rule)) break;
      ASSERT_TRUE(is_primed(inst->rule));
      const auto out = apply_rule(c, *inst, kNoGamma);
      for (const Conclusion& k : out) {
        ++applications;
        EXPECT_EQ(k.contents.kind, NodeKind::Complex);
        EXPECT_TRUE(std::includes(k.contents.label.begin(), k.contents.label.end(), c.label.begin(), c.label.end()));
        EXPECT_TRUE(std::includes(k.contents.rfs.begin(), k.contents.rfs.end(), c.rfs.begin(), c.rfs.end()));
        EXPECT_NE(k.contents, c);
      }
      c = out[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(out.size()) - 1))].contents;
    }
  }
  EXPECT_GT(applications, 300u);
}

TEST(NodeContents, ProjectionAndHash) {
  const NodeContents c = C({"a : p", "a : <s>q", "b : r", "s(a,b)"});
  EXPECT_EQ(c.projection("a"), (std::vector<Formula>{F("p"), F("<s>q")}));
  EXPECT_EQ(c.projection("b"), (std::vector<Formula>{F("r")}));
  EXPECT_EQ(C({"b : r", "a : p"}), C({"a : p", "b : r"}));
  EXPECT_EQ(C({"b : r", "a : p"}).hash(), C({"a : p", "b : r"}).hash());
  EXPECT_NE(S({"p"}), S({"p"}, {"q"}));
}

}  // namespace
}  // namespace pdl
