#include <gtest/gtest.h>

#include "owlhorn/diagnostics.hpp"
#include "owlhorn/engine.hpp"
#include "owlhorn/ingest.hpp"
#include "owlhorn/minimizer.hpp"
#include "support.hpp"

using namespace owlhorn;
using namespace testing_support;

namespace {

const char* kChain =
    "isclass(a).\n"
    "isClass(C) :- isclass(C).\n"
    "isSubClassOf(C, D) :- issubclassof(C, D).\n"
    "isSet(C, L) :- isset(C, L).\n"
    "isClass(C) :- isSet(C, L), member(X, L).\n";

std::vector<std::string> ids(const Program& p, const std::string& ruleset = kDefaultRuleSet) {
  std::vector<std::string> out;
  for (const auto& r : p.rules(ruleset)) out.push_back(r.id);
  return out;
}

}  // namespace

TEST(Manifest, ParsesQueriesDynamicAndComments) {
  auto m = parse_manifest("# entry points\nquery isMemberOf/2\n\ndynamic ismemberof/2  # sensor feed\ndynamic isset/2\n");
  ASSERT_EQ(m.queries.size(), 1u);
  EXPECT_EQ(m.queries[0], Predicate(Vocab::IsMemberOf, Layer::Derived));
  ASSERT_EQ(m.dynamic.size(), 2u);
  EXPECT_EQ(m.dynamic[0], Predicate(Vocab::IsMemberOf, Layer::Base));
  EXPECT_EQ(m.dynamic[1], Predicate(Vocab::IsSet, Layer::Base));
}

TEST(Manifest, ErrorsNameTheLine) {
  auto expect_line = [](const std::string& text, const std::string& line) {
    try {
      parse_manifest(text);
      FAIL() << "expected ParseError for " << text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
    }
  };
  expect_line("query isMemberOf/2\nfrobnicate isClass/1\n", "2");
  expect_line("query isMemberOf/3\n", "1");
  expect_line("\n\nquery noSuchThing/2\n", "3");
  expect_line("query isMemberOf\n", "1");
}

TEST(Minimize, KeepsOnlyRulesThatCanReachAQuery) {
  auto p = translate_only(kChain);
  Manifest m;
  m.queries.push_back(Predicate(Vocab::IsClass, Layer::Derived));
  EXPECT_EQ(ids(minimize(p, m)), std::vector<std::string>{"r1"});
  m.dynamic.push_back(Predicate(Vocab::IsSet, Layer::Base));
  EXPECT_EQ(ids(minimize(p, m)), (std::vector<std::string>{"r1", "r3", "r4"}));
}

TEST(Minimize, SatisfiabilityFixpointIgnoresSelfRecursion) {
  auto p = translate_only(
      "issubclassof(a, b).\n"
      "isSubClassOf(C, D) :- issubclassof(C, D).\n"
      "isSubClassOf(C, E) :- isSubClassOf(C, D), isSubClassOf(D, E).\n"
      "isClass(C) :- isClass(C), isSubClassOf(C, C).\n");
  auto sat = satisfiable_predicates(p);
  EXPECT_EQ(sat.rules, (std::vector<bool>{true, true, false}));
  EXPECT_TRUE(sat.predicates.count(PredNode{Predicate(Vocab::IsSubClassOf, Layer::Derived), Polarity::Positive}));
  EXPECT_FALSE(sat.predicates.count(PredNode{Predicate(Vocab::IsClass, Layer::Derived), Polarity::Positive}));
}

TEST(Minimize, TestabilityCoversBothPolaritiesOfQueries) {
  auto p = translate_only(
      "logicNot(ismemberof(t, a)).\n"
      "logicNot(isMemberOf(X, C)) :- logicNot(ismemberof(X, C)).\n"
      "isMemberOf(X, C) :- ismemberof(X, C).\n");
  Manifest m;
  m.queries.push_back(Predicate(Vocab::IsMemberOf, Layer::Derived));
  auto t = testable_predicates(p, kDefaultRuleSet, m);
  EXPECT_EQ(t.rules, (std::vector<bool>{true, true}));
  EXPECT_TRUE(t.predicates.count(PredNode{Predicate(Vocab::IsMemberOf, Layer::Base), Polarity::Negative}));
  EXPECT_EQ(ids(minimize(p, m)), std::vector<std::string>{"r1"});
}

TEST(Minimize, DependencyGraphEdges) {
  auto p = translate_only(kChain);
  auto g = build_dependency_graph(p);
  ASSERT_EQ(g.rules.size(), 4u);
  const auto& r4 = g.rules[3];
  ASSERT_EQ(r4.heads.size(), 1u);
  EXPECT_EQ(r4.heads[0].pred, Predicate(Vocab::IsClass, Layer::Derived));
  ASSERT_EQ(r4.body.size(), 1u);
  EXPECT_EQ(r4.body[0].pred, Predicate(Vocab::IsSet, Layer::Derived));
  EXPECT_EQ(r4.builtins, 1u);
  EXPECT_FALSE(r4.disjunctive);
  EXPECT_TRUE(g.fact_nodes.count(PredNode{Predicate(Vocab::IsClass, Layer::Base), Polarity::Positive}));
}

TEST(Minimize, DisjunctiveHeadCountsEveryDisjunct) {
  auto p = compile_fixtures({"complement.pl"});
  auto g = build_dependency_graph(p);
  const auto& rules = p.rules();
  bool seen = false;
  for (size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].id != "GR7") continue;
    seen = true;
    EXPECT_TRUE(g.rules[i].disjunctive);
    EXPECT_EQ(g.rules[i].heads.size(), 2u);
  }
  EXPECT_TRUE(seen);
}

TEST(Minimize, ScenarioAnswersPreservedInEveryRuleSet) {
  auto p = compile_fixtures({"scenario.pl"}, {}, {{"high", {"alerts_high.pl"}}, {"low", {"alerts_low.pl"}}});
  auto m = parse_manifest("query isMemberOf/2\n");
  auto q = minimize(p, m);
  for (const auto& [name, rules] : p.rulesets) {
    EXPECT_LT(q.rules(name).size(), rules.size()) << name;
    auto a = query(materialize(p, name), parse_query("isMemberOf(X, Y)")).lines();
    auto b = query(materialize(q, name), parse_query("isMemberOf(X, Y)")).lines();
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Minimize, ErrorRulesDroppedWithoutConsistencyCheck) {
  auto p = compile_fixtures({"contradiction.pl"}, {{"consistency_check", "off"}});
  auto m = parse_manifest("query isMemberOf/2\n");
  for (const auto& r : minimize(p, m).rules()) {
    if (auto* head = std::get_if<Literal>(&r.head)) EXPECT_NE(head->atom.pred.vocab(), Vocab::Error) << r.id;
  }
  auto on = compile_fixtures({"contradiction.pl"});
  bool kept = false;
  for (const auto& r : minimize(on, m).rules()) {
    if (auto* head = std::get_if<Literal>(&r.head)) kept = kept || head->atom.pred.vocab() == Vocab::Error;
  }
  EXPECT_TRUE(kept);
}
