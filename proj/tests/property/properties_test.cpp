#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "owlhorn/engine.hpp"
#include "owlhorn/ingest.hpp"
#include "owlhorn/kb_file.hpp"
#include "owlhorn/knowledge_base.hpp"
#include "owlhorn/minimizer.hpp"
#include "owlhorn/translator.hpp"
#include "support.hpp"

using namespace owlhorn;
using namespace testing_support;

namespace {

constexpr unsigned kPrograms = 120;

GenOptions user_only() {
  GenOptions o;
  o.max_facts = 25;
  o.max_rules = 10;
  o.max_constants = 6;
  o.derived_facts = true;
  return o;
}

GenOptions with_system() {
  GenOptions o;
  o.max_facts = 30;
  o.max_rules = 12;
  o.max_constants = 8;
  o.system_constructs = true;
  return o;
}

Manifest membership_feed() {
  Manifest m;
  m.queries.push_back(Predicate(Vocab::IsMemberOf, Layer::Derived));
  m.dynamic.push_back(Predicate(Vocab::IsMemberOf, Layer::Base));
  m.dynamic.push_back(Predicate(Vocab::IsSubClassOf, Layer::Base));
  m.dynamic.push_back(Predicate(Vocab::HasPropertyWith, Layer::Base));
  return m;
}

std::set<std::string> kept_ids(const Program& p) {
  std::set<std::string> out;
  for (const auto& [name, rules] : p.rulesets) {
    for (const auto& r : rules) out.insert(name + "/" + r.id);
  }
  return out;
}

// Compiles, retrying with fresh draws when the generator hits an unsupported
// combination (e.g. a cardinality bound the pragmas cannot express).
Program draw(std::mt19937& rng, const GenOptions& o, RandomProgram* out = nullptr) {
  for (;;) {
    auto rp = random_program(rng, o);
    try {
      auto p = compile_text(rp.text, rp.pragmas);
      if (out) *out = rp;
      return p;
    } catch (const std::runtime_error&) {
    }
  }
}

}  // namespace

TEST(Properties, SemiNaiveNaiveAndOracleAgreeOnUserPrograms) {
  std::mt19937 rng(4242);
  for (unsigned i = 0; i < kPrograms; ++i) {
    auto rp = random_program(rng, user_only());
    auto p = translate_only(rp.text);
    auto semi = dump(materialize(p));
    ASSERT_EQ(semi, dump(materialize_naive(p))) << rp.text;
    ASSERT_EQ(semi, oracle_materialize(p).dump()) << rp.text;
  }
}

TEST(Properties, SemiNaiveMatchesNaiveWithSystemRules) {
  std::mt19937 rng(777);
  for (unsigned i = 0; i < kPrograms; ++i) {
    RandomProgram rp;
    auto p = draw(rng, with_system(), &rp);
    ASSERT_EQ(dump(materialize(p)), dump(materialize_naive(p))) << rp.text;
  }
}

TEST(Properties, StoresAreDuplicateFreeAndRoundsGrow) {
  std::mt19937 rng(31337);
  for (unsigned i = 0; i < kPrograms; ++i) {
    RandomProgram rp;
    auto p = draw(rng, with_system(), &rp);
    MaterializeStats stats;
    auto s = materialize(p, kDefaultRuleSet, {}, &stats);
    auto d = dump(s);
    ASSERT_TRUE(std::adjacent_find(d.begin(), d.end()) == d.end()) << rp.text;
    ASSERT_EQ(d.size(), s.positive_count() + s.negative_count() + s.disjunctions().size()) << rp.text;
    for (size_t r = 1; r < stats.round_sizes.size(); ++r) {
      ASSERT_GE(stats.round_sizes[r].positives, stats.round_sizes[r - 1].positives) << rp.text;
      ASSERT_GE(stats.round_sizes[r].negatives, stats.round_sizes[r - 1].negatives) << rp.text;
    }
  }
}

TEST(Properties, AssertOrderDoesNotMatterAndEqualsRecompiling) {
  std::mt19937 rng(2024);
  auto feed = membership_feed();
  for (unsigned i = 0; i < kPrograms / 2; ++i) {
    auto p = draw(rng, with_system());
    auto facts = random_dynamic_facts(rng, feed, 8);
    KnowledgeBase forward(p), backward(p);
    for (const auto& f : facts) forward.assert_fact(f);
    for (auto it = facts.rbegin(); it != facts.rend(); ++it) backward.assert_fact(*it);
    auto whole = p;
    for (const auto& f : forward.current_facts()) whole.add_fact(f);
    auto expected = dump(materialize(whole));
    ASSERT_EQ(dump(*forward.snapshot()), expected);
    ASSERT_EQ(dump(*backward.snapshot()), expected);
  }
}

TEST(Properties, RetractUndoesAssert) {
  std::mt19937 rng(55);
  auto feed = membership_feed();
  unsigned exact = 0;
  for (unsigned i = 0; i < kPrograms / 2; ++i) {
    auto p = draw(rng, with_system());
    KnowledgeBase kb(p);
    for (const auto& f : random_dynamic_facts(rng, feed, 8)) {
      auto facts_before = kb.current_facts();
      auto before = dump(*kb.snapshot());
      if (!kb.assert_fact(f).changed) continue;
      ASSERT_TRUE(kb.retract_fact(f).changed);
      auto q = p;
      q.facts.clear();
      for (const auto& g : kb.current_facts()) q.add_fact(g);
      ASSERT_EQ(dump(*kb.snapshot()), dump(materialize(q)));
      // Declarations the assert added stay behind; without them the store
      // is back where it started.
      if (kb.current_facts() == facts_before) {
        ASSERT_EQ(dump(*kb.snapshot()), before);
        ++exact;
      }
    }
  }
  EXPECT_GT(exact, 0u);
}

TEST(Properties, SerializationRoundTripsRandomBases) {
  std::mt19937 rng(808);
  auto feed = membership_feed();
  for (unsigned i = 0; i < kPrograms / 4; ++i) {
    auto p = draw(rng, with_system());
    KnowledgeBase kb(p);
    for (const auto& f : random_dynamic_facts(rng, feed, 8)) kb.assert_fact(f);
    auto text = serialize_kb(kb);
    auto back = deserialize_kb(text);
    ASSERT_EQ(serialize_kb(*back), text);
    ASSERT_EQ(dump(*back->snapshot()), dump(*kb.snapshot()));
  }
}

TEST(Properties, MinimizerIsMonotoneInItsManifest) {
  std::mt19937 rng(99);
  for (unsigned i = 0; i < kPrograms; ++i) {
    auto p = draw(rng, with_system());
    auto small = random_manifest(rng);
    auto big = small;
    auto extra = random_manifest(rng);
    big.queries.insert(big.queries.end(), extra.queries.begin(), extra.queries.end());
    big.dynamic.insert(big.dynamic.end(), extra.dynamic.begin(), extra.dynamic.end());
    auto a = kept_ids(minimize(p, small));
    auto b = kept_ids(minimize(p, big));
    ASSERT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    auto all = kept_ids(p);
    ASSERT_TRUE(std::includes(all.begin(), all.end(), b.begin(), b.end()));
  }
}

TEST(Properties, MinimizerPreservesQueryAnswers) {
  std::mt19937 rng(123);
  for (unsigned i = 0; i < kPrograms; ++i) {
    RandomProgram rp;
    auto p = draw(rng, with_system(), &rp);
    auto m = random_manifest(rng);
    auto q = minimize(p, m);
    for (const auto& f : random_dynamic_facts(rng, m, 8)) {
      p.add_fact(f);
      q.add_fact(f);
    }
    auto full = materialize(p), small = materialize(q);
    std::vector<Predicate> preds = m.queries;
    if (p.pragmas.consistency_check) preds.push_back(Predicate(Vocab::Error, Layer::Derived));
    for (auto pred : preds) {
      for (auto pol : {Polarity::Positive, Polarity::Negative}) {
        auto x = full.atoms(pred, pol), y = small.atoms(pred, pol);
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        ASSERT_EQ(x, y) << rp.text;
      }
    }
  }
}

TEST(Properties, LogicNotParityAndDisjunctionCanonicalForm) {
  std::mt19937 rng(5);
  const std::vector<std::string> atoms{"ismemberof(t, a)", "ismemberof(t, b)", "ismemberof(u, c)", "isclass(d)",
                                       "issubclassof(a, b)"};
  for (unsigned i = 0; i < 500; ++i) {
    unsigned depth = rng() % 6;
    const auto& a = atoms[rng() % atoms.size()];
    std::string text = a;
    for (unsigned k = 0; k < depth; ++k) text = "logicNot(" + text + ")";
    auto l = parse_ground_literal(text);
    ASSERT_EQ(l.polarity, depth % 2 ? Polarity::Negative : Polarity::Positive) << text;
    ASSERT_EQ(l.atom.to_string(), a);

    std::vector<GroundAtom> picked;
    unsigned n = 1 + rng() % 4;
    for (unsigned k = 0; k < n; ++k) picked.push_back(atom(atoms[rng() % atoms.size()]));
    auto d = make_disjunction(picked);
    auto shuffled = picked;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ASSERT_EQ(make_disjunction(shuffled), d);
    if (d.size() > 1) {
      ASSERT_EQ(parse_disjunction(d.to_string()), d);
    }
  }
}
