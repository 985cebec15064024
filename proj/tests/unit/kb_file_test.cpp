#include <gtest/gtest.h>

#include <filesystem>

#include "owlhorn/kb_file.hpp"
#include "owlhorn/knowledge_base.hpp"
#include "support.hpp"
#include "json.hpp"

using namespace owlhorn;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto base = fs::temp_directory_path() / ("owlhorn-kbfile-" + std::to_string(::getpid()));
  fs::create_directories(base);
  return base;
}

}  // namespace

TEST(KbFile, SerializeIsDeterministicAndRoundTrips) {
  KnowledgeBase kb(compile_fixtures({"scenario.pl"}, {}, {{"low", {"alerts_low.pl"}}}));
  kb.assert_fact(lit("ismemberof(unit8, motorizedInfantry)"));
  kb.swap("low");
  auto text = serialize_kb(kb);
  EXPECT_EQ(text, serialize_kb(kb));
  auto back = deserialize_kb(text);
  EXPECT_EQ(serialize_kb(*back), text);
  EXPECT_EQ(back->active(), "low");
  EXPECT_EQ(back->journal(), kb.journal());
  for (const auto& r : kb.rulesets()) EXPECT_EQ(dump(*back->snapshot(r)), dump(*kb.snapshot(r))) << r;
}

TEST(KbFile, LoadedBaseSupportsFurtherChanges) {
  KnowledgeBase kb(compile_fixtures({"convoy.pl"}));
  auto back = deserialize_kb(serialize_kb(kb));
  back->assert_fact(lit("ismemberof(convoy2, convoy)"));
  kb.assert_fact(lit("ismemberof(convoy2, convoy)"));
  EXPECT_EQ(dump(*back->snapshot()), dump(*kb.snapshot()));
}

TEST(KbFile, ProgramRoundTripKeepsPassesAndPragmas) {
  auto p = compile_fixtures({"describer_card.owl"}, {{"existential", "assert-fresh"}, {"max_card", "error"}});
  auto back = deserialize_program(serialize_program(p));
  EXPECT_EQ(back.pragmas, p.pragmas);
  EXPECT_EQ(back.passes, p.passes);
  EXPECT_EQ(back.facts, p.facts);
  ASSERT_EQ(back.rules().size(), p.rules().size());
  for (size_t i = 0; i < p.rules().size(); ++i) {
    EXPECT_TRUE(back.rules()[i].same_clause(p.rules()[i])) << p.rules()[i].id;
    EXPECT_EQ(back.rules()[i].id, p.rules()[i].id);
    EXPECT_EQ(back.rules()[i].origin, p.rules()[i].origin);
  }
}

TEST(KbFile, RejectsWrongFormatVersionAndGarbage) {
  KnowledgeBase kb(compile_fixtures({"truth_true.pl"}));
  auto j = nlohmann::json::parse(serialize_kb(kb));
  auto wrong_format = j;
  wrong_format["format"] = "something-else";
  EXPECT_THROW(deserialize_kb(wrong_format.dump()), KbFormatError);
  auto wrong_version = j;
  wrong_version["version"] = kKbVersion + 1;
  EXPECT_THROW(deserialize_kb(wrong_version.dump()), KbFormatError);
  auto bad_fact = j;
  bad_fact["journal"] = nlohmann::json::array({{{"op", "assert"}, {"fact", "isMemberOf("}}});
  EXPECT_THROW(deserialize_kb(bad_fact.dump()), KbFormatError);
  EXPECT_THROW(deserialize_kb("{not json"), KbFormatError);
  EXPECT_THROW(deserialize_kb("[]"), KbFormatError);
}

TEST(KbFile, SaveIsAtomicAndLoadable) {
  auto dir = temp_dir();
  auto path = (dir / "kb.json").string();
  KnowledgeBase kb(compile_fixtures({"convoy.pl"}));
  {
    KbLock lock(path, true);
    save_kb(kb, path);
  }
  for (const auto& e : fs::directory_iterator(dir)) {
    auto name = e.path().filename().string();
    EXPECT_TRUE(name == "kb.json" || name == "kb.json.lock") << name;
  }
  std::unique_ptr<KnowledgeBase> back;
  {
    KbLock a(path, false);
    KbLock b(path, false);
    back = load_kb(path);
  }
  EXPECT_EQ(serialize_kb(*back), serialize_kb(kb));
  EXPECT_THROW(load_kb((dir / "missing.json").string()), std::runtime_error);
  fs::remove_all(dir);
}

TEST(KbFile, ParseDisjunctionText) {
  auto d = parse_disjunction("or(ismemberof(t, b), or(ismemberof(t, a), ismemberof(t, c)))");
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.to_string(), "or(ismemberof(t, a), or(ismemberof(t, b), ismemberof(t, c)))");
  EXPECT_ANY_THROW(parse_disjunction("or(ismemberof(t, b)"));
}
