#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "owlhorn/engine.hpp"

namespace owlhorn {

struct JournalEntry {
  enum class Op { Assert, Retract };
  Op op = Op::Assert;
  GroundLiteral fact;

  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

struct ChangeResult {
  bool changed = false;
  // Facts gained (assert) or net change in facts (retract) in the active store.
  long long delta = 0;
  std::string warning;
};

// A compiled program with one materialized store per rule set, kept current
// under asserts and retracts. Writers are serialized; readers take a
// snapshot and never see a half-applied change.
class KnowledgeBase {
 public:
  // Materializes every rule set. Throws CapacityError.
  explicit KnowledgeBase(Program program, MaterializeOptions options = {});
  // Adopts stores read back from a file; they must be the materializations
  // of `program` (base facts) with `journal` applied.
  KnowledgeBase(Program program, std::vector<JournalEntry> journal, std::string active,
                std::map<std::string, FactStore> stores, MaterializeOptions options = {});

  // Program as compiled, base facts without the journal.
  const Program& program() const { return program_; }
  // Not synchronized with concurrent writers.
  const std::vector<JournalEntry>& journal() const { return journal_; }
  std::string active() const;
  std::vector<std::string> rulesets() const;

  std::shared_ptr<const FactStore> snapshot() const;
  // Throws UnknownRuleSet.
  std::shared_ptr<const FactStore> snapshot(const std::string& ruleset) const;

  // Base facts with the journal replayed, plus declarations for asserted facts.
  std::vector<GroundLiteral> current_facts() const;

  // Only Base-layer facts; throws std::invalid_argument otherwise.
  ChangeResult assert_fact(const GroundLiteral& fact);
  // Rebuilds every store from scratch. Absent facts give a warning.
  ChangeResult retract_fact(const GroundLiteral& fact);
  // Throws UnknownRuleSet.
  void swap(const std::string& ruleset);

  TruthValue truth_value(const GroundAtom& atom) const;
  QueryResult query(const Literal& pattern) const;
  std::vector<Inconsistency> check_consistency() const;

 private:
  Program live_program() const;
  void rebuild();

  // Held for a whole change; `mutex_` only while publishing or reading.
  std::mutex write_mutex_;
  mutable std::mutex mutex_;
  Program program_;
  std::vector<JournalEntry> journal_;
  std::vector<GroundLiteral> facts_;
  std::string active_ = kDefaultRuleSet;
  std::map<std::string, std::shared_ptr<const FactStore>> stores_;
  MaterializeOptions options_;
};

// Base facts after replaying `journal`, plus declarations for facts the
// journal asserted, in a deterministic order.
std::vector<GroundLiteral> replay(const std::vector<GroundLiteral>& base, const std::vector<JournalEntry>& journal);

}  // namespace owlhorn
