#include "owlhorn/knowledge_base.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "owlhorn/translator.hpp"

namespace owlhorn {
namespace {

struct LiteralHash {
  size_t operator()(const GroundLiteral& l) const noexcept {
    return GroundAtomHash()(l.atom) * 2 + static_cast<size_t>(l.polarity);
  }
};

using LiteralSet = std::unordered_set<GroundLiteral, LiteralHash>;

long long store_size(const FactStore& s) { return static_cast<long long>(s.size()); }

}  // namespace

std::vector<GroundLiteral> replay(const std::vector<GroundLiteral>& base, const std::vector<JournalEntry>& journal) {
  std::vector<GroundLiteral> facts = base;
  LiteralSet present(facts.begin(), facts.end());
  std::vector<GroundLiteral> asserted;
  for (const auto& e : journal) {
    if (e.op == JournalEntry::Op::Assert) {
      if (present.insert(e.fact).second) facts.push_back(e.fact);
      asserted.push_back(e.fact);
    } else if (present.erase(e.fact)) {
      facts.erase(std::find(facts.begin(), facts.end(), e.fact));
    }
  }
  for (const auto& f : asserted) {
    if (!present.count(f)) continue;
    for (const auto& d : declarations_for(f.atom)) {
      if (present.insert(d).second) facts.push_back(d);
    }
  }
  return facts;
}

KnowledgeBase::KnowledgeBase(Program program, MaterializeOptions options)
    : program_(std::move(program)), facts_(program_.facts), options_(options) {
  rebuild();
}

KnowledgeBase::KnowledgeBase(Program program, std::vector<JournalEntry> journal, std::string active,
                             std::map<std::string, FactStore> stores, MaterializeOptions options)
    : program_(std::move(program)), journal_(std::move(journal)), active_(std::move(active)), options_(options) {
  facts_ = replay(program_.facts, journal_);
  if (!program_.rulesets.count(active_)) throw UnknownRuleSet("unknown rule set '" + active_ + "'");
  for (const auto& [name, rules] : program_.rulesets) {
    auto it = stores.find(name);
    if (it == stores.end()) {
      stores_[name] = std::make_shared<const FactStore>(materialize(live_program(), name, options_));
    } else {
      stores_[name] = std::make_shared<const FactStore>(std::move(it->second));
    }
  }
}

Program KnowledgeBase::live_program() const {
  Program p = program_;
  p.facts = facts_;
  return p;
}

void KnowledgeBase::rebuild() {
  Program live = live_program();
  std::map<std::string, std::shared_ptr<const FactStore>> next;
  for (const auto& [name, rules] : live.rulesets) {
    next[name] = std::make_shared<const FactStore>(materialize(live, name, options_));
  }
  std::lock_guard lock(mutex_);
  stores_ = std::move(next);
}

std::string KnowledgeBase::active() const {
  std::lock_guard lock(mutex_);
  return active_;
}

std::vector<std::string> KnowledgeBase::rulesets() const {
  std::vector<std::string> out;
  for (const auto& [name, rules] : program_.rulesets) out.push_back(name);
  return out;
}

std::shared_ptr<const FactStore> KnowledgeBase::snapshot() const {
  std::lock_guard lock(mutex_);
  return stores_.at(active_);
}

std::shared_ptr<const FactStore> KnowledgeBase::snapshot(const std::string& ruleset) const {
  std::lock_guard lock(mutex_);
  auto it = stores_.find(ruleset);
  if (it == stores_.end()) throw UnknownRuleSet("unknown rule set '" + ruleset + "'");
  return it->second;
}

std::vector<GroundLiteral> KnowledgeBase::current_facts() const {
  std::lock_guard lock(mutex_);
  return facts_;
}

ChangeResult KnowledgeBase::assert_fact(const GroundLiteral& fact) {
  if (fact.atom.pred.layer() != Layer::Base) {
    throw std::invalid_argument("only Base-layer facts can be asserted: " + fact.to_string());
  }
  std::lock_guard writer(write_mutex_);
  ChangeResult result;
  LiteralSet present(facts_.begin(), facts_.end());
  if (present.count(fact)) {
    result.warning = "already present: " + fact.to_string();
    return result;
  }
  auto journal = journal_;
  journal.push_back({JournalEntry::Op::Assert, fact});
  auto facts = replay(program_.facts, journal);
  std::vector<GroundLiteral> added;
  for (const auto& f : facts) {
    if (!present.count(f)) added.push_back(f);
  }

  Program before = live_program();
  std::map<std::string, std::shared_ptr<const FactStore>> next;
  std::shared_ptr<const FactStore> old_active;
  {
    std::lock_guard lock(mutex_);
    next = stores_;
    old_active = stores_.at(active_);
  }
  for (auto& [name, store] : next) {
    auto grown = std::make_shared<FactStore>(*store);
    extend(*grown, before, name, added, {}, options_);
    store = std::move(grown);
  }

  std::lock_guard lock(mutex_);
  result.changed = true;
  result.delta = store_size(*next.at(active_)) - store_size(*old_active);
  journal_ = std::move(journal);
  facts_ = std::move(facts);
  stores_ = std::move(next);
  return result;
}

ChangeResult KnowledgeBase::retract_fact(const GroundLiteral& fact) {
  std::lock_guard writer(write_mutex_);
  ChangeResult result;
  if (std::find(facts_.begin(), facts_.end(), fact) == facts_.end()) {
    result.warning = "not present, nothing retracted: " + fact.to_string();
    return result;
  }
  long long before = store_size(*snapshot());
  auto journal = journal_;
  journal.push_back({JournalEntry::Op::Retract, fact});
  auto facts = replay(program_.facts, journal);

  Program live = program_;
  live.facts = facts;
  std::map<std::string, std::shared_ptr<const FactStore>> next;
  for (const auto& [name, rules] : live.rulesets) {
    next[name] = std::make_shared<const FactStore>(materialize(live, name, options_));
  }

  std::lock_guard lock(mutex_);
  journal_ = std::move(journal);
  facts_ = std::move(facts);
  stores_ = std::move(next);
  result.changed = true;
  result.delta = store_size(*stores_.at(active_)) - before;
  return result;
}

void KnowledgeBase::swap(const std::string& ruleset) {
  std::lock_guard writer(write_mutex_);
  std::lock_guard lock(mutex_);
  if (!stores_.count(ruleset)) throw UnknownRuleSet("unknown rule set '" + ruleset + "'");
  active_ = ruleset;
}

TruthValue KnowledgeBase::truth_value(const GroundAtom& atom) const { return snapshot()->truth_value(atom); }

QueryResult KnowledgeBase::query(const Literal& pattern) const { return owlhorn::query(*snapshot(), pattern); }

std::vector<Inconsistency> KnowledgeBase::check_consistency() const {
  std::string name = active();
  return find_inconsistencies(*snapshot(name), program_.rules(name));
}

}  // namespace owlhorn
