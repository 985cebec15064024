#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "owlhorn/diagnostics.hpp"
#include "owlhorn/rule.hpp"

namespace owlhorn {

// How a violated existential / minimum-cardinality restriction is handled.
enum class ExistentialStrategy { Error, Skolemize, AssertFresh };
// How a violated maximum-cardinality restriction is handled.
enum class MaxCardStrategy { Error, Merge };

std::string_view to_string(ExistentialStrategy s);
std::string_view to_string(MaxCardStrategy s);
std::optional<ExistentialStrategy> parse_existential_strategy(std::string_view text);
std::optional<MaxCardStrategy> parse_max_card_strategy(std::string_view text);

struct Pragmas {
  ExistentialStrategy existential = ExistentialStrategy::Skolemize;
  MaxCardStrategy max_card = MaxCardStrategy::Merge;
  unsigned skolem_depth_cap = 1;
  bool consistency_check = true;
  // Largest cardinality bound that gets counting rules.
  unsigned cardinality_cap = 3;

  // Applies `name = value`; returns false for an unknown name or bad value.
  bool set(std::string_view name, std::string_view value);
  friend bool operator==(const Pragmas&, const Pragmas&) = default;
};

// A check that runs after saturation and needs to observe the absence of
// facts, which rules cannot express monotonically.
struct ConstraintPass {
  enum class Action { AssertFresh, ReportError };

  Action action = Action::AssertFresh;
  std::string id;
  TermId cls;
  TermId property;
  // Set for someValuesFrom restrictions: values must be members of it.
  std::optional<TermId> value_class;
  unsigned min_count = 1;
  std::string message;

  friend bool operator==(const ConstraintPass&, const ConstraintPass&) = default;
};

inline const std::string kDefaultRuleSet = "default";

struct Declarations {
  std::set<std::string> classes;
  std::set<std::string> individuals;
  std::set<std::string> properties;
  std::set<std::string> datatypes;
};

struct Program {
  Pragmas pragmas;
  std::vector<GroundLiteral> facts;
  std::vector<Disjunction> disjunctions;
  std::map<std::string, std::vector<Rule>> rulesets{{kDefaultRuleSet, {}}};
  std::vector<ConstraintPass> passes;

  // Throws UnknownRuleSet.
  const std::vector<Rule>& rules(const std::string& ruleset = kDefaultRuleSet) const;
  std::vector<Rule>& rules(const std::string& ruleset = kDefaultRuleSet);

  // Appends unless already present; returns whether it was added.
  bool add_fact(const GroundLiteral& fact);
  bool add_disjunction(const Disjunction& d);
  // Appends unless a structurally identical clause is already in the set.
  bool add_rule(Rule rule, const std::string& ruleset = kDefaultRuleSet);

  Declarations declarations() const;
};

// Constants used in facts that are declared in no category or in several.
std::vector<Diagnostic> check_declarations(const Program& program);

}  // namespace owlhorn
