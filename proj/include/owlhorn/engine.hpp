#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "owlhorn/fact_store.hpp"
#include "owlhorn/program.hpp"

namespace owlhorn {

struct MaterializeOptions {
  size_t fact_cap = 10'000'000;
  unsigned pass_iteration_cap = 5;
};

struct RoundSizes {
  size_t positives = 0;
  size_t negatives = 0;
  size_t errors = 0;
};

struct MaterializeStats {
  // Complete body matches, i.e. ground rule instances whose head was built.
  uint64_t rule_instances = 0;
  unsigned rounds = 0;
  unsigned pass_iterations = 0;
  // New facts per rule id.
  std::map<std::string, uint64_t> facts_by_rule;
  // Store sizes after each round.
  std::vector<RoundSizes> round_sizes;
};

// Least fixpoint of the rule set over the program's facts and disjunctions,
// with disjunction propagation after each round and the constraint passes
// after saturation. Throws UnknownRuleSet and CapacityError.
FactStore materialize(const Program& program, const std::string& ruleset = kDefaultRuleSet,
                      const MaterializeOptions& options = {}, MaterializeStats* stats = nullptr);

// Same result by naive iteration: every rule over the whole store each round,
// body literals joined in written order without indexes.
FactStore materialize_naive(const Program& program, const std::string& ruleset = kDefaultRuleSet,
                            const MaterializeOptions& options = {}, MaterializeStats* stats = nullptr);

// Adds facts to `store`, which must be a fixpoint of the same program and rule
// set, and continues from the new facts only. Programs with constraint passes
// are rematerialized instead, since a pass may have fired on the old store.
void extend(FactStore& store, const Program& program, const std::string& ruleset,
            const std::vector<GroundLiteral>& facts, const std::vector<Disjunction>& disjunctions = {},
            const MaterializeOptions& options = {}, MaterializeStats* stats = nullptr);

// One sweep over every disjunction: drops refuted disjuncts, skips satisfied
// disjunctions, asserts singletons and records an error for an empty one.
// Returns the number of facts added.
size_t propagate_disjunctions(FactStore& store);

struct Inconsistency {
  enum class Kind { Contradiction, EmptyClassMember, EmptyDisjunction, MaxCardinality, MinCardinality,
                    Existential, Other };
  Kind kind = Kind::Other;
  GroundAtom error_fact;
  std::string message;
  std::vector<std::string> witnesses;
  // Ids of the rules that derived the error fact and its witnesses.
  std::vector<std::string> provenance;
};

std::string_view to_string(Inconsistency::Kind kind);

// One entry per derived error fact, in text order.
std::vector<Inconsistency> find_inconsistencies(const FactStore& store, const std::vector<Rule>& rules);

// Rule id for a source tag stored with a fact.
std::string source_name(uint32_t source, const std::vector<Rule>& rules);

struct QueryResult {
  std::vector<std::string> variables;
  // One row per distinct binding, values aligned with `variables`, sorted.
  std::vector<std::vector<TermId>> rows;

  // "X = a, Y = b" per row; "true" for a ground hit.
  std::vector<std::string> lines() const;
};

// Substitutions making `pattern` a member of the store (positives, or
// negatives for a logicNot pattern). Throws std::invalid_argument on an
// arity mismatch.
QueryResult query(const FactStore& store, const Literal& pattern);

}  // namespace owlhorn
