#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "owlhorn/program.hpp"

namespace owlhorn {

// Error messages carried as the first element of error/1 facts.
inline constexpr std::string_view kContradictionMessage = "A term cannot be both true and false.";
inline constexpr std::string_view kEmptyClassMessage = "The empty class cannot contain anything.";
inline constexpr std::string_view kEmptyDisjunctionMessage = "A disjunction has no possible disjunct.";
inline constexpr std::string_view kMaxCardinalityMessage = "Maximum cardinality exceeded.";
inline constexpr std::string_view kMinCardinalityMessage = "Minimum cardinality not met.";
inline constexpr std::string_view kExistentialMessage = "Existential restriction not met.";

// The class no individual may belong to.
inline constexpr std::string_view kNothing = "nothing";
// Value class of skolem individuals generated for cardinality constraints.
inline constexpr std::string_view kThing = "thing";

// The fixed rules giving the vocabulary its meaning. Ids are "GR<n>" with a
// dotted suffix when a group has several rules. The skolemization pair (GR11)
// is only present under the skolemize strategy.
std::vector<Rule> general_rules(const Pragmas& pragmas = {});

struct CardinalityRules {
  std::vector<Rule> rules;
  std::vector<ConstraintPass> passes;
  std::vector<Diagnostic> diagnostics;
};

// Rules and constraint passes for the cardinality facts (and, under the
// error and assert-fresh strategies, the someValuesFrom facts) in `facts`.
CardinalityRules generate_cardinality_rules(const std::vector<GroundLiteral>& facts, const Pragmas& pragmas);

// Deterministic gensym: prefix followed by 1, 2, ... skipping names the
// `in_use` predicate reports as taken. Safe to call from several threads.
class FreshConstants {
 public:
  explicit FreshConstants(std::function<bool(std::string_view)> in_use = {}) : in_use_(std::move(in_use)) {}

  std::string next(std::string_view prefix);

 private:
  std::mutex mutex_;
  std::function<bool(std::string_view)> in_use_;
  std::vector<std::pair<std::string, unsigned>> counters_;
};

}  // namespace owlhorn
