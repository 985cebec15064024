#pragma once

#include <vector>

#include "owlhorn/ingest.hpp"

namespace owlhorn {

struct Translation {
  std::vector<GroundLiteral> facts;
  std::vector<Disjunction> disjunctions;
  std::vector<Rule> rules;
  std::vector<Diagnostic> diagnostics;
};

// Base-layer declarations (isclass/isindividual/isproperty) for the constants
// an atom mentions, by argument role. Numbers are never declared.
std::vector<GroundLiteral> declarations_for(const GroundAtom& atom);

// The axiom's fact followed by the declarations it implies.
std::vector<GroundLiteral> translate_axiom(const SourceAxiom& axiom);

// One rule per head atom for conjunctive heads; a disjunctive rule for `or`
// heads. Bodyless ground clauses become facts or disjunctions. Layers the
// source left open default to Base in the head and Derived in the body.
// Unsafe rules are reported and left out.
Translation translate_rule(const SourceRule& rule);

// Both lists in order, then every rule.
Translation translate(const ParseResult& parsed);

// Range restriction, checked left to right: a literal binds its variables,
// `member(M, L)` binds M once L is bound, guards need both sides bound, and
// every head variable must be bound by the body. Returns one diagnostic per
// problem; empty means safe.
std::vector<Diagnostic> check_safety(const Rule& rule, const SourceLocation& where = {});

// One clause of native text, reserved functors allowed, as a single Rule.
// Throws ParseError when the text is not exactly one safe rule.
Rule rule_from_text(std::string_view text, std::string id, RuleOrigin origin);

}  // namespace owlhorn
