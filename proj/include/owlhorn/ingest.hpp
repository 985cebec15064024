#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "owlhorn/diagnostics.hpp"
#include "owlhorn/program.hpp"
#include "owlhorn/rule.hpp"

namespace owlhorn {

enum class Dialect { Owl, Swrl, RuleMl, Native };

std::string_view to_string(Dialect d);
std::optional<Dialect> parse_dialect(std::string_view name);
// By extension first (.owl/.rdf, .swrl, .ruleml, .pl), then by content.
Dialect sniff_dialect(std::string_view path, std::string_view text);

// One ontology statement. Names are constant spellings with any `#` prefix
// already stripped.
struct SourceAxiom {
  enum class Kind {
    ClassDecl,               // c
    IndividualDecl,          // i
    PropertyDecl,            // p
    DatatypeDecl,            // d
    IndividualAssertion,     // i, c
    PropertyAssertion,       // i, p, v
    SubClassOf,              // c, d
    ComplementOf,            // c, d
    DisjointWith,            // c, d
    EquivalentClasses,       // c, d
    EquivalentIndividuals,   // a, b
    OneOf,                   // c; members
    SomeValuesFrom,          // c, p, d
    AllValuesFrom,           // c, p, d
    MinCardinality,          // c, p; n
    MaxCardinality,          // c, p; n
    ExactCardinality,        // c, p; n
    AnonymousClass,          // p, v
  };

  Kind kind = Kind::ClassDecl;
  std::vector<std::string> names;
  std::vector<std::string> members;
  unsigned n = 0;
  SourceLocation location;

  std::string to_string() const;
  // Location is not part of the identity of an axiom.
  friend bool operator==(const SourceAxiom& a, const SourceAxiom& b) {
    return a.kind == b.kind && a.names == b.names && a.members == b.members && a.n == b.n;
  }
};

struct SourceLiteral {
  Literal literal;
  // False when the dialect has no layer notion (SWRL, RuleML); the translator
  // then applies the head-Base / body-Derived convention.
  bool explicit_layer = false;

  friend bool operator==(const SourceLiteral&, const SourceLiteral&) = default;
};

using SourceBodyItem = std::variant<SourceLiteral, Guard, ListMember>;

struct SourceRule {
  enum class HeadKind { Conjunction, Disjunction };

  HeadKind head_kind = HeadKind::Conjunction;
  std::vector<SourceLiteral> head;
  std::optional<DisjunctiveHead::Each> each;
  std::vector<SourceBodyItem> body;
  SourceLocation location;

  std::string to_string() const;
  friend bool operator==(const SourceRule& a, const SourceRule& b) {
    return a.head_kind == b.head_kind && a.head == b.head && a.each == b.each && a.body == b.body;
  }
};

struct ParseOptions {
  std::string file = "<input>";
  // Accept the reserved skolem functors (reloading emitted programs).
  bool allow_reserved = false;
};

struct ParseResult {
  std::vector<SourceAxiom> axioms;
  std::vector<SourceRule> rules;
  std::vector<Diagnostic> diagnostics;
  // Native `:- pragma(name, value).` directives, in order.
  std::vector<std::pair<std::string, std::string>> pragmas;

  bool ok() const { return !has_errors(diagnostics); }
};

ParseResult parse(std::string_view text, Dialect dialect, const ParseOptions& options = {});

// A query pattern in native atom syntax. Bare spellings that are ambiguous
// between layers resolve to Derived; `logicNot(...)` gives a negative pattern.
// Throws ParseError for syntax errors, unknown predicates and arity mismatch.
Literal parse_query(std::string_view text, bool allow_reserved = true);
// Ground literal; throws ParseError when it has variables.
GroundLiteral parse_ground_literal(std::string_view text, bool allow_reserved = true);

// The Base-layer fact that states an axiom, e.g. ismemberof(smith, sniper).
GroundAtom axiom_fact(const SourceAxiom& axiom);

// Native text for an axiom/rule list; parse(emit_native(a, r), Native)
// yields the same lists.
std::string emit_native(const std::vector<SourceAxiom>& axioms, const std::vector<SourceRule>& rules);

}  // namespace owlhorn
