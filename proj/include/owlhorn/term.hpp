#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "owlhorn/symbol.hpp"

namespace owlhorn {

enum class TermKind : uint8_t { Variable, Constant, Compound, List };

// Reserved functors for system-generated terms.
inline constexpr std::string_view kUnnamedIndividual = "unnamedIndividual";  // arity 3
inline constexpr std::string_view kUnnamedClass = "unnamedClass";            // arity 2

bool is_reserved_functor(std::string_view name, size_t arity);

// Handle to an interned ground term. Value 0 never names a term and is used
// as "unbound" by the evaluator.
struct TermId {
  uint32_t value = 0;

  bool valid() const { return value != 0; }
  friend bool operator==(TermId a, TermId b) { return a.value == b.value; }
  friend bool operator!=(TermId a, TermId b) { return a.value != b.value; }
  friend bool operator<(TermId a, TermId b) { return a.value < b.value; }
};

// Process-wide hash-consing table of ground terms. Entries are immutable once
// created, so TermIds can be shared freely between threads.
namespace terms {

TermId constant(Symbol name);
TermId constant(std::string_view name);
TermId compound(Symbol functor, std::span<const TermId> args);
TermId list(std::span<const TermId> elements);

TermKind kind(TermId id);
// Constant name or compound functor; invalid for lists.
Symbol name(TermId id);
std::vector<TermId> args(TermId id);
// Nesting depth counted over the reserved skolem functors only.
unsigned skolem_depth(TermId id);

bool is_number(TermId id);
std::string to_string(TermId id);
// Text-based total order, stable across processes.
int compare(TermId a, TermId b);

}  // namespace terms

// A possibly non-ground term as written in rules and queries.
class Term {
 public:
  Term() = default;

  static Term variable(std::string_view name);
  static Term constant(std::string_view name);
  static Term compound(std::string_view functor, std::vector<Term> args);
  static Term list(std::vector<Term> elements);
  static Term from_id(TermId id);

  TermKind kind() const { return kind_; }
  Symbol name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_variable() const { return kind_ == TermKind::Variable; }
  bool is_ground() const;
  // Interns the term; empty when the term contains variables.
  std::optional<TermId> ground_id() const;
  void collect_variables(std::vector<Symbol>& out) const;

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);

 private:
  TermKind kind_ = TermKind::Constant;
  Symbol name_;
  std::vector<Term> args_;
};

// Renders a constant name, quoting it when it would not read back as a
// constant (uppercase initial, punctuation, empty).
std::string quote_constant(std::string_view name);

}  // namespace owlhorn

template <>
struct std::hash<owlhorn::TermId> {
  size_t operator()(owlhorn::TermId t) const noexcept { return std::hash<uint32_t>()(t.value); }
};
