#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "owlhorn/literal.hpp"

namespace owlhorn {

enum class TruthValue { True, False, Unknown, Inconsistent };

std::string_view to_string(TruthValue v);

// Provenance tags for facts not produced by a numbered rule.
inline constexpr uint32_t kSourceBase = 0xffffffffu;
inline constexpr uint32_t kSourcePropagation = 0xfffffffeu;
inline constexpr uint32_t kSourcePass = 0xfffffffdu;

// Append-only, duplicate-free tuple set with one hash index per argument.
// Rows are numbered in insertion order, which is what the semi-naive
// evaluator uses to tell old facts from the current delta.
class Relation {
 public:
  explicit Relation(uint8_t arity = 0) : arity_(arity) {}

  uint8_t arity() const { return arity_; }
  uint32_t size() const { return static_cast<uint32_t>(rows_.size()); }
  const Tuple& row(uint32_t i) const { return rows_[i]; }
  uint32_t source(uint32_t i) const { return sources_[i]; }

  bool insert(const Tuple& t, uint32_t source);
  bool contains(const Tuple& t) const { return lookup_.count(t) != 0; }
  // Row number of `t`, or size() when absent.
  uint32_t find(const Tuple& t) const {
    auto it = lookup_.find(t);
    return it == lookup_.end() ? size() : it->second;
  }
  // True when `value` occurs at `pos` in some row.
  bool mentions(size_t pos, TermId value) const { return index_[pos].count(value) != 0; }
  // Row numbers whose argument `pos` equals `value`, ascending.
  std::span<const uint32_t> rows_with(size_t pos, TermId value) const;

 private:
  uint8_t arity_;
  std::vector<Tuple> rows_;
  std::vector<uint32_t> sources_;
  std::unordered_map<Tuple, uint32_t, TupleHash> lookup_;
  std::array<std::unordered_map<TermId, std::vector<uint32_t>>, kMaxArity> index_;
};

// Positive facts, negative facts (logicNot holds) and disjunctions, each a
// duplicate-free set. An atom in both positives and negatives is legal here;
// the error rules turn it into an error fact.
class FactStore {
 public:
  FactStore();

  Relation& relation(Predicate pred, Polarity pol) { return relations_[slot(pred, pol)]; }
  const Relation& relation(Predicate pred, Polarity pol) const { return relations_[slot(pred, pol)]; }
  static size_t slot(Predicate pred, Polarity pol) { return pred.index() * 2 + static_cast<size_t>(pol); }
  static constexpr size_t kSlots = Predicate::kCount * 2;

  bool add(const GroundLiteral& lit, uint32_t source = kSourceBase);
  bool contains(const GroundLiteral& lit) const;
  bool contains(Polarity pol, const GroundAtom& atom) const { return contains(GroundLiteral{pol, atom}); }

  // Returns the index of the disjunction, and whether it was new.
  std::pair<uint32_t, bool> add_disjunction(const Disjunction& d, uint32_t source = kSourceBase);
  const std::vector<Disjunction>& disjunctions() const { return disjunctions_; }
  uint32_t disjunction_source(uint32_t index) const { return disjunction_sources_[index]; }
  // Disjunctions that mention `derived_atom` (matched at the Derived layer).
  std::span<const uint32_t> disjunctions_watching(const GroundAtom& derived_atom) const;

  TruthValue truth_value(const GroundAtom& atom) const;

  size_t positive_count() const;
  size_t negative_count() const;
  size_t size() const { return positive_count() + negative_count() + disjunctions_.size(); }

  std::vector<GroundLiteral> literals(Polarity pol) const;
  // Facts of one predicate and polarity in text order.
  std::vector<GroundAtom> atoms(Predicate pred, Polarity pol) const;
  // Text-sorted renderings, for comparison and serialization.
  std::vector<std::string> sorted_text(Polarity pol) const;
  std::vector<std::string> sorted_disjunction_text() const;

  // Source tag of a stored literal, or kSourceBase when absent.
  uint32_t source_of(const GroundLiteral& lit) const;

  friend bool operator==(const FactStore& a, const FactStore& b);

 private:
  std::vector<Relation> relations_;
  std::vector<Disjunction> disjunctions_;
  std::vector<uint32_t> disjunction_sources_;
  std::unordered_map<Disjunction, uint32_t, DisjunctionHash> disjunction_lookup_;
  std::unordered_map<GroundAtom, std::vector<uint32_t>, GroundAtomHash> watchers_;
};

}  // namespace owlhorn
