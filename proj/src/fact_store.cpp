#include "owlhorn/fact_store.hpp"

#include <algorithm>
#include <unordered_set>

namespace owlhorn {

std::string_view to_string(TruthValue v) {
  switch (v) {
    case TruthValue::True:
      return "TRUE";
    case TruthValue::False:
      return "FALSE";
    case TruthValue::Unknown:
      return "UNKNOWN";
    case TruthValue::Inconsistent:
      return "INCONSISTENT";
  }
  return "UNKNOWN";
}

bool Relation::insert(const Tuple& t, uint32_t source) {
  auto row = static_cast<uint32_t>(rows_.size());
  auto [it, fresh] = lookup_.emplace(t, row);
  if (!fresh) return false;
  rows_.push_back(t);
  sources_.push_back(source);
  for (size_t i = 0; i < arity_; ++i) index_[i][t[i]].push_back(row);
  return true;
}

std::span<const uint32_t> Relation::rows_with(size_t pos, TermId value) const {
  auto it = index_[pos].find(value);
  if (it == index_[pos].end()) return {};
  return it->second;
}

FactStore::FactStore() {
  relations_.reserve(kSlots);
  for (size_t i = 0; i < kSlots; ++i) {
    auto pred = Predicate::from_index(i / 2);
    relations_.emplace_back(pred.arity());
  }
}

bool FactStore::add(const GroundLiteral& lit, uint32_t source) {
  return relation(lit.atom.pred, lit.polarity).insert(lit.atom.args, source);
}

bool FactStore::contains(const GroundLiteral& lit) const {
  return relation(lit.atom.pred, lit.polarity).contains(lit.atom.args);
}

std::pair<uint32_t, bool> FactStore::add_disjunction(const Disjunction& d, uint32_t source) {
  auto idx = static_cast<uint32_t>(disjunctions_.size());
  auto [it, fresh] = disjunction_lookup_.emplace(d, idx);
  if (!fresh) return {it->second, false};
  disjunctions_.push_back(d);
  disjunction_sources_.push_back(source);
  for (const auto& a : d.disjuncts()) {
    GroundAtom key{a.pred.derived(), a.args};
    auto& w = watchers_[key];
    if (w.empty() || w.back() != idx) w.push_back(idx);
  }
  return {idx, true};
}

std::span<const uint32_t> FactStore::disjunctions_watching(const GroundAtom& derived_atom) const {
  auto it = watchers_.find(derived_atom);
  if (it == watchers_.end()) return {};
  return it->second;
}

TruthValue FactStore::truth_value(const GroundAtom& atom) const {
  bool yes = contains(Polarity::Positive, atom);
  bool no = contains(Polarity::Negative, atom);
  if (yes && no) return TruthValue::Inconsistent;
  if (yes) return TruthValue::True;
  if (no) return TruthValue::False;
  return TruthValue::Unknown;
}

size_t FactStore::positive_count() const {
  size_t n = 0;
  for (size_t i = 0; i < kSlots; i += 2) n += relations_[i].size();
  return n;
}

size_t FactStore::negative_count() const {
  size_t n = 0;
  for (size_t i = 1; i < kSlots; i += 2) n += relations_[i].size();
  return n;
}

std::vector<GroundLiteral> FactStore::literals(Polarity pol) const {
  std::vector<GroundLiteral> out;
  for (auto pred : Predicate::all()) {
    const auto& rel = relation(pred, pol);
    for (uint32_t r = 0; r < rel.size(); ++r) out.push_back(GroundLiteral{pol, GroundAtom{pred, rel.row(r)}});
  }
  return out;
}

std::vector<GroundAtom> FactStore::atoms(Predicate pred, Polarity pol) const {
  std::vector<GroundAtom> out;
  const auto& rel = relation(pred, pol);
  for (uint32_t r = 0; r < rel.size(); ++r) out.push_back(GroundAtom{pred, rel.row(r)});
  std::sort(out.begin(), out.end(), text_less);
  return out;
}

std::vector<std::string> FactStore::sorted_text(Polarity pol) const {
  std::vector<std::string> out;
  for (const auto& lit : literals(pol)) out.push_back(lit.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> FactStore::sorted_disjunction_text() const {
  std::vector<std::string> out;
  for (const auto& d : disjunctions_) out.push_back(d.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

uint32_t FactStore::source_of(const GroundLiteral& lit) const {
  const auto& rel = relation(lit.atom.pred, lit.polarity);
  uint32_t row = rel.find(lit.atom.args);
  return row < rel.size() ? rel.source(row) : kSourceBase;
}

bool operator==(const FactStore& a, const FactStore& b) {
  for (size_t i = 0; i < FactStore::kSlots; ++i) {
    const auto& ra = a.relations_[i];
    const auto& rb = b.relations_[i];
    if (ra.size() != rb.size()) return false;
    for (uint32_t r = 0; r < ra.size(); ++r) {
      if (!rb.contains(ra.row(r))) return false;
    }
  }
  if (a.disjunctions_.size() != b.disjunctions_.size()) return false;
  for (const auto& d : a.disjunctions_) {
    if (!b.disjunction_lookup_.count(d)) return false;
  }
  return true;
}

}  // namespace owlhorn
