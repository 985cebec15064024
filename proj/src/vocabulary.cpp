#include "owlhorn/vocabulary.hpp"

#include <array>

namespace owlhorn {
namespace {

struct Entry {
  std::string_view base;
  std::string_view derived;
  uint8_t arity;
  std::array<ArgRole, kMaxArity> roles;
};

using R = ArgRole;

constexpr std::array<Entry, kVocabSize> kEntries{{
    {"ismemberof", "isMemberOf", 2, {R::Individual, R::Class, R::None}},
    {"issubclassof", "isSubClassOf", 2, {R::Class, R::Class, R::None}},
    {"haspropertywith", "hasPropertyWith", 3, {R::Individual, R::Property, R::Individual}},
    {"isclass", "isClass", 1, {R::None, R::None, R::None}},
    {"isindividual", "isIndividual", 1, {R::None, R::None, R::None}},
    {"isproperty", "isProperty", 1, {R::None, R::None, R::None}},
    {"isdatatype", "isDatatype", 1, {R::None, R::None, R::None}},
    {"isset", "isSet", 2, {R::Class, R::IndividualList, R::None}},
    {"complementaryclasses", "complementaryClasses", 2, {R::Class, R::Class, R::None}},
    {"disjointclasses", "disjointClasses", 2, {R::Class, R::Class, R::None}},
    {"equivalentclasses", "equivalentClasses", 2, {R::Class, R::Class, R::None}},
    {"equivalentindividuals", "equivalentIndividuals", 2, {R::Individual, R::Individual, R::None}},
    {"hassomevaluesofpropertyfrom", "hasSomeValuesOfPropertyFrom", 3, {R::Class, R::Property, R::Class}},
    {"hasallvaluesofpropertyfrom", "hasAllValuesOfPropertyFrom", 3, {R::Class, R::Property, R::Class}},
    {"mincardinality", "minCardinality", 3, {R::Class, R::Property, R::None}},
    {"maxcardinality", "maxCardinality", 3, {R::Class, R::Property, R::None}},
    {"exactcardinality", "exactCardinality", 3, {R::Class, R::Property, R::None}},
    {"error", "error", 1, {R::None, R::None, R::None}},
    {"", "is_sub_class_of_but_not_equal_to", 2, {R::Class, R::Class, R::None}},
}};

const Entry& entry(Vocab v) { return kEntries[static_cast<size_t>(v)]; }

}  // namespace

std::optional<Predicate> Predicate::lookup(std::string_view spelling, Layer ambiguous_default) {
  for (size_t i = 0; i < kVocabSize; ++i) {
    const auto& e = kEntries[i];
    bool base = !e.base.empty() && e.base == spelling;
    bool derived = e.derived == spelling;
    if (base && derived) return Predicate(static_cast<Vocab>(i), ambiguous_default);
    if (base) return Predicate(static_cast<Vocab>(i), Layer::Base);
    if (derived) return Predicate(static_cast<Vocab>(i), Layer::Derived);
  }
  return std::nullopt;
}

const std::vector<Predicate>& Predicate::all() {
  static const std::vector<Predicate> preds = [] {
    std::vector<Predicate> out;
    for (size_t i = 0; i < kCount; ++i) {
      auto p = from_index(i);
      if (p.exists()) out.push_back(p);
    }
    return out;
  }();
  return preds;
}

uint8_t Predicate::arity() const { return entry(vocab()).arity; }

bool Predicate::internal() const { return entry(vocab()).base.empty(); }

bool Predicate::exists() const { return !(internal() && layer() == Layer::Base); }

std::string_view Predicate::spelling() const {
  const auto& e = entry(vocab());
  return layer() == Layer::Base ? e.base : e.derived;
}

Predicate Predicate::at(Layer layer) const {
  if (internal()) return *this;
  return Predicate(vocab(), layer);
}

ArgRole arg_role(Vocab v, size_t position) {
  return position < kMaxArity ? entry(v).roles[position] : ArgRole::None;
}

}  // namespace owlhorn
