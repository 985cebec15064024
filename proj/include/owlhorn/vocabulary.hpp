#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace owlhorn {

// The lowercase/camelcase predicate pair: facts enter at Base, queries read
// Derived, and a conversion rule lifts every Base fact to Derived.
enum class Layer : uint8_t { Base, Derived };

enum class Polarity : uint8_t { Positive, Negative };

enum class Vocab : uint8_t {
  IsMemberOf,
  IsSubClassOf,
  HasPropertyWith,
  IsClass,
  IsIndividual,
  IsProperty,
  IsDatatype,
  IsSet,
  ComplementaryClasses,
  DisjointClasses,
  EquivalentClasses,
  EquivalentIndividuals,
  HasSomeValuesOfPropertyFrom,
  HasAllValuesOfPropertyFrom,
  MinCardinality,
  MaxCardinality,
  ExactCardinality,
  Error,
  // Internal, Derived layer only.
  StrictSubClassOf,
  Count_
};

inline constexpr size_t kVocabSize = static_cast<size_t>(Vocab::Count_);
inline constexpr size_t kMaxArity = 3;

class Predicate {
 public:
  Predicate() = default;
  Predicate(Vocab v, Layer layer) : id_(static_cast<uint16_t>(static_cast<unsigned>(v) * 2 + static_cast<unsigned>(layer))) {}

  static constexpr size_t kCount = kVocabSize * 2;

  // Resolves a spelling. `error` is spelled identically in both layers; the
  // caller's positional default breaks the tie.
  static std::optional<Predicate> lookup(std::string_view spelling, Layer ambiguous_default);
  static Predicate from_index(size_t index) {
    Predicate p;
    p.id_ = static_cast<uint16_t>(index);
    return p;
  }
  // Every predicate that exists (internal ones only at Derived).
  static const std::vector<Predicate>& all();

  Vocab vocab() const { return static_cast<Vocab>(id_ / 2); }
  Layer layer() const { return static_cast<Layer>(id_ % 2); }
  size_t index() const { return id_; }
  uint8_t arity() const;
  bool internal() const;
  bool exists() const;
  std::string_view spelling() const;
  // The same vocabulary entry at the other layer (internal ones map to themselves).
  Predicate at(Layer layer) const;
  Predicate derived() const { return at(Layer::Derived); }

  friend bool operator==(Predicate a, Predicate b) { return a.id_ == b.id_; }
  friend bool operator!=(Predicate a, Predicate b) { return a.id_ != b.id_; }
  friend bool operator<(Predicate a, Predicate b) { return a.id_ < b.id_; }

 private:
  uint16_t id_ = 0;
};

// Role of an argument position, used to auto-declare constants.
enum class ArgRole : uint8_t { None, Individual, Class, Property, IndividualList };
ArgRole arg_role(Vocab v, size_t position);

}  // namespace owlhorn
