#pragma once

#include <array>
#include <string>
#include <vector>

#include "owlhorn/term.hpp"
#include "owlhorn/vocabulary.hpp"

namespace owlhorn {

struct Atom {
  Predicate pred;
  std::vector<Term> args;

  bool is_ground() const;
  std::string to_string() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  Polarity polarity = Polarity::Positive;
  Atom atom;

  bool negative() const { return polarity == Polarity::Negative; }
  std::string to_string() const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Tuple = std::array<TermId, kMaxArity>;

struct GroundAtom {
  Predicate pred;
  Tuple args{};

  static GroundAtom make(Predicate pred, std::initializer_list<TermId> args);
  // Throws std::invalid_argument when the atom is not ground or arity mismatches.
  static GroundAtom from(const Atom& atom);

  uint8_t arity() const { return pred.arity(); }
  Atom to_atom() const;
  // The atom reified as a compound term, functor = predicate spelling.
  TermId as_term() const;
  std::string to_string() const;

  friend bool operator==(const GroundAtom& a, const GroundAtom& b) { return a.pred == b.pred && a.args == b.args; }
  friend bool operator!=(const GroundAtom& a, const GroundAtom& b) { return !(a == b); }
  // Process-local order (by ids); use text_less for output.
  friend bool operator<(const GroundAtom& a, const GroundAtom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  }
};

bool text_less(const GroundAtom& a, const GroundAtom& b);

struct GroundLiteral {
  Polarity polarity = Polarity::Positive;
  GroundAtom atom;

  bool negative() const { return polarity == Polarity::Negative; }
  Literal to_literal() const { return {polarity, atom.to_atom()}; }
  std::string to_string() const;

  friend bool operator==(const GroundLiteral& a, const GroundLiteral& b) {
    return a.polarity == b.polarity && a.atom == b.atom;
  }
  friend bool operator<(const GroundLiteral& a, const GroundLiteral& b) {
    if (a.polarity != b.polarity) return a.polarity < b.polarity;
    return a.atom < b.atom;
  }
};

// Collapses a stack of logicNot wrappers classically: an even count is
// positive, an odd count negative.
Literal canonicalize_literal(const Atom& atom, unsigned negations);
Literal canonicalize_literal(const Literal& lit);

// A set of ground positive atoms, sorted and deduplicated, so nesting and
// order of the source or-structure are irrelevant.
class Disjunction {
 public:
  Disjunction() = default;

  const std::vector<GroundAtom>& disjuncts() const { return disjuncts_; }
  size_t size() const { return disjuncts_.size(); }

  // Right-nested or(a, or(b, c)) with disjuncts in text order.
  std::string to_string() const;
  TermId as_term() const;

  friend bool operator==(const Disjunction&, const Disjunction&) = default;
  friend bool operator<(const Disjunction& a, const Disjunction& b) { return a.disjuncts_ < b.disjuncts_; }

 private:
  friend Disjunction make_disjunction(std::vector<GroundAtom> atoms);
  std::vector<GroundAtom> disjuncts_;
};

// Binary or-tree as written in source: either a leaf atom or two branches.
struct OrTree {
  std::vector<GroundAtom> leaf;  // zero or one element
  std::vector<OrTree> branches;

  static OrTree atom(GroundAtom a) { return OrTree{{a}, {}}; }
  static OrTree either(OrTree l, OrTree r) { return OrTree{{}, {std::move(l), std::move(r)}}; }
};

// Throws MalformedDisjunction on empty input.
Disjunction make_disjunction(std::vector<GroundAtom> atoms);
Disjunction canonicalize_disjunction(const OrTree& tree);

struct TupleHash {
  size_t operator()(const Tuple& t) const noexcept {
    size_t h = 0xcbf29ce484222325ULL;
    for (auto v : t) h = (h ^ v.value) * 0x100000001b3ULL;
    return h;
  }
};

struct GroundAtomHash {
  size_t operator()(const GroundAtom& a) const noexcept { return TupleHash()(a.args) * 31 + a.pred.index(); }
};

struct DisjunctionHash {
  size_t operator()(const Disjunction& d) const noexcept {
    size_t h = 7;
    for (const auto& a : d.disjuncts()) h = h * 1000003 ^ GroundAtomHash()(a);
    return h;
  }
};

}  // namespace owlhorn
