#include "owlhorn/literal.hpp"

#include <algorithm>
#include <stdexcept>

#include "owlhorn/diagnostics.hpp"

namespace owlhorn {
namespace {

std::string render(std::string_view functor, const std::vector<std::string>& args) {
  std::string out(functor);
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i];
  }
  return out + ')';
}

void flatten(const OrTree& tree, std::vector<GroundAtom>& out) {
  out.insert(out.end(), tree.leaf.begin(), tree.leaf.end());
  for (const auto& b : tree.branches) flatten(b, out);
}

}  // namespace

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::string Atom::to_string() const {
  std::vector<std::string> parts;
  for (const auto& a : args) parts.push_back(a.to_string());
  return render(pred.spelling(), parts);
}

std::string Literal::to_string() const {
  return negative() ? "logicNot(" + atom.to_string() + ")" : atom.to_string();
}

GroundAtom GroundAtom::make(Predicate pred, std::initializer_list<TermId> args) {
  if (args.size() != pred.arity()) throw std::invalid_argument("arity mismatch for " + std::string(pred.spelling()));
  GroundAtom g;
  g.pred = pred;
  std::copy(args.begin(), args.end(), g.args.begin());
  return g;
}

GroundAtom GroundAtom::from(const Atom& atom) {
  if (atom.args.size() != atom.pred.arity()) {
    throw std::invalid_argument("arity mismatch for " + std::string(atom.pred.spelling()));
  }
  GroundAtom g;
  g.pred = atom.pred;
  for (size_t i = 0; i < atom.args.size(); ++i) {
    auto id = atom.args[i].ground_id();
    if (!id) throw std::invalid_argument("atom is not ground: " + atom.to_string());
    g.args[i] = *id;
  }
  return g;
}

Atom GroundAtom::to_atom() const {
  Atom a{pred, {}};
  for (size_t i = 0; i < arity(); ++i) a.args.push_back(Term::from_id(args[i]));
  return a;
}

TermId GroundAtom::as_term() const {
  return terms::compound(Symbol::intern(pred.spelling()), std::span<const TermId>(args.data(), arity()));
}

std::string GroundAtom::to_string() const {
  std::vector<std::string> parts;
  for (size_t i = 0; i < arity(); ++i) parts.push_back(terms::to_string(args[i]));
  return render(pred.spelling(), parts);
}

bool text_less(const GroundAtom& a, const GroundAtom& b) {
  if (a.pred != b.pred) {
    int c = a.pred.spelling().compare(b.pred.spelling());
    if (c) return c < 0;
    return a.pred < b.pred;
  }
  for (size_t i = 0; i < a.arity(); ++i) {
    if (int c = terms::compare(a.args[i], b.args[i])) return c < 0;
  }
  return false;
}

std::string GroundLiteral::to_string() const {
  return negative() ? "logicNot(" + atom.to_string() + ")" : atom.to_string();
}

Literal canonicalize_literal(const Atom& atom, unsigned negations) {
  return Literal{negations % 2 ? Polarity::Negative : Polarity::Positive, atom};
}

Literal canonicalize_literal(const Literal& lit) {
  return canonicalize_literal(lit.atom, lit.negative() ? 1 : 0);
}

Disjunction make_disjunction(std::vector<GroundAtom> atoms) {
  if (atoms.empty()) throw MalformedDisjunction("disjunction needs at least one disjunct");
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  Disjunction d;
  d.disjuncts_ = std::move(atoms);
  return d;
}

Disjunction canonicalize_disjunction(const OrTree& tree) {
  std::vector<GroundAtom> atoms;
  flatten(tree, atoms);
  return make_disjunction(std::move(atoms));
}

std::string Disjunction::to_string() const {
  auto sorted = disjuncts_;
  std::sort(sorted.begin(), sorted.end(), text_less);
  if (sorted.size() == 1) return "or(" + sorted[0].to_string() + ")";
  std::string out = sorted.back().to_string();
  for (size_t i = sorted.size() - 1; i-- > 0;) out = "or(" + sorted[i].to_string() + ", " + out + ")";
  return out;
}

TermId Disjunction::as_term() const {
  auto sorted = disjuncts_;
  std::sort(sorted.begin(), sorted.end(), text_less);
  Symbol or_sym = Symbol::intern("or");
  TermId acc = sorted.back().as_term();
  if (sorted.size() == 1) return terms::compound(or_sym, std::array{acc});
  for (size_t i = sorted.size() - 1; i-- > 0;) acc = terms::compound(or_sym, std::array{sorted[i].as_term(), acc});
  return acc;
}

}  // namespace owlhorn
