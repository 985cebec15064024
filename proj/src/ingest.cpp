#include "owlhorn/ingest.hpp"

#include <charconv>

#include "ingest_internal.hpp"

namespace owlhorn {

std::string_view to_string(Dialect d) {
  switch (d) {
    case Dialect::Owl:
      return "owl";
    case Dialect::Swrl:
      return "swrl";
    case Dialect::RuleMl:
      return "ruleml";
    case Dialect::Native:
      return "native";
  }
  return "native";
}

std::optional<Dialect> parse_dialect(std::string_view name) {
  if (name == "owl" || name == "rdf") return Dialect::Owl;
  if (name == "swrl") return Dialect::Swrl;
  if (name == "ruleml") return Dialect::RuleMl;
  if (name == "native" || name == "pl" || name == "prolog") return Dialect::Native;
  return std::nullopt;
}

Dialect sniff_dialect(std::string_view path, std::string_view text) {
  auto dot = path.rfind('.');
  if (dot != std::string_view::npos) {
    if (auto d = parse_dialect(path.substr(dot + 1))) return *d;
  }
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos || text[first] != '<') return Dialect::Native;
  if (text.find("swrlx:") != std::string_view::npos) return Dialect::Swrl;
  if (text.find("owl:") != std::string_view::npos || text.find("rdf:") != std::string_view::npos) {
    return Dialect::Owl;
  }
  return Dialect::RuleMl;
}

namespace {

using Kind = SourceAxiom::Kind;

struct Shape {
  Kind kind;
  Vocab vocab;
};

constexpr Shape kShapes[] = {
    {Kind::ClassDecl, Vocab::IsClass},
    {Kind::IndividualDecl, Vocab::IsIndividual},
    {Kind::PropertyDecl, Vocab::IsProperty},
    {Kind::DatatypeDecl, Vocab::IsDatatype},
    {Kind::IndividualAssertion, Vocab::IsMemberOf},
    {Kind::PropertyAssertion, Vocab::HasPropertyWith},
    {Kind::SubClassOf, Vocab::IsSubClassOf},
    {Kind::ComplementOf, Vocab::ComplementaryClasses},
    {Kind::DisjointWith, Vocab::DisjointClasses},
    {Kind::EquivalentClasses, Vocab::EquivalentClasses},
    {Kind::EquivalentIndividuals, Vocab::EquivalentIndividuals},
    {Kind::OneOf, Vocab::IsSet},
    {Kind::SomeValuesFrom, Vocab::HasSomeValuesOfPropertyFrom},
    {Kind::AllValuesFrom, Vocab::HasAllValuesOfPropertyFrom},
    {Kind::MinCardinality, Vocab::MinCardinality},
    {Kind::MaxCardinality, Vocab::MaxCardinality},
    {Kind::ExactCardinality, Vocab::ExactCardinality},
    {Kind::AnonymousClass, Vocab::HasAllValuesOfPropertyFrom},
};

Vocab vocab_of(Kind k) {
  for (const auto& s : kShapes) {
    if (s.kind == k) return s.vocab;
  }
  return Vocab::Error;
}

bool is_cardinality(Kind k) {
  return k == Kind::MinCardinality || k == Kind::MaxCardinality || k == Kind::ExactCardinality;
}

std::optional<unsigned> as_count(const Term& t) {
  if (t.kind() != TermKind::Constant) return std::nullopt;
  auto s = t.name().str();
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool all_constants(const std::vector<Term>& ts) {
  for (const auto& t : ts) {
    if (t.kind() != TermKind::Constant) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

namespace detail {

std::optional<SourceAxiom> axiom_from_literal(const Literal& lit, const SourceLocation& loc) {
  const auto& atom = lit.atom;
  if (lit.negative() || atom.pred.layer() != Layer::Base || !atom.is_ground()) return std::nullopt;
  const auto& args = atom.args;
  SourceAxiom ax;
  ax.location = loc;
  Vocab v = atom.pred.vocab();

  if (v == Vocab::IsSet) {
    if (args[0].kind() != TermKind::Constant || args[1].kind() != TermKind::List) return std::nullopt;
    if (!all_constants(args[1].args())) return std::nullopt;
    ax.kind = Kind::OneOf;
    ax.names = {std::string(args[0].name().str())};
    for (const auto& m : args[1].args()) ax.members.emplace_back(m.name().str());
    return ax;
  }
  if (v == Vocab::HasAllValuesOfPropertyFrom && args[0].kind() == TermKind::Compound) {
    const auto& c = args[0];
    if (c.name().str() != kUnnamedClass || c.args().size() != 2 || c.args()[0] != args[1] || c.args()[1] != args[2] ||
        !all_constants(c.args())) {
      return std::nullopt;
    }
    ax.kind = Kind::AnonymousClass;
    ax.names = {std::string(args[1].name().str()), std::string(args[2].name().str())};
    return ax;
  }
  if (!all_constants(args)) return std::nullopt;

  for (const auto& s : kShapes) {
    if (s.vocab != v || s.kind == Kind::AnonymousClass) continue;
    ax.kind = s.kind;
    if (is_cardinality(s.kind)) {
      auto n = as_count(args[2]);
      if (!n) return std::nullopt;
      ax.n = *n;
      ax.names = {std::string(args[0].name().str()), std::string(args[1].name().str())};
      return ax;
    }
    for (const auto& a : args) ax.names.emplace_back(a.name().str());
    return ax;
  }
  return std::nullopt;
}

}  // namespace detail

GroundAtom axiom_fact(const SourceAxiom& axiom) {
  GroundAtom g;
  g.pred = Predicate(vocab_of(axiom.kind), Layer::Base);
  auto c = [](const std::string& s) { return terms::constant(s); };
  switch (axiom.kind) {
    case Kind::OneOf: {
      std::vector<TermId> ms;
      for (const auto& m : axiom.members) ms.push_back(c(m));
      g.args[0] = c(axiom.names.at(0));
      g.args[1] = terms::list(ms);
      return g;
    }
    case Kind::AnonymousClass: {
      TermId p = c(axiom.names.at(0));
      TermId v = c(axiom.names.at(1));
      TermId pv[] = {p, v};
      g.args = {terms::compound(Symbol::intern(kUnnamedClass), pv), p, v};
      return g;
    }
    case Kind::MinCardinality:
    case Kind::MaxCardinality:
    case Kind::ExactCardinality:
      g.args = {c(axiom.names.at(0)), c(axiom.names.at(1)), c(std::to_string(axiom.n))};
      return g;
    default:
      for (size_t i = 0; i < axiom.names.size() && i < kMaxArity; ++i) g.args[i] = c(axiom.names[i]);
      return g;
  }
}

std::string SourceAxiom::to_string() const { return axiom_fact(*this).to_string() + "."; }

std::string SourceRule::to_string() const {
  std::vector<std::string> body_text;
  for (const auto& item : body) {
    if (auto* sl = std::get_if<SourceLiteral>(&item)) {
      body_text.push_back(sl->literal.to_string());
    } else if (auto* g = std::get_if<Guard>(&item)) {
      body_text.push_back(owlhorn::to_string(BodyElement{*g}));
    } else {
      body_text.push_back(owlhorn::to_string(BodyElement{std::get<ListMember>(item)}));
    }
  }
  std::string tail = body_text.empty() ? "." : " :- " + join(body_text, ", ") + ".";

  if (head_kind == HeadKind::Disjunction) {
    DisjunctiveHead d;
    for (const auto& h : head) d.disjuncts.push_back(h.literal.atom);
    d.each = each;
    return owlhorn::to_string(Head{d}) + tail;
  }
  std::vector<std::string> clauses;
  for (const auto& h : head) clauses.push_back(h.literal.to_string() + tail);
  return join(clauses, "\n");
}

std::string emit_native(const std::vector<SourceAxiom>& axioms, const std::vector<SourceRule>& rules) {
  std::string out;
  for (const auto& a : axioms) out += a.to_string() + "\n";
  for (const auto& r : rules) out += r.to_string() + "\n";
  return out;
}

ParseResult parse(std::string_view text, Dialect dialect, const ParseOptions& options) {
  switch (dialect) {
    case Dialect::Owl:
      return detail::parse_owl(text, options);
    case Dialect::Swrl:
      return detail::parse_swrl(text, options);
    case Dialect::RuleMl:
      return detail::parse_ruleml(text, options);
    case Dialect::Native:
      return detail::parse_native(text, options);
  }
  return {};
}

}  // namespace owlhorn
