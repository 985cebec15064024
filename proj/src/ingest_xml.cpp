#include <cctype>
#include <charconv>

#include "ingest_internal.hpp"
#include "xml.hpp"

namespace owlhorn::detail {
namespace {

using xml::Node;

// "#x", "http://host/onto#x", "&ns;x" -> "x"
std::string strip_name(std::string_view iri) {
  auto hash = iri.rfind('#');
  if (hash != std::string_view::npos) return std::string(iri.substr(hash + 1));
  if (!iri.empty() && iri[0] == '&') {
    auto semi = iri.find(';');
    if (semi != std::string_view::npos) return std::string(iri.substr(semi + 1));
  }
  auto slash = iri.rfind('/');
  if (slash != std::string_view::npos && slash + 1 < iri.size()) return std::string(iri.substr(slash + 1));
  return std::string(iri);
}

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

bool in_ns(const Node& n, std::string_view prefix) { return n.prefix() == prefix; }
bool is_vocab_ns(const Node& n) { return in_ns(n, "owl") || in_ns(n, "rdf") || in_ns(n, "rdfs"); }

class Reader {
 public:
  Reader(const ParseOptions& options, ParseResult& result) : options_(options), result_(result) {}

  SourceLocation at(const Node& n) const { return {options_.file, n.line}; }

  void error(const Node& n, std::string message) {
    result_.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Syntax, at(n), std::move(message)});
  }

  void unsupported(const Node& n, std::string_view primitive) {
    result_.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Unsupported, at(n),
                                             "unsupported OWL primitive '" + std::string(primitive) + "'"});
  }

  void axiom(const Node& n, SourceAxiom::Kind kind, std::vector<std::string> names) {
    SourceAxiom a;
    a.kind = kind;
    a.names = std::move(names);
    a.location = at(n);
    result_.axioms.push_back(std::move(a));
  }

  // A ground source literal becomes an axiom when it has an ontology shape,
  // otherwise a head-only rule.
  void fact(const Node& n, SourceLiteral lit) {
    if (!lit.literal.atom.is_ground()) {
      error(n, "top-level atom must be ground: " + lit.literal.to_string());
      return;
    }
    if (auto a = axiom_from_literal(lit.literal, at(n))) {
      result_.axioms.push_back(std::move(*a));
      return;
    }
    SourceRule r;
    r.head.push_back(std::move(lit));
    r.location = at(n);
    result_.rules.push_back(std::move(r));
  }

  static std::optional<std::string> resource(const Node& n) {
    if (auto r = n.attribute("rdf:resource")) return strip_name(*r);
    return std::nullopt;
  }

  static std::optional<std::string> subject(const Node& n) {
    if (auto id = n.attribute("rdf:ID")) return strip_name(*id);
    if (auto about = n.attribute("rdf:about")) return strip_name(*about);
    return std::nullopt;
  }

  const ParseOptions& options_;
  ParseResult& result_;
};

// ---------------------------------------------------------------- OWL

class OwlReader : public Reader {
 public:
  using Reader::Reader;

  void top(const Node& n) {
    if (n.name == "#document" || n.name == "rdf:RDF") {
      for (const auto& c : n.children) top(c);
      return;
    }
    auto local = n.local_name();
    if (in_ns(n, "owl")) {
      if (local == "Ontology") return;
      if (local == "Class") return owl_class(n);
      if (local == "ObjectProperty") return property(n);
      if (local == "Thing") return individual(n, std::nullopt);
      if (local == "Restriction") return error(n, "owl:Restriction must appear inside rdfs:subClassOf");
      return unsupported(n, local);
    }
    if (in_ns(n, "rdfs")) {
      if (local == "Datatype") {
        if (auto s = subject(n)) return axiom(n, SourceAxiom::Kind::DatatypeDecl, {*s});
        return error(n, "rdfs:Datatype needs rdf:about or rdf:ID");
      }
      if (local == "Class") return owl_class(n);
      return unsupported(n, local);
    }
    if (in_ns(n, "rdf")) {
      if (local == "Description") return individual(n, std::nullopt);
      return unsupported(n, local);
    }
    individual(n, std::string(local));
  }

 private:
  void owl_class(const Node& n) {
    auto name = subject(n);
    if (!name) return anonymous_class(n);
    if (n.children.empty()) return axiom(n, SourceAxiom::Kind::ClassDecl, {*name});
    for (const auto& c : n.children) {
      auto local = c.local_name();
      if (in_ns(c, "rdfs") && (local == "label" || local == "comment")) continue;
      if (in_ns(c, "rdfs") && local == "subClassOf") {
        sub_class_of(*name, c);
      } else if (in_ns(c, "owl") && (local == "complementOf" || local == "disjointWith" || local == "equivalentClass")) {
        auto other = resource(c);
        if (!other) {
          unsupported(c, std::string(local) + " with a class expression");
          continue;
        }
        auto kind = local == "complementOf"   ? SourceAxiom::Kind::ComplementOf
                    : local == "disjointWith" ? SourceAxiom::Kind::DisjointWith
                                              : SourceAxiom::Kind::EquivalentClasses;
        axiom(c, kind, {*name, *other});
      } else if (in_ns(c, "owl") && local == "oneOf") {
        SourceAxiom a;
        a.kind = SourceAxiom::Kind::OneOf;
        a.names = {*name};
        a.location = at(c);
        for (const auto& m : c.children) {
          auto member = subject(m);
          if (!member) {
            error(m, "owl:oneOf member needs rdf:about or rdf:ID");
            continue;
          }
          a.members.push_back(*member);
        }
        result_.axioms.push_back(std::move(a));
      } else {
        unsupported(c, local);
      }
    }
  }

  void anonymous_class(const Node& n) {
    bool any = false;
    for (const auto& c : n.children) {
      if (is_vocab_ns(c)) {
        unsupported(c, c.local_name());
        continue;
      }
      auto v = resource(c);
      if (!v) {
        error(c, "anonymous class property needs rdf:resource");
        continue;
      }
      axiom(c, SourceAxiom::Kind::AnonymousClass, {std::string(c.local_name()), *v});
      any = true;
    }
    if (!any && n.children.empty()) error(n, "owl:Class needs rdf:about, rdf:ID or content");
  }

  void sub_class_of(const std::string& cls, const Node& sub) {
    if (auto d = resource(sub)) {
      axiom(sub, SourceAxiom::Kind::SubClassOf, {cls, *d});
      return;
    }
    if (sub.children.empty()) {
      error(sub, "rdfs:subClassOf needs rdf:resource or a restriction");
      return;
    }
    for (const auto& r : sub.children) {
      if (!(in_ns(r, "owl") && r.local_name() == "Restriction")) {
        unsupported(r, r.local_name());
        continue;
      }
      restriction(cls, r);
    }
  }

  void restriction(const std::string& cls, const Node& r) {
    std::optional<std::string> prop;
    for (const auto& c : r.children) {
      if (in_ns(c, "owl") && c.local_name() == "onProperty") prop = resource(c);
    }
    if (!prop) {
      error(r, "owl:Restriction without owl:onProperty");
      return;
    }
    for (const auto& c : r.children) {
      auto local = c.local_name();
      if (!in_ns(c, "owl")) {
        unsupported(c, local);
        continue;
      }
      if (local == "onProperty") continue;
      if (local == "someValuesFrom" || local == "allValuesFrom") {
        auto d = resource(c);
        if (!d) {
          unsupported(c, std::string(local) + " with a class expression");
          continue;
        }
        axiom(c, local == "someValuesFrom" ? SourceAxiom::Kind::SomeValuesFrom : SourceAxiom::Kind::AllValuesFrom,
              {cls, *prop, *d});
      } else if (local == "cardinality" || local == "minCardinality" || local == "maxCardinality") {
        unsigned n = 0;
        const auto& t = c.text;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
          error(c, "owl:" + std::string(local) + " must be a non-negative integer, found '" + t + "'");
          continue;
        }
        SourceAxiom a;
        a.kind = local == "cardinality"      ? SourceAxiom::Kind::ExactCardinality
                 : local == "minCardinality" ? SourceAxiom::Kind::MinCardinality
                                             : SourceAxiom::Kind::MaxCardinality;
        a.names = {cls, *prop};
        a.n = n;
        a.location = at(c);
        result_.axioms.push_back(std::move(a));
      } else {
        unsupported(c, local);
      }
    }
  }

  void property(const Node& n) {
    auto name = subject(n);
    if (!name) {
      error(n, "owl:ObjectProperty needs rdf:about or rdf:ID");
      return;
    }
    axiom(n, SourceAxiom::Kind::PropertyDecl, {*name});
    for (const auto& c : n.children) {
      auto local = c.local_name();
      if (in_ns(c, "rdfs") && (local == "label" || local == "comment")) continue;
      if (in_ns(c, "rdf") && local == "type") {
        auto t = resource(c);
        unsupported(c, t ? *t : std::string("type"));
        continue;
      }
      unsupported(c, local);
    }
  }

  // Typed node (`<sniper rdf:ID="smith">`) or owl:Thing / rdf:Description.
  void individual(const Node& n, std::optional<std::string> cls) {
    auto name = subject(n);
    if (!name) {
      error(n, "individual <" + n.name + "> needs rdf:ID or rdf:about");
      return;
    }
    if (cls) {
      axiom(n, SourceAxiom::Kind::IndividualAssertion, {*name, *cls});
    } else {
      axiom(n, SourceAxiom::Kind::IndividualDecl, {*name});
    }
    for (const auto& c : n.children) {
      auto local = c.local_name();
      if (in_ns(c, "rdfs") && (local == "label" || local == "comment")) continue;
      if (in_ns(c, "rdf") && local == "type") {
        if (auto t = resource(c)) {
          axiom(c, SourceAxiom::Kind::IndividualAssertion, {*name, *t});
        } else {
          error(c, "rdf:type needs rdf:resource");
        }
        continue;
      }
      if (is_vocab_ns(c)) {
        unsupported(c, local);
        continue;
      }
      if (auto v = resource(c)) {
        axiom(c, SourceAxiom::Kind::PropertyAssertion, {*name, std::string(local), *v});
      } else if (c.children.size() == 1) {
        const auto& nested = c.children.front();
        auto nested_name = subject(nested);
        if (!nested_name) {
          error(nested, "nested individual needs rdf:ID or rdf:about");
          continue;
        }
        axiom(c, SourceAxiom::Kind::PropertyAssertion, {*name, std::string(local), *nested_name});
        top(nested);
      } else if (!c.text.empty()) {
        unsupported(c, "DatatypeProperty");
      } else {
        error(c, "property <" + c.name + "> needs rdf:resource");
      }
    }
  }
};

// ---------------------------------------------------------------- SWRL

class SwrlReader : public Reader {
 public:
  using Reader::Reader;

  void top(const Node& n) {
    auto local = n.local_name();
    if (n.name == "#document" || local == "Ontology" || local == "RDF" || local == "RuleML") {
      for (const auto& c : n.children) top(c);
      return;
    }
    if (local == "imp" || local == "Imp") return rule(n);
    if (local == "Class" && in_ns(n, "owlx")) {
      if (auto name = n.attribute_local("name")) return axiom(n, SourceAxiom::Kind::ClassDecl, {strip_name(*name)});
    }
    if (local == "Individual" && in_ns(n, "owlx")) {
      if (auto name = n.attribute_local("name")) {
        return axiom(n, SourceAxiom::Kind::IndividualDecl, {strip_name(*name)});
      }
    }
    if (auto lit = atom(n)) fact(n, std::move(*lit));
  }

 private:
  void rule(const Node& n) {
    SourceRule r;
    r.location = at(n);
    bool ok = true;
    for (const auto& c : n.children) {
      auto local = c.local_name();
      bool head = local == "_head" || local == "head";
      bool body = local == "_body" || local == "body";
      if (!head && !body) {
        error(c, "unexpected <" + c.name + "> in rule");
        ok = false;
        continue;
      }
      for (const auto& a : c.children) {
        auto lit = atom(a);
        if (!lit) {
          ok = false;
          continue;
        }
        if (head) {
          r.head.push_back(std::move(*lit));
        } else {
          r.body.push_back(std::move(*lit));
        }
      }
    }
    if (r.head.empty()) {
      error(n, "rule has no head atoms");
      ok = false;
    }
    if (ok) result_.rules.push_back(std::move(r));
  }

  std::optional<Term> argument(const Node& a) {
    auto local = a.local_name();
    if (local == "var" || local == "Var") return Term::variable(capitalize(a.text));
    if (local == "Individual") {
      if (auto name = a.attribute_local("name")) return Term::constant(strip_name(*name));
      return Term::constant(strip_name(a.text));
    }
    if (local == "ind" || local == "Ind") return Term::constant(strip_name(a.text));
    error(a, "unexpected atom argument <" + a.name + ">");
    return std::nullopt;
  }

  std::optional<SourceLiteral> atom(const Node& n) {
    auto local = n.local_name();
    if (local == "classAtom") {
      std::optional<std::string> cls;
      std::vector<Term> args;
      for (const auto& c : n.children) {
        if (c.local_name() == "Class") {
          if (auto name = c.attribute_local("name")) cls = strip_name(*name);
        } else if (auto t = argument(c)) {
          args.push_back(*t);
        } else {
          return std::nullopt;
        }
      }
      if (!cls || args.size() != 1) {
        error(n, "classAtom needs an owlx:Class and exactly one argument");
        return std::nullopt;
      }
      return SourceLiteral{{Polarity::Positive,
                            Atom{Predicate(Vocab::IsMemberOf, Layer::Base), {args[0], Term::constant(*cls)}}},
                           false};
    }
    if (local == "individualPropertyAtom") {
      auto prop = n.attribute_local("property");
      std::vector<Term> args;
      for (const auto& c : n.children) {
        auto t = argument(c);
        if (!t) return std::nullopt;
        args.push_back(*t);
      }
      if (!prop || args.size() != 2) {
        error(n, "individualPropertyAtom needs swrlx:property and two arguments");
        return std::nullopt;
      }
      return SourceLiteral{{Polarity::Positive,
                            Atom{Predicate(Vocab::HasPropertyWith, Layer::Base),
                                 {args[0], Term::constant(strip_name(*prop)), args[1]}}},
                           false};
    }
    if (local.size() > 4 && local.substr(local.size() - 4) == "Atom") {
      result_.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Unsupported, at(n),
                                               "unsupported SWRL atom '" + std::string(local) + "'"});
      return std::nullopt;
    }
    error(n, "unexpected element <" + n.name + ">");
    return std::nullopt;
  }
};

// ---------------------------------------------------------------- RuleML

class RuleMlReader : public Reader {
 public:
  using Reader::Reader;

  void top(const Node& n) {
    auto local = n.local_name();
    if (n.name == "#document" || local == "RuleML" || local == "Assert" || local == "Rulebase" || local == "Query") {
      for (const auto& c : n.children) top(c);
      return;
    }
    if (local == "Implies" || local == "Imp") return rule(n);
    if (local == "Fact") {
      for (const auto& c : n.children) {
        auto role = c.local_name();
        if (role == "head" || role == "_head") {
          for (const auto& a : c.children) top_fact(a);
        } else {
          top_fact(c);
        }
      }
      return;
    }
    top_fact(n);
  }

 private:
  void top_fact(const Node& n) {
    std::vector<SourceLiteral> lits;
    if (!conjunction(n, lits)) return;
    for (auto& l : lits) fact(n, std::move(l));
  }

  void rule(const Node& n) {
    const Node* head = nullptr;
    const Node* body = nullptr;
    std::vector<const Node*> positional;
    for (const auto& c : n.children) {
      auto local = c.local_name();
      if (local == "head" || local == "_head" || local == "then" || local == "conclusion") {
        head = &c;
      } else if (local == "body" || local == "_body" || local == "if" || local == "premise") {
        body = &c;
      } else {
        positional.push_back(&c);
      }
    }
    // Unlabelled children: premise first, then conclusion.
    if (!body && !positional.empty()) {
      body = positional.front();
      positional.erase(positional.begin());
    }
    if (!head && !positional.empty()) head = positional.front();
    if (!head) {
      error(n, "rule has no head");
      return;
    }

    SourceRule r;
    r.location = at(n);
    bool ok = role_atoms(*head, r.head);
    std::vector<SourceLiteral> body_lits;
    if (body) ok = role_atoms(*body, body_lits) && ok;
    for (auto& b : body_lits) r.body.push_back(std::move(b));
    if (ok) result_.rules.push_back(std::move(r));
  }

  // Children of a head/body role element, or the element itself when it is
  // already an atom (positional form).
  bool role_atoms(const Node& role, std::vector<SourceLiteral>& out) {
    auto local = role.local_name();
    if (local == "Atom" || local == "Neg" || local == "And" || local == "Naf" || local == "Or") {
      return conjunction(role, out);
    }
    bool ok = true;
    for (const auto& c : role.children) ok = conjunction(c, out) && ok;
    return ok;
  }

  bool conjunction(const Node& n, std::vector<SourceLiteral>& out) {
    auto local = n.local_name();
    if (local == "And") {
      bool ok = true;
      for (const auto& c : n.children) ok = conjunction(c, out) && ok;
      return ok;
    }
    if (local == "Naf" || local == "Or") {
      result_.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Unsupported, at(n),
                                               "unsupported RuleML construct '" + std::string(local) + "'"});
      return false;
    }
    bool negative = false;
    const Node* a = &n;
    while (a->local_name() == "Neg") {
      if (a->children.size() != 1) {
        error(*a, "Neg must wrap exactly one Atom");
        return false;
      }
      negative = !negative;
      a = &a->children.front();
    }
    auto lit = atom(*a);
    if (!lit) return false;
    if (negative) lit->literal.polarity = Polarity::Negative;
    out.push_back(std::move(*lit));
    return true;
  }

  std::optional<SourceLiteral> atom(const Node& n) {
    if (n.local_name() != "Atom") {
      error(n, "expected <Atom>, found <" + n.name + ">");
      return std::nullopt;
    }
    std::optional<std::string> rel;
    std::vector<Term> args;
    for (const auto& c : n.children) {
      auto local = c.local_name();
      if (local == "opr" || local == "op") {
        for (const auto& r : c.children) {
          if (r.local_name() == "Rel") rel = strip_name(r.text);
        }
      } else if (local == "Rel") {
        rel = strip_name(c.text);
      } else if (local == "Var") {
        args.push_back(Term::variable(capitalize(c.text)));
      } else if (local == "Ind") {
        args.push_back(Term::constant(strip_name(c.text)));
      } else {
        error(c, "unexpected <" + c.name + "> in Atom");
        return std::nullopt;
      }
    }
    if (!rel || rel->empty()) {
      error(n, "Atom without a relation name");
      return std::nullopt;
    }
    if (args.size() == 1) {
      return SourceLiteral{{Polarity::Positive,
                            Atom{Predicate(Vocab::IsMemberOf, Layer::Base), {args[0], Term::constant(*rel)}}},
                           false};
    }
    if (args.size() == 2) {
      return SourceLiteral{{Polarity::Positive,
                            Atom{Predicate(Vocab::HasPropertyWith, Layer::Base),
                                 {args[0], Term::constant(*rel), args[1]}}},
                           false};
    }
    result_.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Unsupported, at(n),
                                             "relation '" + *rel + "' has arity " + std::to_string(args.size()) +
                                                 "; only classes (1) and properties (2) are supported"});
    return std::nullopt;
  }
};

template <typename R>
ParseResult run(std::string_view text, const ParseOptions& options) {
  ParseResult result;
  auto doc = xml::parse(text, options.file, result.diagnostics);
  R reader(options, result);
  reader.top(doc);
  return result;
}

}  // namespace

ParseResult parse_owl(std::string_view text, const ParseOptions& options) { return run<OwlReader>(text, options); }
ParseResult parse_swrl(std::string_view text, const ParseOptions& options) { return run<SwrlReader>(text, options); }
ParseResult parse_ruleml(std::string_view text, const ParseOptions& options) {
  return run<RuleMlReader>(text, options);
}

}  // namespace owlhorn::detail
