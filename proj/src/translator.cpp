#include "owlhorn/translator.hpp"

#include <algorithm>
#include <set>

namespace owlhorn {
namespace {

GroundLiteral decl(Vocab v, TermId t) { return {Polarity::Positive, GroundAtom::make(Predicate(v, Layer::Base), {t})}; }

void declare(ArgRole role, TermId t, std::vector<GroundLiteral>& out) {
  switch (role) {
    case ArgRole::Individual:
    case ArgRole::Class:
    case ArgRole::Property: {
      auto k = terms::kind(t);
      if (k == TermKind::List || (k == TermKind::Constant && terms::is_number(t))) return;
      Vocab v = role == ArgRole::Individual ? Vocab::IsIndividual
                : role == ArgRole::Class    ? Vocab::IsClass
                                            : Vocab::IsProperty;
      out.push_back(decl(v, t));
      return;
    }
    case ArgRole::IndividualList:
      if (terms::kind(t) != TermKind::List) return;
      for (auto m : terms::args(t)) declare(ArgRole::Individual, m, out);
      return;
    case ArgRole::None:
      return;
  }
}

void append_unique(std::vector<GroundLiteral>& out, const std::vector<GroundLiteral>& more) {
  for (const auto& l : more) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
}

Term substitute(const Term& t, Symbol var, const Term& value) {
  switch (t.kind()) {
    case TermKind::Variable:
      return t.name() == var ? value : t;
    case TermKind::Constant:
      return t;
    case TermKind::Compound:
    case TermKind::List: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(substitute(a, var, value));
      return t.kind() == TermKind::List ? Term::list(std::move(args))
                                        : Term::compound(t.name().str(), std::move(args));
    }
  }
  return t;
}

Literal with_layer(const SourceLiteral& s, Layer fallback) {
  Literal lit = s.literal;
  if (!s.explicit_layer) lit.atom.pred = lit.atom.pred.at(fallback);
  return lit;
}

std::vector<Symbol> variables_of(const Term& t) {
  std::vector<Symbol> out;
  t.collect_variables(out);
  return out;
}

std::vector<Symbol> variables_of(const Atom& a) {
  std::vector<Symbol> out;
  for (const auto& t : a.args) t.collect_variables(out);
  return out;
}

// Declaration guard that would bind `var`, judged by the first argument
// role it fills in the rule.
std::string suggested_guard(const Rule& rule, Symbol var) {
  auto role_in = [&](const Atom& a) -> ArgRole {
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (a.args[i].is_variable() && a.args[i].name() == var) return arg_role(a.pred.vocab(), i);
    }
    return ArgRole::None;
  };
  ArgRole role = ArgRole::None;
  for (const auto* lit : rule.body_literals()) {
    if ((role = role_in(lit->atom)) != ArgRole::None) break;
  }
  if (role == ArgRole::None) {
    if (auto* h = std::get_if<Literal>(&rule.head)) role = role_in(h->atom);
  }
  switch (role) {
    case ArgRole::Class:
      return "isClass";
    case ArgRole::Property:
      return "isProperty";
    default:
      return "isIndividual";
  }
}

}  // namespace

std::vector<GroundLiteral> declarations_for(const GroundAtom& atom) {
  std::vector<GroundLiteral> out;
  Vocab v = atom.pred.vocab();
  for (size_t i = 0; i < atom.arity(); ++i) declare(arg_role(v, i), atom.args[i], out);
  std::vector<GroundLiteral> unique;
  append_unique(unique, out);
  return unique;
}

std::vector<GroundLiteral> translate_axiom(const SourceAxiom& axiom) {
  auto fact = axiom_fact(axiom);
  std::vector<GroundLiteral> out{{Polarity::Positive, fact}};
  if (axiom.kind == SourceAxiom::Kind::AnonymousClass) {
    // The value is an individual, not a class; only the generated class and
    // the property are declared.
    append_unique(out, {decl(Vocab::IsClass, fact.args[0]), decl(Vocab::IsProperty, fact.args[1])});
    return out;
  }
  append_unique(out, declarations_for(fact));
  return out;
}

Translation translate_rule(const SourceRule& source) {
  Translation out;
  auto internal_error = [&](std::string message) {
    out.diagnostics.push_back(
        Diagnostic{Severity::Error, DiagnosticKind::Semantic, source.location, std::move(message)});
  };

  std::vector<BodyElement> body;
  for (const auto& item : source.body) {
    if (auto* s = std::get_if<SourceLiteral>(&item)) {
      body.emplace_back(with_layer(*s, Layer::Derived));
    } else if (auto* g = std::get_if<Guard>(&item)) {
      body.emplace_back(*g);
    } else {
      body.emplace_back(std::get<ListMember>(item));
    }
  }
  std::vector<Literal> heads;
  for (const auto& h : source.head) heads.push_back(with_layer(h, Layer::Base));

  if (source.head_kind == SourceRule::HeadKind::Disjunction) {
    bool explicit_layers =
        std::all_of(source.head.begin(), source.head.end(), [](const SourceLiteral& s) { return s.explicit_layer; });
    if (!explicit_layers) {
      internal_error("internal error: disjunctive head from a dialect without disjunction");
      return out;
    }
  }

  // Bodyless ground clauses are facts.
  if (body.empty()) {
    bool ground = std::all_of(heads.begin(), heads.end(), [](const Literal& l) { return l.atom.is_ground(); });
    if (source.each) ground = ground && source.each->list.is_ground() && source.each->list.kind() == TermKind::List;
    if (source.head_kind == SourceRule::HeadKind::Conjunction && ground) {
      for (const auto& h : heads) {
        GroundLiteral g{h.polarity, GroundAtom::from(h.atom)};
        append_unique(out.facts, {g});
        append_unique(out.facts, declarations_for(g.atom));
      }
      return out;
    }
    if (source.head_kind == SourceRule::HeadKind::Disjunction && source.each && ground) {
      // Only the element variable is open; expand over the list.
      std::vector<GroundAtom> atoms;
      const auto& tmpl = heads.front().atom;
      for (const auto& m : source.each->list.args()) {
        Atom a = tmpl;
        for (auto& t : a.args) t = substitute(t, source.each->element.name(), m);
        if (!a.is_ground()) {
          internal_error("orEach template has variables besides the element: " + tmpl.to_string());
          return out;
        }
        atoms.push_back(GroundAtom::from(a));
      }
      if (atoms.empty()) {
        internal_error("orEach over an empty list has no disjuncts");
        return out;
      }
      auto d = make_disjunction(atoms);
      out.disjunctions.push_back(d);
      for (const auto& a : d.disjuncts()) append_unique(out.facts, declarations_for(a));
      return out;
    }
    if (source.head_kind == SourceRule::HeadKind::Disjunction && !source.each && ground) {
      std::vector<GroundAtom> atoms;
      for (const auto& h : heads) atoms.push_back(GroundAtom::from(h.atom));
      auto d = make_disjunction(atoms);
      out.disjunctions.push_back(d);
      for (const auto& a : d.disjuncts()) append_unique(out.facts, declarations_for(a));
      return out;
    }
  }

  std::vector<Rule> rules;
  if (source.head_kind == SourceRule::HeadKind::Disjunction) {
    DisjunctiveHead d;
    for (const auto& h : heads) d.disjuncts.push_back(h.atom);
    d.each = source.each;
    rules.push_back(Rule{d, body, RuleOrigin::User, {}});
  } else {
    for (const auto& h : heads) rules.push_back(Rule{h, body, RuleOrigin::User, {}});
  }
  for (auto& r : rules) {
    auto problems = check_safety(r, source.location);
    if (!problems.empty()) {
      out.diagnostics.insert(out.diagnostics.end(), problems.begin(), problems.end());
      continue;
    }
    out.rules.push_back(std::move(r));
  }
  return out;
}

Translation translate(const ParseResult& parsed) {
  Translation out;
  for (const auto& a : parsed.axioms) {
    auto facts = translate_axiom(a);
    out.facts.insert(out.facts.end(), facts.begin(), facts.end());
  }
  for (const auto& r : parsed.rules) {
    auto t = translate_rule(r);
    out.facts.insert(out.facts.end(), t.facts.begin(), t.facts.end());
    out.disjunctions.insert(out.disjunctions.end(), t.disjunctions.begin(), t.disjunctions.end());
    out.rules.insert(out.rules.end(), t.rules.begin(), t.rules.end());
    out.diagnostics.insert(out.diagnostics.end(), t.diagnostics.begin(), t.diagnostics.end());
  }
  return out;
}

std::vector<Diagnostic> check_safety(const Rule& rule, const SourceLocation& where) {
  std::vector<Diagnostic> out;
  std::set<uint32_t> bound;
  auto is_bound = [&](Symbol v) { return bound.count(v.id()) != 0; };
  auto bind_all = [&](const std::vector<Symbol>& vars) {
    for (auto v : vars) bound.insert(v.id());
  };
  auto report = [&](std::string message) {
    out.push_back(Diagnostic{Severity::Error, DiagnosticKind::Safety, where, std::move(message)});
  };
  auto unbound_in = [&](const std::vector<Symbol>& vars) {
    std::vector<Symbol> missing;
    for (auto v : vars) {
      if (!is_bound(v) && std::find(missing.begin(), missing.end(), v) == missing.end()) missing.push_back(v);
    }
    return missing;
  };

  for (const auto& element : rule.body) {
    if (auto* lit = std::get_if<Literal>(&element)) {
      bind_all(variables_of(lit->atom));
    } else if (auto* g = std::get_if<Guard>(&element)) {
      auto vars = variables_of(g->lhs);
      auto more = variables_of(g->rhs);
      vars.insert(vars.end(), more.begin(), more.end());
      for (auto v : unbound_in(vars)) {
        std::string var(v.str());
        report("unbound variable " + var + " in guard " + to_string(element) + "; insert a declaration guard such as " +
               suggested_guard(rule, v) + "(" + var + ") before it");
      }
    } else {
      const auto& m = std::get<ListMember>(element);
      auto list_vars = unbound_in(variables_of(m.list));
      for (auto v : list_vars) {
        report("unbound variable " + std::string(v.str()) + " in list of " + to_string(element));
      }
      bind_all(variables_of(m.element));
    }
  }

  std::vector<Symbol> head_vars;
  if (auto* h = std::get_if<Literal>(&rule.head)) {
    head_vars = variables_of(h->atom);
  } else {
    const auto& d = std::get<DisjunctiveHead>(rule.head);
    if (d.each) {
      for (auto v : unbound_in(variables_of(d.each->list))) {
        report("unbound variable " + std::string(v.str()) + " in orEach list");
      }
      bind_all(variables_of(d.each->element));
    }
    for (const auto& a : d.disjuncts) {
      auto vs = variables_of(a);
      head_vars.insert(head_vars.end(), vs.begin(), vs.end());
    }
  }
  for (auto v : unbound_in(head_vars)) {
    report("head variable " + std::string(v.str()) + " does not occur in the body of " + rule.to_string());
  }
  return out;
}

Rule rule_from_text(std::string_view text, std::string id, RuleOrigin origin) {
  ParseOptions options;
  options.file = id;
  options.allow_reserved = true;
  auto parsed = parse(text, Dialect::Native, options);
  if (!parsed.ok() || parsed.rules.size() != 1 || !parsed.axioms.empty()) {
    throw ParseError(parsed.diagnostics.empty() ? "not a single rule: " + std::string(text)
                                                : parsed.diagnostics.front().to_string());
  }
  auto t = translate_rule(parsed.rules.front());
  if (t.rules.size() != 1) {
    throw ParseError(t.diagnostics.empty() ? "not a single rule: " + std::string(text) : t.diagnostics.front().to_string());
  }
  Rule r = std::move(t.rules.front());
  r.origin = origin;
  r.id = std::move(id);
  return r;
}

}  // namespace owlhorn
