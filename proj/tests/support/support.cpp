#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "owlhorn/axiom_rules.hpp"
#include "owlhorn/ingest.hpp"
#include "owlhorn/translator.hpp"

namespace testing_support {

using namespace owlhorn;

std::string fixture_path(const std::string& name) { return std::string(OWLHORN_FIXTURES) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

namespace {

Program checked(CompileResult r) {
  if (!r.ok()) {
    std::string text;
    for (const auto& d : r.diagnostics) text += d.to_string() + "\n";
    throw std::runtime_error("compile failed:\n" + text);
  }
  return std::move(r.program);
}

}  // namespace

Program compile_fixtures(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& pragmas,
                         const std::map<std::string, std::vector<std::string>>& variants) {
  std::vector<SourceFile> inputs;
  for (const auto& n : names) inputs.push_back(read_source(fixture_path(n)));
  CompileOptions options;
  options.pragmas = pragmas;
  for (const auto& [name, files] : variants) {
    for (const auto& f : files) options.variants[name].push_back(read_source(fixture_path(f)));
  }
  return checked(compile_program(inputs, options));
}

Program compile_text(const std::string& text, const std::vector<std::pair<std::string, std::string>>& pragmas) {
  CompileOptions options;
  options.pragmas = pragmas;
  return checked(compile_program({SourceFile{"input.pl", text, Dialect::Native}}, options));
}

Program translate_only(const std::string& text) {
  auto parsed = parse(text, Dialect::Native);
  if (!parsed.ok()) throw std::runtime_error("parse failed: " + parsed.diagnostics.front().to_string());
  auto t = translate(parsed);
  if (has_errors(t.diagnostics)) throw std::runtime_error("translate failed: " + t.diagnostics.front().to_string());
  Program p;
  for (const auto& f : t.facts) p.add_fact(f);
  for (const auto& d : t.disjunctions) p.add_disjunction(d);
  for (size_t i = 0; i < t.rules.size(); ++i) {
    t.rules[i].id = "r" + std::to_string(i + 1);
    p.rules().push_back(t.rules[i]);
  }
  return p;
}

std::vector<std::string> dump(const FactStore& store) {
  auto out = store.sorted_text(Polarity::Positive);
  auto neg = store.sorted_text(Polarity::Negative);
  auto dis = store.sorted_disjunction_text();
  out.insert(out.end(), neg.begin(), neg.end());
  out.insert(out.end(), dis.begin(), dis.end());
  return out;
}

std::set<std::string> positives(const FactStore& store, Layer layer) {
  std::set<std::string> out;
  for (const auto& l : store.literals(Polarity::Positive)) {
    if (l.atom.pred.layer() == layer) out.insert(l.atom.to_string());
  }
  return out;
}

GroundLiteral lit(const std::string& text) { return parse_ground_literal(text); }
GroundAtom atom(const std::string& text) { return parse_ground_literal(text).atom; }

// ---------------------------------------------------------------------------
// Generator

namespace {

struct PredSpec {
  Vocab vocab;
  unsigned arity;
};

const std::vector<PredSpec>& pool() {
  static const std::vector<PredSpec> p{
      {Vocab::IsMemberOf, 2},      {Vocab::IsSubClassOf, 2},  {Vocab::HasPropertyWith, 3},
      {Vocab::EquivalentIndividuals, 2}, {Vocab::IsClass, 1}, {Vocab::IsIndividual, 1},
      {Vocab::DisjointClasses, 2},
  };
  return p;
}

const char* kVars[] = {"X", "Y", "Z", "W"};

class Gen {
 public:
  Gen(std::mt19937& rng, const GenOptions& o) : rng_(rng), o_(o) {
    constants_ = 2 + below(std::max(1u, o.max_constants - 1));
  }

  RandomProgram run() {
    RandomProgram out;
    std::ostringstream s;
    unsigned facts = 1 + below(o_.max_facts);
    unsigned budget = facts;
    while (budget > 0) {
      --budget;
      unsigned kind = below(20);
      if (kind == 0) {
        s << "or(" << ground_atom(Layer::Base) << ", " << ground_atom(Layer::Base);
        if (chance(3)) s << ", " << ground_atom(Layer::Base);
        s << ").\n";
      } else if (kind <= 3) {
        s << "logicNot(" << ground_atom(fact_layer()) << ").\n";
      } else if (o_.system_constructs && kind == 4) {
        s << system_fact() << ".\n";
      } else {
        s << ground_atom(fact_layer()) << ".\n";
      }
    }
    unsigned rules = below(o_.max_rules + 1);
    for (unsigned i = 0; i < rules; ++i) s << rule() << "\n";
    out.text = s.str();
    if (o_.system_constructs) {
      static const char* strategies[] = {"skolemize", "error", "assert-fresh"};
      out.pragmas.push_back({"existential", strategies[below(3)]});
      out.pragmas.push_back({"max_card", chance(2) ? "merge" : "error"});
      if (chance(4)) out.pragmas.push_back({"consistency_check", "off"});
    }
    return out;
  }

 private:
  unsigned below(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }
  bool chance(unsigned one_in) { return below(one_in) == 0; }

  std::string constant() { return "c" + std::to_string(below(constants_)); }

  Layer fact_layer() { return o_.derived_facts && chance(3) ? Layer::Derived : Layer::Base; }

  std::string spelling(const PredSpec& p, Layer layer) { return std::string(Predicate(p.vocab, layer).spelling()); }

  std::string ground_atom(Layer layer) {
    const auto& p = pool()[below(pool().size())];
    std::string s = spelling(p, layer) + "(";
    for (unsigned i = 0; i < p.arity; ++i) s += (i ? ", " : "") + constant();
    return s + ")";
  }

  std::string system_fact() {
    switch (below(5)) {
      case 0: {
        std::string s = "isset(" + constant() + ", [" + constant();
        for (unsigned n = below(3); n > 0; --n) s += ", " + constant();
        return s + "])";
      }
      case 1:
        return "hassomevaluesofpropertyfrom(" + constant() + ", " + constant() + ", " + constant() + ")";
      case 2:
        return "maxcardinality(" + constant() + ", " + constant() + ", " + std::to_string(1 + below(2)) + ")";
      case 3:
        return "exactcardinality(" + constant() + ", " + constant() + ", 1)";
      default:
        return "complementaryclasses(" + constant() + ", " + constant() + ")";
    }
  }

  std::string arg(std::vector<std::string>& bound, unsigned max_vars) {
    if (chance(4)) return constant();
    std::string v = kVars[below(max_vars)];
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
    return v;
  }

  std::string head_arg(const std::vector<std::string>& bound) {
    if (bound.empty() || chance(5)) return constant();
    return bound[below(bound.size())];
  }

  std::string head_atom(const std::vector<std::string>& bound, Layer layer) {
    const auto& p = pool()[below(pool().size())];
    std::string s = spelling(p, layer) + "(";
    for (unsigned i = 0; i < p.arity; ++i) s += (i ? ", " : "") + head_arg(bound);
    return s + ")";
  }

  Layer any_layer() { return chance(2) ? Layer::Base : Layer::Derived; }

  std::string rule() {
    std::vector<std::string> bound;
    std::vector<std::string> body;
    unsigned literals = 1 + below(3);
    unsigned max_vars = 1 + below(4);
    for (unsigned i = 0; i < literals; ++i) {
      const auto& p = pool()[below(pool().size())];
      // The system rules read the Derived layer; user rules may read either.
      Layer layer = o_.system_constructs ? (chance(4) ? Layer::Base : Layer::Derived) : any_layer();
      std::string a = spelling(p, layer) + "(";
      for (unsigned k = 0; k < p.arity; ++k) a += (k ? ", " : "") + arg(bound, max_vars);
      a += ")";
      body.push_back(chance(5) ? "logicNot(" + a + ")" : a);
    }
    if (bound.size() >= 2 && chance(4)) {
      body.push_back(bound[0] + " \\= " + bound[1]);
    } else if (!bound.empty() && chance(8)) {
      body.push_back(bound[below(bound.size())] + " = " + constant());
    }
    std::string head;
    Layer head_layer = o_.system_constructs ? Layer::Base : any_layer();
    if (o_.system_constructs && chance(6)) {
      head = "or(" + head_atom(bound, Layer::Base) + ", " + head_atom(bound, Layer::Base) + ")";
    } else {
      head = head_atom(bound, head_layer);
      if (chance(8)) head = "logicNot(" + head + ")";
    }
    std::string s = head + " :- ";
    for (size_t i = 0; i < body.size(); ++i) s += (i ? ", " : "") + body[i];
    return s + ".";
  }

  std::mt19937& rng_;
  GenOptions o_;
  unsigned constants_ = 0;
};

}  // namespace

RandomProgram random_program(std::mt19937& rng, const GenOptions& options) { return Gen(rng, options).run(); }

Manifest random_manifest(std::mt19937& rng) {
  auto below = [&](unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); };
  Manifest m;
  unsigned queries = 1 + below(3);
  for (unsigned i = 0; i < queries; ++i) m.queries.push_back(Predicate(pool()[below(pool().size())].vocab, Layer::Derived));
  unsigned dynamic = below(3);
  for (unsigned i = 0; i < dynamic; ++i) m.dynamic.push_back(Predicate(pool()[below(pool().size())].vocab, Layer::Base));
  return m;
}

std::vector<GroundLiteral> random_dynamic_facts(std::mt19937& rng, const Manifest& manifest, unsigned constants) {
  auto below = [&](unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng); };
  std::vector<GroundLiteral> out;
  if (manifest.dynamic.empty()) return out;
  unsigned n = 1 + below(5);
  for (unsigned i = 0; i < n; ++i) {
    Predicate p = manifest.dynamic[below(manifest.dynamic.size())];
    GroundAtom a{p, {}};
    for (unsigned k = 0; k < p.arity(); ++k) a.args[k] = terms::constant("c" + std::to_string(below(constants)));
    out.push_back(GroundLiteral{below(5) == 0 ? Polarity::Negative : Polarity::Positive, a});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

using Assignment = std::map<uint32_t, TermId>;

std::optional<TermId> value_of(const Term& t, const Assignment& a) {
  if (t.is_variable()) {
    auto it = a.find(t.name().id());
    if (it == a.end()) return std::nullopt;
    return it->second;
  }
  return t.ground_id();
}

std::optional<GroundLiteral> instance(const Literal& l, const Assignment& a) {
  GroundAtom g{l.atom.pred, {}};
  for (size_t i = 0; i < l.atom.args.size(); ++i) {
    auto v = value_of(l.atom.args[i], a);
    if (!v) return std::nullopt;
    g.args[i] = *v;
  }
  return GroundLiteral{l.polarity, g};
}

void variables_of(const Rule& r, std::vector<uint32_t>& out) {
  std::vector<Symbol> syms;
  for (const auto& e : r.body) {
    if (auto* l = std::get_if<Literal>(&e)) {
      for (const auto& t : l->atom.args) t.collect_variables(syms);
    }
  }
  for (auto s : syms) {
    if (std::find(out.begin(), out.end(), s.id()) == out.end()) out.push_back(s.id());
  }
}

}  // namespace

std::vector<std::string> OracleStore::dump() const {
  std::vector<std::string> pos, neg, dis;
  for (const auto& l : literals) (l.negative() ? neg : pos).push_back(l.to_string());
  for (const auto& d : disjunctions) dis.push_back(d.to_string());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  std::sort(dis.begin(), dis.end());
  pos.insert(pos.end(), neg.begin(), neg.end());
  pos.insert(pos.end(), dis.begin(), dis.end());
  return pos;
}

OracleStore oracle_materialize(const Program& program) {
  OracleStore s;
  for (const auto& f : program.facts) s.literals.insert(f);
  for (const auto& d : program.disjunctions) s.disjunctions.insert(d);

  std::set<TermId> domain_set;
  for (const auto& f : program.facts) {
    for (size_t i = 0; i < f.atom.arity(); ++i) domain_set.insert(f.atom.args[i]);
  }
  for (const auto& d : program.disjunctions) {
    for (const auto& a : d.disjuncts()) {
      for (size_t i = 0; i < a.arity(); ++i) domain_set.insert(a.args[i]);
    }
  }
  for (const auto& rule : program.rules()) {
    for (const auto& e : rule.body) {
      if (auto* l = std::get_if<Literal>(&e)) {
        for (const auto& t : l->atom.args) {
          if (auto id = t.ground_id()) domain_set.insert(*id);
        }
      }
    }
    for (const auto& t : std::get<Literal>(rule.head).atom.args) {
      if (auto id = t.ground_id()) domain_set.insert(*id);
    }
  }
  std::vector<TermId> domain(domain_set.begin(), domain_set.end());

  auto holds = [&](const GroundLiteral& l) { return s.literals.count(l) != 0; };
  for (;;) {
    std::set<GroundLiteral> fresh;
    for (const auto& rule : program.rules()) {
      const auto& head = std::get<Literal>(rule.head);
      std::vector<uint32_t> vars;
      variables_of(rule, vars);
      Assignment a;
      std::function<void(size_t)> enumerate = [&](size_t k) {
        if (k < vars.size()) {
          for (auto v : domain) {
            a[vars[k]] = v;
            enumerate(k + 1);
          }
          a.erase(vars[k]);
          return;
        }
        for (const auto& e : rule.body) {
          if (auto* l = std::get_if<Literal>(&e)) {
            auto g = instance(*l, a);
            if (!g || !holds(*g)) return;
          } else if (auto* guard = std::get_if<Guard>(&e)) {
            auto x = value_of(guard->lhs, a);
            auto y = value_of(guard->rhs, a);
            if (!x || !y) return;
            if ((*x == *y) != (guard->kind == Guard::Kind::Equal)) return;
          } else {
            return;
          }
        }
        if (auto h = instance(head, a); h && !holds(*h)) fresh.insert(*h);
      };
      enumerate(0);
    }
    for (const auto& d : s.disjunctions) {
      const GroundAtom* open = nullptr;
      size_t open_count = 0;
      bool satisfied = false;
      for (const auto& atom : d.disjuncts()) {
        GroundAtom derived{atom.pred.derived(), atom.args};
        if (holds({Polarity::Positive, derived})) {
          satisfied = true;
          break;
        }
        if (!holds({Polarity::Negative, derived})) {
          open = &atom;
          ++open_count;
        }
      }
      if (satisfied) continue;
      GroundLiteral out;
      if (open_count == 1) {
        out = {Polarity::Positive, *open};
      } else if (open_count == 0) {
        std::vector<TermId> parts{terms::constant(kEmptyDisjunctionMessage), d.as_term()};
        out = {Polarity::Positive, GroundAtom::make(Predicate(Vocab::Error, Layer::Derived), {terms::list(parts)})};
      } else {
        continue;
      }
      if (!holds(out)) fresh.insert(out);
    }
    if (fresh.empty()) return s;
    s.literals.insert(fresh.begin(), fresh.end());
  }
}

std::set<std::pair<std::string, std::string>> closure_pairs(
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> next;
  std::set<std::string> nodes;
  for (const auto& [a, b] : edges) {
    next[a].push_back(b);
    nodes.insert(a);
    nodes.insert(b);
  }
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& start : nodes) {
    std::vector<std::string> stack{start};
    std::set<std::string> seen{start};
    while (!stack.empty()) {
      auto n = stack.back();
      stack.pop_back();
      out.insert({start, n});
      for (const auto& m : next[n]) {
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
  }
  return out;
}

}  // namespace testing_support
