#include "owlhorn/minimizer.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace owlhorn {
namespace {

PredNode node_of(const Literal& l) { return {l.atom.pred, l.polarity}; }

PredNode positive(Predicate p) { return {p, Polarity::Positive}; }

PredNode error_node() { return positive(Predicate(Vocab::Error, Layer::Derived)); }

bool contains(const PredSet& set, const PredNode& n) { return set.count(n) != 0; }

void add_reads_of_disjuncts(const std::vector<PredNode>& disjuncts, std::vector<PredNode>& reads) {
  for (const auto& d : disjuncts) {
    reads.push_back({d.pred.derived(), Polarity::Positive});
    reads.push_back({d.pred.derived(), Polarity::Negative});
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string PredNode::to_string() const {
  std::string s = std::string(pred.spelling()) + "/" + std::to_string(pred.arity());
  return pol == Polarity::Negative ? "logicNot(" + s + ")" : s;
}

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": " + why);
    };
    auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) fail("expected 'query p/n' or 'dynamic p/n'");
    std::string_view kind = line.substr(0, space);
    std::string_view spec = trim(line.substr(space));
    auto slash = spec.rfind('/');
    if (slash == std::string_view::npos) fail("expected name/arity, got '" + std::string(spec) + "'");
    std::string_view name = trim(spec.substr(0, slash));
    std::string_view arity_text = trim(spec.substr(slash + 1));
    unsigned arity = 0;
    auto [ptr, ec] = std::from_chars(arity_text.data(), arity_text.data() + arity_text.size(), arity);
    if (ec != std::errc() || ptr != arity_text.data() + arity_text.size()) fail("bad arity '" + std::string(arity_text) + "'");
    bool query = kind == "query";
    if (!query && kind != "dynamic") fail("unknown entry kind '" + std::string(kind) + "'");
    auto pred = Predicate::lookup(name, query ? Layer::Derived : Layer::Base);
    if (!pred) fail("unknown predicate " + std::string(name) + "/" + std::to_string(arity));
    if (pred->arity() != arity) {
      fail("arity mismatch for " + std::string(name) + ": expected " + std::to_string(pred->arity()));
    }
    (query ? m.queries : m.dynamic).push_back(*pred);
  }
  return m;
}

DependencyGraph build_dependency_graph(const Program& program, const std::string& ruleset) {
  DependencyGraph g;
  const auto& rules = program.rules(ruleset);
  for (const auto& rule : rules) {
    DependencyGraph::RuleEdges e;
    if (auto* h = std::get_if<Literal>(&rule.head)) {
      e.heads.push_back(node_of(*h));
    } else {
      e.disjunctive = true;
      for (const auto& a : std::get<DisjunctiveHead>(rule.head).disjuncts) e.heads.push_back(positive(a.pred));
    }
    for (const auto& element : rule.body) {
      if (auto* lit = std::get_if<Literal>(&element)) {
        e.body.push_back(node_of(*lit));
      } else {
        ++e.builtins;
      }
    }
    if (e.disjunctive) {
      // Propagation over the derived disjunctions: reads both stores of
      // each disjunct, may assert a disjunct or an error.
      DependencyGraph::Implicit imp;
      imp.produces = e.heads;
      imp.produces.push_back(error_node());
      imp.reads = e.body;
      imp.needs = e.body;
      add_reads_of_disjuncts(e.heads, imp.reads);
      g.implicit.push_back(std::move(imp));
    }
    g.rules.push_back(std::move(e));
  }
  for (const auto& f : program.facts) g.fact_nodes.insert({f.atom.pred, f.polarity});
  for (const auto& d : program.disjunctions) {
    DependencyGraph::Implicit imp;
    for (const auto& a : d.disjuncts()) imp.produces.push_back(positive(a.pred));
    add_reads_of_disjuncts(imp.produces, imp.reads);
    imp.produces.push_back(error_node());
    g.implicit.push_back(std::move(imp));
  }
  for (const auto& pass : program.passes) {
    DependencyGraph::Implicit imp;
    if (pass.action == ConstraintPass::Action::ReportError) {
      imp.produces.push_back(error_node());
    } else {
      imp.produces.push_back(positive(Predicate(Vocab::IsIndividual, Layer::Base)));
      imp.produces.push_back(positive(Predicate(Vocab::HasPropertyWith, Layer::Base)));
      if (pass.value_class) imp.produces.push_back(positive(Predicate(Vocab::IsMemberOf, Layer::Base)));
    }
    imp.reads.push_back(positive(Predicate(Vocab::IsMemberOf, Layer::Derived)));
    imp.reads.push_back(positive(Predicate(Vocab::HasPropertyWith, Layer::Derived)));
    imp.needs.push_back(positive(Predicate(Vocab::IsMemberOf, Layer::Derived)));
    g.implicit.push_back(std::move(imp));
  }
  return g;
}

Reachability satisfiable_predicates(const Program& program, const std::string& ruleset, const Manifest& entry) {
  auto g = build_dependency_graph(program, ruleset);
  Reachability out;
  out.rules.assign(g.rules.size(), false);
  PredSet& sat = out.predicates;
  sat = g.fact_nodes;
  for (auto p : entry.dynamic) {
    sat.insert({p, Polarity::Positive});
    sat.insert({p, Polarity::Negative});
  }

  for (bool changed = true; changed;) {
    changed = false;
    auto add = [&](const PredNode& n) {
      if (sat.insert(n).second) changed = true;
    };
    for (size_t i = 0; i < g.rules.size(); ++i) {
      if (out.rules[i]) continue;
      const auto& e = g.rules[i];
      bool ok = std::all_of(e.body.begin(), e.body.end(), [&](const PredNode& n) { return contains(sat, n); });
      if (!ok && !e.disjunctive && !e.body.empty()) {
        // Only ever calls itself.
        ok = std::all_of(e.body.begin(), e.body.end(), [&](const PredNode& n) { return n.pred == e.heads.front().pred; });
      }
      if (!ok) continue;
      out.rules[i] = true;
      changed = true;
      for (const auto& h : e.heads) add(h);
    }
    for (size_t i = 0; i < g.implicit.size(); ++i) {
      const auto& req = g.implicit[i].needs;
      if (!std::all_of(req.begin(), req.end(), [&](const PredNode& n) { return contains(sat, n); })) continue;
      for (const auto& p : g.implicit[i].produces) add(p);
    }
  }
  return out;
}

Reachability testable_predicates(const Program& program, const std::string& ruleset, const Manifest& entry) {
  auto g = build_dependency_graph(program, ruleset);
  Reachability out;
  out.rules.assign(g.rules.size(), false);
  PredSet& test = out.predicates;
  for (auto p : entry.queries) {
    test.insert({p, Polarity::Positive});
    test.insert({p, Polarity::Negative});
  }
  for (auto p : entry.dynamic) {
    test.insert({p, Polarity::Positive});
    test.insert({p, Polarity::Negative});
  }
  for (bool changed = true; changed;) {
    changed = false;
    auto add = [&](const PredNode& n) {
      if (test.insert(n).second) changed = true;
    };
    for (size_t i = 0; i < g.rules.size(); ++i) {
      if (out.rules[i]) continue;
      const auto& e = g.rules[i];
      if (!std::any_of(e.heads.begin(), e.heads.end(), [&](const PredNode& n) { return contains(test, n); })) continue;
      out.rules[i] = true;
      changed = true;
      for (const auto& b : e.body) add(b);
    }
    for (const auto& imp : g.implicit) {
      if (!std::any_of(imp.produces.begin(), imp.produces.end(), [&](const PredNode& n) { return contains(test, n); })) {
        continue;
      }
      for (const auto& r : imp.reads) add(r);
    }
  }
  return out;
}

Program minimize(const Program& program, const Manifest& entry) {
  Program out = program;
  Manifest effective = entry;
  bool consistency = program.pragmas.consistency_check;
  if (consistency) effective.queries.push_back(Predicate(Vocab::Error, Layer::Derived));
  for (auto& [name, rules] : out.rulesets) {
    auto sat = satisfiable_predicates(program, name, effective);
    auto test = testable_predicates(program, name, effective);
    const auto& original = program.rules(name);
    std::vector<Rule> kept;
    for (size_t i = 0; i < original.size(); ++i) {
      const Rule& r = original[i];
      if (!consistency) {
        if (auto* h = std::get_if<Literal>(&r.head); h && h->atom.pred.vocab() == Vocab::Error) continue;
      }
      if (sat.rules[i] && test.rules[i]) kept.push_back(r);
    }
    rules = std::move(kept);
  }
  return out;
}

}  // namespace owlhorn
