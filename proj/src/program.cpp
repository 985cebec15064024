#include "owlhorn/program.hpp"

#include <algorithm>
#include <charconv>

namespace owlhorn {

std::string_view to_string(ExistentialStrategy s) {
  switch (s) {
    case ExistentialStrategy::Error:
      return "error";
    case ExistentialStrategy::Skolemize:
      return "skolemize";
    case ExistentialStrategy::AssertFresh:
      return "assert-fresh";
  }
  return "skolemize";
}

std::string_view to_string(MaxCardStrategy s) { return s == MaxCardStrategy::Error ? "error" : "merge"; }

std::optional<ExistentialStrategy> parse_existential_strategy(std::string_view text) {
  if (text == "error") return ExistentialStrategy::Error;
  if (text == "skolemize") return ExistentialStrategy::Skolemize;
  if (text == "assert-fresh" || text == "assert_fresh") return ExistentialStrategy::AssertFresh;
  return std::nullopt;
}

std::optional<MaxCardStrategy> parse_max_card_strategy(std::string_view text) {
  if (text == "error") return MaxCardStrategy::Error;
  if (text == "merge") return MaxCardStrategy::Merge;
  return std::nullopt;
}

namespace {

std::optional<unsigned> parse_unsigned(std::string_view text) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

}  // namespace

bool Pragmas::set(std::string_view name, std::string_view value) {
  if (name == "existential") {
    auto s = parse_existential_strategy(value);
    if (!s) return false;
    existential = *s;
    return true;
  }
  if (name == "max_card" || name == "max-card") {
    auto s = parse_max_card_strategy(value);
    if (!s) return false;
    max_card = *s;
    return true;
  }
  if (name == "skolem_depth" || name == "skolem-depth") {
    auto v = parse_unsigned(value);
    if (!v) return false;
    skolem_depth_cap = *v;
    return true;
  }
  if (name == "cardinality_cap" || name == "cardinality-cap") {
    auto v = parse_unsigned(value);
    if (!v) return false;
    cardinality_cap = *v;
    return true;
  }
  if (name == "consistency_check" || name == "consistency-check") {
    if (value == "on" || value == "true") {
      consistency_check = true;
    } else if (value == "off" || value == "false") {
      consistency_check = false;
    } else {
      return false;
    }
    return true;
  }
  return false;
}

const std::vector<Rule>& Program::rules(const std::string& ruleset) const {
  auto it = rulesets.find(ruleset);
  if (it == rulesets.end()) throw UnknownRuleSet("unknown rule set '" + ruleset + "'");
  return it->second;
}

std::vector<Rule>& Program::rules(const std::string& ruleset) {
  auto it = rulesets.find(ruleset);
  if (it == rulesets.end()) throw UnknownRuleSet("unknown rule set '" + ruleset + "'");
  return it->second;
}

bool Program::add_fact(const GroundLiteral& fact) {
  if (std::find(facts.begin(), facts.end(), fact) != facts.end()) return false;
  facts.push_back(fact);
  return true;
}

bool Program::add_disjunction(const Disjunction& d) {
  if (std::find(disjunctions.begin(), disjunctions.end(), d) != disjunctions.end()) return false;
  disjunctions.push_back(d);
  return true;
}

bool Program::add_rule(Rule rule, const std::string& ruleset) {
  auto& set = rulesets[ruleset];
  for (const auto& r : set) {
    if (r.same_clause(rule)) return false;
  }
  set.push_back(std::move(rule));
  return true;
}

Declarations Program::declarations() const {
  Declarations d;
  for (const auto& f : facts) {
    if (f.negative()) continue;
    auto name = terms::to_string(f.atom.args[0]);
    switch (f.atom.pred.vocab()) {
      case Vocab::IsClass:
        d.classes.insert(name);
        break;
      case Vocab::IsIndividual:
        d.individuals.insert(name);
        break;
      case Vocab::IsProperty:
        d.properties.insert(name);
        break;
      case Vocab::IsDatatype:
        d.datatypes.insert(name);
        break;
      default:
        break;
    }
  }
  return d;
}

namespace {

void collect_constants(TermId id, std::set<std::string>& out) {
  switch (terms::kind(id)) {
    case TermKind::Constant:
      if (!terms::is_number(id)) out.insert(terms::to_string(id));
      break;
    case TermKind::List:
      for (auto a : terms::args(id)) collect_constants(a, out);
      break;
    default:
      break;
  }
}

}  // namespace

std::vector<Diagnostic> check_declarations(const Program& program) {
  auto decls = program.declarations();
  std::set<std::string> used;
  for (const auto& f : program.facts) {
    if (f.atom.pred.vocab() == Vocab::Error) continue;
    for (size_t i = 0; i < f.atom.arity(); ++i) {
      if (arg_role(f.atom.pred.vocab(), i) == ArgRole::None && f.atom.pred.arity() != 1) continue;
      collect_constants(f.atom.args[i], used);
    }
  }
  std::vector<Diagnostic> out;
  for (const auto& name : used) {
    int categories = decls.classes.count(name) + decls.individuals.count(name) + decls.properties.count(name) +
                     decls.datatypes.count(name);
    if (categories == 1) continue;
    Diagnostic d;
    d.severity = Severity::Warning;
    d.kind = DiagnosticKind::Semantic;
    d.message = categories == 0 ? "constant '" + name + "' is not declared"
                                : "constant '" + name + "' is declared in " + std::to_string(categories) +
                                      " categories";
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace owlhorn
