#include "owlhorn/axiom_rules.hpp"

#include <algorithm>
#include <stdexcept>

#include "owlhorn/ingest.hpp"
#include "owlhorn/translator.hpp"

namespace owlhorn {
namespace {

// Built-in rules are written in the native syntax so they read exactly as
// they are emitted.
Rule clause(std::string_view text, std::string id, RuleOrigin origin) {
  try {
    return rule_from_text(text, std::move(id), origin);
  } catch (const ParseError& e) {
    throw std::logic_error(std::string("bad built-in rule: ") + e.what());
  }
}

std::string variables(size_t arity) {
  static const char* names[] = {"A", "B", "C"};
  std::string out;
  for (size_t i = 0; i < arity; ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

std::string quote(std::string_view message) { return quote_constant(message); }

}  // namespace

std::vector<Rule> general_rules(const Pragmas& pragmas) {
  std::vector<Rule> out;
  auto add = [&](std::string id, std::string_view text) { out.push_back(clause(text, std::move(id), RuleOrigin::General)); };

  for (size_t i = 0; i < kVocabSize; ++i) {
    auto v = static_cast<Vocab>(i);
    if (v == Vocab::Error || v == Vocab::StrictSubClassOf) continue;
    Predicate base(v, Layer::Base);
    Predicate derived(v, Layer::Derived);
    std::string args = "(" + variables(base.arity()) + ")";
    std::string b = std::string(base.spelling()) + args;
    std::string d = std::string(derived.spelling()) + args;
    add("GR1." + std::string(base.spelling()), d + " :- " + b + ".");
    add("GR1." + std::string(base.spelling()) + ".neg", "logicNot(" + d + ") :- logicNot(" + b + ").");
  }

  add("GR2", "isSubClassOf(C, C) :- isClass(C).");

  add("GR3.lift", "isSubClassOf(C, D) :- is_sub_class_of_but_not_equal_to(C, D).");
  add("GR3.base", "is_sub_class_of_but_not_equal_to(C, D) :- issubclassof(C, D).");
  add("GR3.step",
      "is_sub_class_of_but_not_equal_to(C, E) :- isclass(C), isclass(E), C \\= E, issubclassof(C, D), "
      "is_sub_class_of_but_not_equal_to(D, E).");

  add("GR4", "isMemberOf(I, D) :- isSubClassOf(C, D), isMemberOf(I, C).");

  add("GR5.individual", "isIndividual(I) :- isMemberOf(I, C).");
  add("GR5.class", "isClass(C) :- isMemberOf(I, C).");

  add("GR6.disjoint", "disjointClasses(C, D) :- complementaryClasses(C, D).");
  add("GR6.exclude", "logicNot(isMemberOf(I, C)) :- disjointClasses(C, D), isMemberOf(I, D).");
  add("GR6.complete", "isMemberOf(I, C) :- complementaryClasses(C, D), logicNot(isMemberOf(I, D)).");
  add("GR6.disjoint_symmetry", "disjointClasses(D, C) :- disjointClasses(C, D).");
  add("GR6.complement_symmetry", "complementaryClasses(D, C) :- complementaryClasses(C, D).");

  add("GR7", "or(isMemberOf(I, C), isMemberOf(I, D)) :- complementaryClasses(C, D), isIndividual(I).");

  add("GR8.members", "isMemberOf(M, C) :- isSet(C, L), member(M, L).");
  add("GR8.closed", "orEach(M, L, I = M) :- isSet(C, L), isMemberOf(I, C).");

  add("GR9.symmetry", "equivalentIndividuals(J, I) :- equivalentIndividuals(I, J).");
  add("GR9.transitivity", "equivalentIndividuals(I, K) :- equivalentIndividuals(I, J), equivalentIndividuals(J, K).");
  add("GR9.member", "isMemberOf(J, C) :- equivalentIndividuals(I, J), isMemberOf(I, C).");
  add("GR9.not_member", "logicNot(isMemberOf(J, C)) :- equivalentIndividuals(I, J), logicNot(isMemberOf(I, C)).");
  add("GR9.subject", "hasPropertyWith(J, P, V) :- equivalentIndividuals(I, J), hasPropertyWith(I, P, V).");
  add("GR9.object", "hasPropertyWith(I, P, W) :- equivalentIndividuals(V, W), hasPropertyWith(I, P, V).");

  add("GR10.reflexive", "equivalentClasses(C, C) :- isClass(C).");
  add("GR10.symmetric", "equivalentClasses(D, C) :- equivalentClasses(C, D).");
  add("GR10.subclass", "issubclassof(C, D) :- equivalentClasses(C, D), C \\= D.");

  if (pragmas.existential == ExistentialStrategy::Skolemize) {
    add("GR11.property",
        "haspropertywith(I, P, unnamedIndividual(I, P, C2)) :- hasSomeValuesOfPropertyFrom(C1, P, C2), "
        "isMemberOf(I, C1).");
    add("GR11.member",
        "ismemberof(unnamedIndividual(I, P, C2), C2) :- hasSomeValuesOfPropertyFrom(C1, P, C2), isMemberOf(I, C1).");
  }

  add("GR12", "ismemberof(V, D) :- hasAllValuesOfPropertyFrom(C, P, D), isMemberOf(I, C), hasPropertyWith(I, P, V).");

  for (size_t i = 0; i < kVocabSize; ++i) {
    auto v = static_cast<Vocab>(i);
    if (v == Vocab::Error || v == Vocab::StrictSubClassOf) continue;
    Predicate derived(v, Layer::Derived);
    std::string atom = std::string(derived.spelling()) + "(" + variables(derived.arity()) + ")";
    add("GR13." + std::string(Predicate(v, Layer::Base).spelling()),
        "error([" + quote(kContradictionMessage) + ", " + atom + "]) :- " + atom + ", logicNot(" + atom + ").");
  }
  add("GR13.nothing",
      "error([" + quote(kEmptyClassMessage) + ", I]) :- isMemberOf(I, " + std::string(kNothing) + ").");

  add("GR14", "equivalentIndividuals(I, I) :- isIndividual(I).");
  return out;
}

CardinalityRules generate_cardinality_rules(const std::vector<GroundLiteral>& facts, const Pragmas& pragmas) {
  CardinalityRules out;
  auto add = [&](std::string id, const std::string& text) {
    out.rules.push_back(clause(text, std::move(id), RuleOrigin::Cardinality));
  };
  auto unsupported = [&](std::string message) {
    out.diagnostics.push_back(Diagnostic{Severity::Error, DiagnosticKind::Unsupported, {}, std::move(message)});
  };

  // Text order keeps generated ids and rule order stable across runs.
  std::vector<GroundAtom> constraints;
  for (const auto& f : facts) {
    if (f.negative() || f.atom.pred.layer() != Layer::Base) continue;
    switch (f.atom.pred.vocab()) {
      case Vocab::MinCardinality:
      case Vocab::MaxCardinality:
      case Vocab::ExactCardinality:
      case Vocab::HasSomeValuesOfPropertyFrom:
        constraints.push_back(f.atom);
        break;
      default:
        break;
    }
  }
  std::sort(constraints.begin(), constraints.end(), text_less);
  constraints.erase(std::unique(constraints.begin(), constraints.end()), constraints.end());

  for (const auto& c : constraints) {
    std::string cls = terms::to_string(c.args[0]);
    std::string prop = terms::to_string(c.args[1]);
    std::string tag = cls + "." + prop;
    Vocab v = c.pred.vocab();

    if (v == Vocab::HasSomeValuesOfPropertyFrom) {
      // Skolemization is carried by the general rules.
      if (pragmas.existential == ExistentialStrategy::Skolemize) continue;
      ConstraintPass pass;
      pass.action = pragmas.existential == ExistentialStrategy::AssertFresh ? ConstraintPass::Action::AssertFresh
                                                                            : ConstraintPass::Action::ReportError;
      pass.id = "SOME." + tag + "." + terms::to_string(c.args[2]);
      pass.cls = c.args[0];
      pass.property = c.args[1];
      pass.value_class = c.args[2];
      pass.min_count = 1;
      pass.message = std::string(kExistentialMessage);
      out.passes.push_back(std::move(pass));
      continue;
    }

    if (!terms::is_number(c.args[2])) {
      unsupported("cardinality bound of " + c.to_string() + " is not a number");
      continue;
    }
    auto bound_text = terms::to_string(c.args[2]);
    unsigned n = 0;
    try {
      n = static_cast<unsigned>(std::stoul(bound_text));
    } catch (const std::exception&) {
      unsupported("cardinality bound of " + c.to_string() + " is not a non-negative integer");
      continue;
    }
    bool max_part = v == Vocab::MaxCardinality || v == Vocab::ExactCardinality;
    bool min_part = (v == Vocab::MinCardinality || v == Vocab::ExactCardinality) && n > 0;
    std::string kind = v == Vocab::ExactCardinality ? "exact" : v == Vocab::MinCardinality ? "min" : "max";

    if (n > pragmas.cardinality_cap) {
      unsupported("unsupported cardinality " + bound_text + " in " + c.to_string() + ": bounds above " +
                  std::to_string(pragmas.cardinality_cap) + " are not supported");
      continue;
    }

    if (max_part) {
      std::string id = "CARD." + kind + "." + tag + ".max";
      if (n == 0) {
        add(id, "error([" + quote(kMaxCardinalityMessage) + ", I1]) :- isMemberOf(I1, " + cls + "), hasPropertyWith(I1, " +
                    prop + ", I2).");
      } else {
        // Values are I2 .. I(n+2), all pairwise distinct.
        std::vector<std::string> vals;
        for (unsigned i = 0; i <= n; ++i) vals.push_back("I" + std::to_string(i + 2));
        std::string body = "isMemberOf(I1, " + cls + ")";
        for (const auto& x : vals) body += ", hasPropertyWith(I1, " + prop + ", " + x + ")";
        std::vector<std::string> pairs;
        for (size_t i = 0; i < vals.size(); ++i) {
          for (size_t j = i + 1; j < vals.size(); ++j) {
            body += ", " + vals[i] + " \\= " + vals[j];
            pairs.push_back("equivalentindividuals(" + vals[i] + ", " + vals[j] + ")");
          }
        }
        std::string head;
        if (pragmas.max_card == MaxCardStrategy::Error) {
          head = "error([" + quote(kMaxCardinalityMessage) + ", I1])";
        } else if (pairs.size() == 1) {
          head = pairs.front();
        } else {
          head = pairs.back();
          for (size_t i = pairs.size() - 1; i-- > 0;) head = "or(" + pairs[i] + ", " + head + ")";
        }
        add(id, head + " :- " + body + ".");
      }
    }

    if (min_part) {
      std::string id = "CARD." + kind + "." + tag + ".min";
      switch (pragmas.existential) {
        case ExistentialStrategy::Skolemize: {
          if (n != 1) {
            unsupported("minimum cardinality " + bound_text + " in " + c.to_string() +
                        " cannot be skolemized; only 1 is supported under the skolemize strategy");
            break;
          }
          std::string sk = "unnamedIndividual(I, " + prop + ", " + std::string(kThing) + ")";
          add(id + ".property", "haspropertywith(I, " + prop + ", " + sk + ") :- isMemberOf(I, " + cls + ").");
          add(id + ".member", "ismemberof(" + sk + ", " + std::string(kThing) + ") :- isMemberOf(I, " + cls + ").");
          break;
        }
        case ExistentialStrategy::AssertFresh:
        case ExistentialStrategy::Error: {
          ConstraintPass pass;
          pass.action = pragmas.existential == ExistentialStrategy::AssertFresh ? ConstraintPass::Action::AssertFresh
                                                                                : ConstraintPass::Action::ReportError;
          pass.id = id;
          pass.cls = c.args[0];
          pass.property = c.args[1];
          pass.min_count = n;
          pass.message = std::string(kMinCardinalityMessage);
          out.passes.push_back(std::move(pass));
          break;
        }
      }
    }
  }
  return out;
}

std::string FreshConstants::next(std::string_view prefix) {
  std::lock_guard lock(mutex_);
  auto it = std::find_if(counters_.begin(), counters_.end(), [&](const auto& c) { return c.first == prefix; });
  if (it == counters_.end()) {
    counters_.emplace_back(std::string(prefix), 0);
    it = counters_.end() - 1;
  }
  while (true) {
    std::string candidate = std::string(prefix) + std::to_string(++it->second);
    if (!in_use_ || !in_use_(candidate)) return candidate;
  }
}

}  // namespace owlhorn
