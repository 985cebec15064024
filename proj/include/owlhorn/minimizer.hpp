#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owlhorn/program.hpp"

namespace owlhorn {

// A predicate at one layer and polarity; logicNot(p) facts live apart from p.
struct PredNode {
  Predicate pred;
  Polarity pol = Polarity::Positive;

  std::string to_string() const;
  friend bool operator==(const PredNode&, const PredNode&) = default;
  friend bool operator<(const PredNode& a, const PredNode& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.pol < b.pol;
  }
};

using PredSet = std::set<PredNode>;

// Deployment manifest: `query p/n` and `dynamic p/n` lines, `#` comments.
struct Manifest {
  std::vector<Predicate> queries;
  std::vector<Predicate> dynamic;
};

// Throws ParseError naming the line.
Manifest parse_manifest(std::string_view text);

// Body-to-head edges, one entry per rule. Guards and member/2 are builtins
// and contribute no predicate node.
struct DependencyGraph {
  struct RuleEdges {
    // The head atom, or every disjunct of a disjunctive head.
    std::vector<PredNode> heads;
    std::vector<PredNode> body;
    size_t builtins = 0;
    bool disjunctive = false;
  };
  std::vector<RuleEdges> rules;
  // Nodes the engine can fill without a rule: facts, disjunction
  // propagation and constraint passes, each with the nodes it reads.
  struct Implicit {
    std::vector<PredNode> produces;
    std::vector<PredNode> reads;
    // Must all be satisfiable before anything is produced.
    std::vector<PredNode> needs;
  };
  std::vector<Implicit> implicit;
  PredSet fact_nodes;
};

DependencyGraph build_dependency_graph(const Program& program, const std::string& ruleset = kDefaultRuleSet);

struct Reachability {
  PredSet predicates;
  // Indexed like the rule set.
  std::vector<bool> rules;
};

// Least fixpoint: fact predicates and dynamic predicates, rules whose every
// body predicate is satisfiable (or is the head predicate itself), their
// heads, and what propagation and passes can add.
Reachability satisfiable_predicates(const Program& program, const std::string& ruleset = kDefaultRuleSet,
                                    const Manifest& entry = {});

// Least fixpoint: entry predicates, then every body predicate of a rule with
// a testable head. Query entries cover both polarities.
Reachability testable_predicates(const Program& program, const std::string& ruleset, const Manifest& entry);

// Keeps only rules both satisfiable and testable in every rule set. With the
// consistency check on, error/1 counts as queried; with it off, rules
// concluding error/1 are dropped.
Program minimize(const Program& program, const Manifest& entry);

}  // namespace owlhorn
