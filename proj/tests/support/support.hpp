#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "owlhorn/compiler.hpp"
#include "owlhorn/engine.hpp"
#include "owlhorn/fact_store.hpp"
#include "owlhorn/literal.hpp"
#include "owlhorn/minimizer.hpp"
#include "owlhorn/program.hpp"

namespace testing_support {

using owlhorn::FactStore;
using owlhorn::Program;

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);

// Compiles fixture files (names relative to the fixture directory). Throws
// std::runtime_error carrying the diagnostics when compilation fails.
Program compile_fixtures(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& pragmas = {},
                         const std::map<std::string, std::vector<std::string>>& variants = {});
Program compile_text(const std::string& text, const std::vector<std::pair<std::string, std::string>>& pragmas = {});
// Facts, disjunctions and rules exactly as written, without system rules.
Program translate_only(const std::string& text);

// Sorted text of every stored literal and disjunction, one entry each.
std::vector<std::string> dump(const FactStore& store);
std::set<std::string> positives(const FactStore& store, owlhorn::Layer layer);

owlhorn::GroundLiteral lit(const std::string& text);
owlhorn::GroundAtom atom(const std::string& text);

// Random program text over a small vocabulary slice. Every rule is safe.
struct GenOptions {
  unsigned max_facts = 50;
  unsigned max_rules = 15;
  unsigned max_constants = 10;
  // Allows Derived-layer predicates in facts (user-only programs).
  bool derived_facts = false;
  // Allows or-heads, isset lists, restrictions and cardinality facts, which
  // only mean something together with the system rules.
  bool system_constructs = false;
};

struct RandomProgram {
  std::string text;
  std::vector<std::pair<std::string, std::string>> pragmas;
};

RandomProgram random_program(std::mt19937& rng, const GenOptions& options);

// Random manifest over the predicates a random program can mention.
owlhorn::Manifest random_manifest(std::mt19937& rng);
// Ground Base facts over the manifest's dynamic predicates.
std::vector<owlhorn::GroundLiteral> random_dynamic_facts(std::mt19937& rng, const owlhorn::Manifest& manifest,
                                                         unsigned constants);

// Reference fixpoint for programs of plain literal/guard rules: every
// variable assignment over the active domain, rounds applied Jacobi-style,
// disjunction propagation against the store as it stood at round start.
struct OracleStore {
  std::set<owlhorn::GroundLiteral> literals;
  std::set<owlhorn::Disjunction> disjunctions;
  std::vector<std::string> dump() const;
};

OracleStore oracle_materialize(const Program& program);

// Transitive-reflexive closure by depth-first search from each node.
std::set<std::pair<std::string, std::string>> closure_pairs(
    const std::vector<std::pair<std::string, std::string>>& edges);

}  // namespace testing_support
