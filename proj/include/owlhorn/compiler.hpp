#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "owlhorn/ingest.hpp"
#include "owlhorn/program.hpp"

namespace owlhorn {

struct SourceFile {
  std::string path;
  std::string text;
  // Sniffed from the path and text when empty.
  std::optional<Dialect> dialect;
};

// Throws std::runtime_error when the file cannot be read.
SourceFile read_source(const std::string& path, std::optional<Dialect> dialect = {});

struct CompileOptions {
  // Applied after the sources' pragma directives, in order.
  std::vector<std::pair<std::string, std::string>> pragmas;
  // Extra rule files per named variant; each variant gets the default rules
  // plus its own. Variant files may only contain rules.
  std::map<std::string, std::vector<SourceFile>> variants;
};

struct CompileResult {
  Program program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

// Parse, translate and assemble: facts deduplicated in first-seen order, the
// General Rules and generated cardinality rules ahead of user rules, user
// rule ids of the form file:line.
CompileResult compile_program(const std::vector<SourceFile>& inputs, const CompileOptions& options = {});

struct EmitOptions {
  std::string ruleset = kDefaultRuleSet;
  // General and cardinality rules as clauses instead of comments. Such text
  // does not reingest when a rule mentions a reserved skolem functor.
  bool system_rules = false;
};

// Native logic-program text: pragma directives, facts, disjunctions and user
// rules as clauses; system rules and constraint passes as `%` comments,
// since compiling the text regenerates them.
std::string emit_program(const Program& program, const EmitOptions& options = {});

}  // namespace owlhorn
