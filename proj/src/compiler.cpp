#include "owlhorn/compiler.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "owlhorn/axiom_rules.hpp"
#include "owlhorn/translator.hpp"

namespace owlhorn {
namespace {

struct LiteralHash {
  size_t operator()(const GroundLiteral& l) const noexcept {
    return GroundAtomHash()(l.atom) * 2 + static_cast<size_t>(l.polarity);
  }
};

struct Collected {
  std::vector<GroundLiteral> facts;
  std::vector<Disjunction> disjunctions;
  std::vector<Rule> rules;
};

class Assembler {
 public:
  explicit Assembler(CompileResult& out) : out_(out) {}

  // Parses one file and appends what it contributes to `into`.
  void ingest(const SourceFile& file, Collected& into) {
    Dialect dialect = file.dialect ? *file.dialect : sniff_dialect(file.path, file.text);
    ParseOptions options;
    options.file = file.path;
    auto parsed = parse(file.text, dialect, options);
    append(parsed.diagnostics);
    for (const auto& [name, value] : parsed.pragmas) {
      if (!out_.program.pragmas.set(name, value)) {
        error(DiagnosticKind::Semantic, {file.path, 0}, "bad pragma " + name + " = " + value);
      }
    }
    for (const auto& a : parsed.axioms) {
      auto facts = translate_axiom(a);
      into.facts.insert(into.facts.end(), facts.begin(), facts.end());
    }
    for (const auto& source : parsed.rules) {
      auto t = translate_rule(source);
      append(t.diagnostics);
      into.facts.insert(into.facts.end(), t.facts.begin(), t.facts.end());
      into.disjunctions.insert(into.disjunctions.end(), t.disjunctions.begin(), t.disjunctions.end());
      std::string base_id = source.location.to_string();
      for (size_t i = 0; i < t.rules.size(); ++i) {
        std::string id = base_id;
        if (!used_ids_.insert(id).second) {
          for (unsigned n = 2;; ++n) {
            id = base_id + "." + std::to_string(n);
            if (used_ids_.insert(id).second) break;
          }
        }
        t.rules[i].id = std::move(id);
        into.rules.push_back(std::move(t.rules[i]));
      }
    }
  }

  void error(DiagnosticKind kind, SourceLocation where, std::string message) {
    out_.diagnostics.push_back(Diagnostic{Severity::Error, kind, std::move(where), std::move(message)});
  }

  void append(const std::vector<Diagnostic>& diags) {
    out_.diagnostics.insert(out_.diagnostics.end(), diags.begin(), diags.end());
  }

 private:
  CompileResult& out_;
  std::set<std::string> used_ids_;
};

}  // namespace

SourceFile read_source(const std::string& path, std::optional<Dialect> dialect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return SourceFile{path, text.str(), dialect};
}

CompileResult compile_program(const std::vector<SourceFile>& inputs, const CompileOptions& options) {
  CompileResult out;
  Assembler assembler(out);
  Collected main;
  for (const auto& file : inputs) assembler.ingest(file, main);

  for (const auto& [name, value] : options.pragmas) {
    if (!out.program.pragmas.set(name, value)) {
      assembler.error(DiagnosticKind::Semantic, {"<command line>", 0}, "bad pragma " + name + " = " + value);
    }
  }

  Program& program = out.program;
  std::unordered_set<GroundLiteral, LiteralHash> seen;
  for (const auto& f : main.facts) {
    if (seen.insert(f).second) program.facts.push_back(f);
  }
  std::set<Disjunction> seen_disjunctions;
  for (const auto& d : main.disjunctions) {
    if (seen_disjunctions.insert(d).second) program.disjunctions.push_back(d);
  }

  auto cardinality = generate_cardinality_rules(program.facts, program.pragmas);
  assembler.append(cardinality.diagnostics);
  program.passes = cardinality.passes;

  auto& rules = program.rules(kDefaultRuleSet);
  rules = general_rules(program.pragmas);
  rules.insert(rules.end(), cardinality.rules.begin(), cardinality.rules.end());
  for (auto& r : main.rules) program.add_rule(std::move(r));

  for (const auto& [name, files] : options.variants) {
    if (name == kDefaultRuleSet) {
      assembler.error(DiagnosticKind::Semantic, {"<command line>", 0}, "rule set name '" + name + "' is reserved");
      continue;
    }
    Collected extra;
    for (const auto& file : files) assembler.ingest(file, extra);
    if (!extra.facts.empty() || !extra.disjunctions.empty()) {
      assembler.error(DiagnosticKind::Semantic, {files.empty() ? std::string() : files.front().path, 0},
                      "rule set '" + name + "' files may only contain rules");
    }
    program.rulesets[name] = program.rules(kDefaultRuleSet);
    for (auto& r : extra.rules) program.add_rule(std::move(r), name);
  }

  assembler.append(check_declarations(program));
  return out;
}

std::string emit_program(const Program& program, const EmitOptions& options) {
  std::ostringstream out;
  const Pragmas& p = program.pragmas;
  std::string existential(to_string(p.existential));
  std::replace(existential.begin(), existential.end(), '-', '_');
  out << ":- pragma(existential, " << existential << ").\n";
  out << ":- pragma(max_card, " << to_string(p.max_card) << ").\n";
  out << ":- pragma(skolem_depth, " << p.skolem_depth_cap << ").\n";
  out << ":- pragma(cardinality_cap, " << p.cardinality_cap << ").\n";
  out << ":- pragma(consistency_check, " << (p.consistency_check ? "on" : "off") << ").\n";
  for (const auto& f : program.facts) out << f.to_string() << ".\n";
  for (const auto& d : program.disjunctions) out << d.to_string() << ".\n";
  std::vector<const Rule*> system;
  for (const auto& r : program.rules(options.ruleset)) {
    if (r.origin == RuleOrigin::User) {
      out << r.to_string() << "\n";
    } else {
      system.push_back(&r);
    }
  }
  if (!system.empty()) out << "% system rules, regenerated on compile\n";
  for (const auto* r : system) {
    if (options.system_rules) {
      out << r->to_string() << "\n";
    } else {
      out << "% " << r->id << ": " << r->to_string() << "\n";
    }
  }
  for (const auto& pass : program.passes) {
    out << "% pass " << pass.id << ": "
        << (pass.action == ConstraintPass::Action::AssertFresh ? "assert-fresh" : "report-error") << " unless each "
        << terms::to_string(pass.cls) << " has " << pass.min_count << " " << terms::to_string(pass.property);
    if (pass.value_class) out << " in " << terms::to_string(*pass.value_class);
    out << "\n";
  }
  return out.str();
}

}  // namespace owlhorn
