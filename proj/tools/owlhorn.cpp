// Command-line front end over the compiler, engine and minimizer.
//
// Exit codes:
//   0  success
//   1  inconsistencies found (check, or compile --strict)
//   2  malformed input: syntax, safety, bad pattern, unknown predicate, usage
//   3  unsupported OWL construct
//   4  unknown rule set
//   5  fact cap exceeded
//   6  file or KB format error

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "owlhorn/compiler.hpp"
#include "owlhorn/kb_file.hpp"
#include "owlhorn/minimizer.hpp"

using namespace owlhorn;

namespace {

enum Exit { kOk = 0, kInconsistent = 1, kMalformed = 2, kUnsupported = 3, kUnknownRuleSet = 4, kCapacity = 5, kIo = 6 };

struct Failure {
  int code;
  std::string message;
};

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::optional<Dialect> dialect_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto d = parse_dialect(text);
  if (!d) throw Failure{kMalformed, "unknown dialect '" + text + "'"};
  return d;
}

std::vector<SourceFile> read_all(const std::vector<std::string>& paths, std::optional<Dialect> dialect) {
  std::vector<SourceFile> out;
  for (const auto& p : paths) {
    try {
      out.push_back(read_source(p, dialect));
    } catch (const std::runtime_error& e) {
      throw Failure{kIo, e.what()};
    }
  }
  return out;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* what) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw Failure{kMalformed, std::string("expected name=value for ") + what};
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Prints diagnostics; throws on errors, syntax before unsupported.
void report(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << (d.severity == Severity::Error ? "error: " : "") << d.to_string() << "\n";
  }
  if (!has_errors(diags)) return;
  bool malformed = has_errors(diags, DiagnosticKind::Syntax) || has_errors(diags, DiagnosticKind::Semantic) ||
                   has_errors(diags, DiagnosticKind::Safety);
  if (malformed) throw Failure{kMalformed, "compilation failed"};
  throw Failure{kUnsupported, "unsupported construct"};
}

struct SourceFlags {
  std::vector<std::string> inputs;
  std::string dialect;
  std::vector<std::string> pragmas;
  std::vector<std::string> rulesets;

  void add_to(CLI::App* app) {
    app->add_option("inputs", inputs, "Source files (.owl, .swrl, .ruleml, .pl)")->required();
    app->add_option("--dialect", dialect, "Force the input dialect: owl, swrl, ruleml, native");
    app->add_option("--pragma", pragmas, "Override a pragma, name=value");
    app->add_option("--ruleset", rulesets, "Rule-set variant, name=file[,file...]");
  }

  CompileResult compile() const {
    auto d = dialect_flag(dialect);
    CompileOptions options;
    for (const auto& p : pragmas) options.pragmas.push_back(split_assignment(p, "--pragma"));
    for (const auto& r : rulesets) {
      auto [name, files] = split_assignment(r, "--ruleset");
      auto sources = read_all(split_list(files), d);
      auto& into = options.variants[name];
      into.insert(into.end(), sources.begin(), sources.end());
    }
    auto result = compile_program(read_all(inputs, d), options);
    report(result.diagnostics);
    return result;
  }
};

std::unique_ptr<KnowledgeBase> open_kb(const std::string& path, size_t fact_cap) {
  MaterializeOptions options;
  options.fact_cap = fact_cap;
  try {
    return load_kb(path, options);
  } catch (const KbFormatError& e) {
    throw Failure{kIo, path + ": " + e.what()};
  } catch (const std::runtime_error& e) {
    throw Failure{kIo, e.what()};
  }
}

void write_kb(const KnowledgeBase& kb, const std::string& path) {
  try {
    save_kb(kb, path);
  } catch (const std::runtime_error& e) {
    throw Failure{kIo, e.what()};
  }
}

Literal parse_pattern(const std::string& text) {
  try {
    return parse_query(text);
  } catch (const ParseError& e) {
    throw Failure{kMalformed, e.what()};
  }
}

GroundLiteral parse_fact(const std::string& text) {
  try {
    return parse_ground_literal(text, false);
  } catch (const ParseError& e) {
    throw Failure{kMalformed, e.what()};
  }
}

void print_counts(const std::string& name, const FactStore& store, size_t rules) {
  std::cout << name << ": " << store.positive_count() << " positive, " << store.negative_count() << " negative, "
            << store.disjunctions().size() << " disjunctions, " << rules << " rules\n";
}

Manifest read_manifest(const std::string& path) {
  try {
    auto source = read_source(path);
    return parse_manifest(source.text);
  } catch (const ParseError& e) {
    throw Failure{kMalformed, path + ": " + e.what()};
  } catch (const std::runtime_error& e) {
    throw Failure{kIo, e.what()};
  }
}

size_t rule_total(const Program& p) {
  size_t n = 0;
  for (const auto& [name, rules] : p.rulesets) n += rules.size();
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile OWL, SWRL and RuleML into a materialized Horn knowledge base and query it."};
  app.require_subcommand(1);
  size_t fact_cap = MaterializeOptions{}.fact_cap;
  app.add_option("--fact-cap", fact_cap, "Largest number of facts a materialization may reach");

  // compile
  auto* compile = app.add_subcommand("compile", "Compile sources into a knowledge base file");
  SourceFlags compile_sources;
  compile_sources.add_to(compile);
  std::string output = "kb.json";
  bool minimize_flag = false, strict = false;
  std::string manifest_path;
  compile->add_option("-o,--output", output, "Knowledge base file to write");
  compile->add_flag("--minimize", minimize_flag, "Drop rules that are not both satisfiable and testable");
  compile->add_option("--manifest", manifest_path, "Entry predicates for --minimize");
  compile->add_flag("--strict", strict, "Exit 1 when the active store is inconsistent");

  // query / truth
  std::string kb_path, text;
  auto* query_cmd = app.add_subcommand("query", "Print the bindings of a pattern, sorted");
  query_cmd->add_option("kb", kb_path, "Knowledge base file")->required();
  query_cmd->add_option("pattern", text, "Atom with variables, e.g. 'isMemberOf(X, convoy)'")->required();
  auto* truth_cmd = app.add_subcommand("truth", "Print TRUE, FALSE, UNKNOWN or INCONSISTENT");
  truth_cmd->add_option("kb", kb_path, "Knowledge base file")->required();
  truth_cmd->add_option("atom", text, "Ground atom")->required();

  // assert / retract / swap / check
  auto* assert_cmd = app.add_subcommand("assert", "Add a Base-layer fact");
  assert_cmd->add_option("kb", kb_path, "Knowledge base file")->required();
  assert_cmd->add_option("fact", text, "Ground Base-layer literal")->required();
  auto* retract_cmd = app.add_subcommand("retract", "Remove a fact and rematerialize");
  retract_cmd->add_option("kb", kb_path, "Knowledge base file")->required();
  retract_cmd->add_option("fact", text, "Ground literal")->required();
  auto* swap_cmd = app.add_subcommand("swap", "Make another compiled rule set active");
  swap_cmd->add_option("kb", kb_path, "Knowledge base file")->required();
  swap_cmd->add_option("ruleset", text, "Rule-set name")->required();
  auto* check_cmd = app.add_subcommand("check", "List inconsistencies of the active store");
  check_cmd->add_option("kb", kb_path, "Knowledge base file")->required();

  // minimize
  auto* minimize_cmd = app.add_subcommand("minimize", "Report which rules the manifest makes necessary");
  SourceFlags minimize_sources;
  minimize_sources.add_to(minimize_cmd);
  std::string minimize_manifest;
  bool verbose = false;
  minimize_cmd->add_option("--manifest", minimize_manifest, "Entry predicates")->required();
  minimize_cmd->add_flag("-v,--verbose", verbose, "List dropped rules");

  // emit-prolog
  auto* emit_cmd = app.add_subcommand("emit-prolog", "Print the program as logic-program text");
  std::vector<std::string> emit_inputs;
  std::string emit_dialect, emit_ruleset;
  bool system_rules = false;
  emit_cmd->add_option("inputs", emit_inputs, "A knowledge base file, or source files")->required();
  emit_cmd->add_option("--dialect", emit_dialect, "Force the input dialect");
  emit_cmd->add_option("--ruleset", emit_ruleset, "Rule set to print (default: the active one)");
  emit_cmd->add_flag("--system-rules", system_rules, "Print general and cardinality rules as clauses");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  MaterializeOptions mopts;
  mopts.fact_cap = fact_cap;

  try {
    if (*compile) {
      Timer timer;
      auto result = compile_sources.compile();
      Program program = std::move(result.program);
      if (minimize_flag) {
        if (manifest_path.empty()) throw Failure{kMalformed, "--minimize needs --manifest"};
        size_t before = rule_total(program);
        program = minimize(program, read_manifest(manifest_path));
        std::cout << "minimized: " << before << " -> " << rule_total(program) << " rules\n";
      }
      KnowledgeBase kb(std::move(program), mopts);
      for (const auto& name : kb.rulesets()) print_counts(name, *kb.snapshot(name), kb.program().rules(name).size());
      {
        KbLock lock(output, true);
        write_kb(kb, output);
      }
      std::cout << "wrote " << output << " in " << format_ms(timer.ms()) << "\n";
      if (strict && !kb.check_consistency().empty()) {
        std::cerr << "inconsistent; run 'check' for details\n";
        return kInconsistent;
      }
      return kOk;
    }

    if (*query_cmd || *truth_cmd) {
      std::unique_ptr<KnowledgeBase> kb;
      {
        KbLock lock(kb_path, false);
        kb = open_kb(kb_path, fact_cap);
      }
      if (*query_cmd) {
        Literal pattern = parse_pattern(text);
        for (const auto& line : kb->query(pattern).lines()) std::cout << line << "\n";
        return kOk;
      }
      GroundLiteral lit = parse_fact(text);
      if (lit.negative()) throw Failure{kMalformed, "truth takes an atom; logicNot is checked automatically"};
      GroundAtom atom = lit.atom;
      atom.pred = atom.pred.derived();
      auto value = kb->truth_value(atom);
      std::string word(to_string(value));
      for (auto& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      std::cout << word << "\n";
      return kOk;
    }

    if (*assert_cmd || *retract_cmd || *swap_cmd) {
      KbLock lock(kb_path, true);
      auto kb = open_kb(kb_path, fact_cap);
      Timer timer;
      if (*swap_cmd) {
        try {
          kb->swap(text);
        } catch (const UnknownRuleSet& e) {
          throw Failure{kUnknownRuleSet, e.what()};
        }
        write_kb(*kb, kb_path);
        std::cout << "active rule set: " << text << "\n";
        return kOk;
      }
      GroundLiteral fact = parse_fact(text);
      ChangeResult change;
      try {
        change = *assert_cmd ? kb->assert_fact(fact) : kb->retract_fact(fact);
      } catch (const std::invalid_argument& e) {
        throw Failure{kMalformed, e.what()};
      }
      if (!change.warning.empty()) std::cerr << "warning: " << change.warning << "\n";
      if (change.changed) write_kb(*kb, kb_path);
      std::cout << (*assert_cmd ? "asserted" : "retracted") << " " << fact.to_string() << ": "
                << (change.delta >= 0 ? "+" : "") << change.delta << " facts in " << format_ms(timer.ms()) << "\n";
      return kOk;
    }

    if (*check_cmd) {
      std::unique_ptr<KnowledgeBase> kb;
      {
        KbLock lock(kb_path, false);
        kb = open_kb(kb_path, fact_cap);
      }
      auto found = kb->check_consistency();
      for (const auto& inc : found) {
        std::cout << to_string(inc.kind) << ": " << inc.error_fact.to_string();
        if (!inc.provenance.empty()) {
          std::cout << "  via";
          for (const auto& p : inc.provenance) std::cout << " " << p;
        }
        std::cout << "\n";
      }
      if (found.empty()) {
        std::cout << "consistent\n";
        return kOk;
      }
      return kInconsistent;
    }

    if (*minimize_cmd) {
      auto result = minimize_sources.compile();
      auto manifest = read_manifest(minimize_manifest);
      Program minimized = minimize(result.program, manifest);
      for (const auto& [name, rules] : result.program.rulesets) {
        const auto& kept = minimized.rules(name);
        std::cout << name << ": " << rules.size() << " -> " << kept.size() << " rules\n";
        if (!verbose) continue;
        for (const auto& r : rules) {
          bool present = std::any_of(kept.begin(), kept.end(), [&](const Rule& k) { return k.id == r.id && k.same_clause(r); });
          if (!present) std::cout << "  dropped " << r.id << ": " << r.to_string() << "\n";
        }
      }
      return kOk;
    }

    if (*emit_cmd) {
      EmitOptions options;
      options.system_rules = system_rules;
      Program program;
      bool from_kb = false;
      if (emit_inputs.size() == 1) {
        auto source = read_all(emit_inputs, std::nullopt).front();
        if (source.text.find("\"format\"") != std::string::npos && source.text.find(kKbFormat) != std::string::npos) {
          auto kb = open_kb(emit_inputs.front(), fact_cap);
          program = kb->program();
          program.facts = kb->current_facts();
          options.ruleset = kb->active();
          from_kb = true;
        }
      }
      if (!from_kb) {
        SourceFlags flags;
        flags.inputs = emit_inputs;
        flags.dialect = emit_dialect;
        program = flags.compile().program;
      }
      if (!emit_ruleset.empty()) {
        if (!program.rulesets.count(emit_ruleset)) {
          throw Failure{kUnknownRuleSet, "unknown rule set '" + emit_ruleset + "'"};
        }
        options.ruleset = emit_ruleset;
      }
      std::cout << emit_program(program, options);
      return kOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapacity;
  } catch (const UnknownRuleSet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownRuleSet;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
