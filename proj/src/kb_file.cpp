#include "owlhorn/kb_file.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "owlhorn/translator.hpp"

namespace owlhorn {
namespace {

using json = nlohmann::json;

std::string term_text(TermId t) { return terms::to_string(t); }

TermId parse_term(const std::string& text) {
  // A term reads back as the sole argument of a unary predicate.
  auto lit = parse_ground_literal("isclass(" + text + ")");
  return lit.atom.args[0];
}

json pragmas_json(const Pragmas& p) {
  return json{{"existential", std::string(to_string(p.existential))},
              {"max_card", std::string(to_string(p.max_card))},
              {"skolem_depth", p.skolem_depth_cap},
              {"consistency_check", p.consistency_check},
              {"cardinality_cap", p.cardinality_cap}};
}

Pragmas pragmas_from(const json& j) {
  Pragmas p;
  auto existential = parse_existential_strategy(j.at("existential").get<std::string>());
  auto max_card = parse_max_card_strategy(j.at("max_card").get<std::string>());
  if (!existential || !max_card) throw KbFormatError("bad pragma value");
  p.existential = *existential;
  p.max_card = *max_card;
  p.skolem_depth_cap = j.at("skolem_depth").get<unsigned>();
  p.consistency_check = j.at("consistency_check").get<bool>();
  p.cardinality_cap = j.at("cardinality_cap").get<unsigned>();
  return p;
}

json program_json(const Program& program) {
  json j;
  j["pragmas"] = pragmas_json(program.pragmas);
  // Fact order is kept: it is the order materialization inserts them.
  json facts = json::array();
  for (const auto& f : program.facts) facts.push_back(f.to_string());
  j["facts"] = facts;
  json disjunctions = json::array();
  for (const auto& d : program.disjunctions) disjunctions.push_back(d.to_string());
  j["disjunctions"] = disjunctions;
  json rulesets = json::object();
  for (const auto& [name, rules] : program.rulesets) {
    json list = json::array();
    for (const auto& r : rules) {
      list.push_back(json{{"id", r.id}, {"origin", std::string(to_string(r.origin))}, {"text", r.to_string()}});
    }
    rulesets[name] = list;
  }
  j["rulesets"] = rulesets;
  json passes = json::array();
  for (const auto& p : program.passes) {
    json e{{"action", p.action == ConstraintPass::Action::AssertFresh ? "assert-fresh" : "report-error"},
           {"id", p.id},
           {"class", term_text(p.cls)},
           {"property", term_text(p.property)},
           {"min", p.min_count},
           {"message", p.message}};
    if (p.value_class) e["value_class"] = term_text(*p.value_class);
    passes.push_back(e);
  }
  j["passes"] = passes;
  return j;
}

Program program_from(const json& j) {
  Program program;
  program.pragmas = pragmas_from(j.at("pragmas"));
  for (const auto& f : j.at("facts")) program.facts.push_back(parse_ground_literal(f.get<std::string>()));
  for (const auto& d : j.at("disjunctions")) program.disjunctions.push_back(parse_disjunction(d.get<std::string>()));
  program.rulesets.clear();
  for (const auto& [name, list] : j.at("rulesets").items()) {
    auto& rules = program.rulesets[name];
    for (const auto& r : list) {
      auto origin = parse_rule_origin(r.at("origin").get<std::string>());
      if (!origin) throw KbFormatError("bad rule origin");
      rules.push_back(rule_from_text(r.at("text").get<std::string>(), r.at("id").get<std::string>(), *origin));
    }
  }
  if (!program.rulesets.count(kDefaultRuleSet)) throw KbFormatError("no default rule set");
  for (const auto& p : j.at("passes")) {
    ConstraintPass pass;
    auto action = p.at("action").get<std::string>();
    if (action != "assert-fresh" && action != "report-error") throw KbFormatError("bad pass action " + action);
    pass.action = action == "assert-fresh" ? ConstraintPass::Action::AssertFresh : ConstraintPass::Action::ReportError;
    pass.id = p.at("id").get<std::string>();
    pass.cls = parse_term(p.at("class").get<std::string>());
    pass.property = parse_term(p.at("property").get<std::string>());
    pass.min_count = p.at("min").get<unsigned>();
    pass.message = p.at("message").get<std::string>();
    if (p.contains("value_class")) pass.value_class = parse_term(p.at("value_class").get<std::string>());
    program.passes.push_back(std::move(pass));
  }
  return program;
}

json sorted_pairs(std::vector<std::pair<std::string, std::string>> entries) {
  std::sort(entries.begin(), entries.end());
  json out = json::array();
  for (auto& [text, by] : entries) out.push_back(json::array({text, by}));
  return out;
}

json store_json(const FactStore& store, const std::vector<Rule>& rules) {
  json j;
  for (auto pol : {Polarity::Positive, Polarity::Negative}) {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& lit : store.literals(pol)) entries.emplace_back(lit.to_string(), source_name(store.source_of(lit), rules));
    j[pol == Polarity::Positive ? "positives" : "negatives"] = sorted_pairs(std::move(entries));
  }
  std::vector<std::pair<std::string, std::string>> entries;
  for (uint32_t i = 0; i < store.disjunctions().size(); ++i) {
    entries.emplace_back(store.disjunctions()[i].to_string(), source_name(store.disjunction_source(i), rules));
  }
  j["disjunctions"] = sorted_pairs(std::move(entries));
  return j;
}

uint32_t source_from(const std::string& name, const std::unordered_map<std::string, uint32_t>& ids) {
  if (name == "propagation") return kSourcePropagation;
  if (name == "pass") return kSourcePass;
  if (auto it = ids.find(name); it != ids.end()) return it->second;
  if (name.starts_with("rule#")) return static_cast<uint32_t>(std::stoul(name.substr(5)));
  return kSourceBase;
}

FactStore store_from(const json& j, const std::vector<Rule>& rules) {
  std::unordered_map<std::string, uint32_t> ids;
  for (uint32_t i = 0; i < rules.size(); ++i) {
    if (!rules[i].id.empty()) ids.emplace(rules[i].id, i);
  }
  FactStore store;
  for (const char* key : {"positives", "negatives"}) {
    for (const auto& e : j.at(key)) {
      store.add(parse_ground_literal(e.at(0).get<std::string>()), source_from(e.at(1).get<std::string>(), ids));
    }
  }
  for (const auto& e : j.at("disjunctions")) {
    store.add_disjunction(parse_disjunction(e.at(0).get<std::string>()), source_from(e.at(1).get<std::string>(), ids));
  }
  return store;
}

}  // namespace

Disjunction parse_disjunction(std::string_view text) {
  ParseOptions options;
  options.file = "<disjunction>";
  options.allow_reserved = true;
  auto parsed = parse(std::string(text) + ".", Dialect::Native, options);
  if (parsed.ok() && parsed.rules.size() == 1) {
    auto t = translate_rule(parsed.rules.front());
    if (t.disjunctions.size() == 1) return t.disjunctions.front();
  }
  throw ParseError("not a ground disjunction: " + std::string(text));
}

std::string serialize_program(const Program& program) { return program_json(program).dump(1) + "\n"; }

Program deserialize_program(std::string_view text) {
  try {
    return program_from(json::parse(text));
  } catch (const json::exception& e) {
    throw KbFormatError(e.what());
  } catch (const ParseError& e) {
    throw KbFormatError(e.what());
  }
}

std::string serialize_kb(const KnowledgeBase& kb) {
  json j;
  j["format"] = std::string(kKbFormat);
  j["version"] = kKbVersion;
  j["program"] = program_json(kb.program());
  j["active"] = kb.active();
  json journal = json::array();
  for (const auto& e : kb.journal()) {
    journal.push_back(json{{"op", e.op == JournalEntry::Op::Assert ? "assert" : "retract"}, {"fact", e.fact.to_string()}});
  }
  j["journal"] = journal;
  json stores = json::object();
  for (const auto& name : kb.rulesets()) stores[name] = store_json(*kb.snapshot(name), kb.program().rules(name));
  j["stores"] = stores;
  return j.dump(1) + "\n";
}

std::unique_ptr<KnowledgeBase> deserialize_kb(std::string_view text, MaterializeOptions options) {
  try {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != kKbFormat) throw KbFormatError("not a knowledge base file");
    if (j.at("version").get<int>() != kKbVersion) {
      throw KbFormatError("unsupported version " + std::to_string(j.at("version").get<int>()));
    }
    Program program = program_from(j.at("program"));
    std::vector<JournalEntry> journal;
    for (const auto& e : j.at("journal")) {
      auto op = e.at("op").get<std::string>();
      if (op != "assert" && op != "retract") throw KbFormatError("bad journal op " + op);
      journal.push_back({op == "assert" ? JournalEntry::Op::Assert : JournalEntry::Op::Retract,
                         parse_ground_literal(e.at("fact").get<std::string>())});
    }
    std::map<std::string, FactStore> stores;
    for (const auto& [name, s] : j.at("stores").items()) {
      if (!program.rulesets.count(name)) throw KbFormatError("store for unknown rule set " + name);
      stores.emplace(name, store_from(s, program.rules(name)));
    }
    return std::make_unique<KnowledgeBase>(std::move(program), std::move(journal), j.at("active").get<std::string>(),
                                           std::move(stores), options);
  } catch (const json::exception& e) {
    throw KbFormatError(e.what());
  } catch (const ParseError& e) {
    throw KbFormatError(e.what());
  } catch (const UnknownRuleSet& e) {
    throw KbFormatError(e.what());
  }
}

void save_kb(const KnowledgeBase& kb, const std::string& path) {
  std::string text = serialize_kb(kb);
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw std::runtime_error("cannot write " + tmp + ": " + std::strerror(errno));
  size_t done = 0;
  while (done < text.size()) {
    ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      int err = errno;
      ::close(fd);
      ::unlink(tmp.c_str());
      throw std::runtime_error("cannot write " + tmp + ": " + std::strerror(err));
    }
    done += static_cast<size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    throw std::runtime_error("cannot flush " + tmp);
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    int err = errno;
    ::unlink(tmp.c_str());
    throw std::runtime_error("cannot replace " + path + ": " + std::strerror(err));
  }
}

std::unique_ptr<KnowledgeBase> load_kb(const std::string& path, MaterializeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize_kb(text.str(), options);
}

KbLock::KbLock(const std::string& path, bool exclusive) {
  std::string lock_path = path + ".lock";
  fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) throw std::runtime_error("cannot open " + lock_path + ": " + std::strerror(errno));
  while (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
    if (errno != EINTR) {
      int err = errno;
      ::close(fd_);
      throw std::runtime_error("cannot lock " + lock_path + ": " + std::strerror(err));
    }
  }
}

KbLock::~KbLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace owlhorn
