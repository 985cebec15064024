#include "owlhorn/term.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace owlhorn {
namespace {

struct Entry {
  TermKind kind;
  Symbol name;
  std::vector<TermId> args;
  unsigned skolem_depth;
  bool number;
};

struct Key {
  TermKind kind;
  uint32_t name;
  std::vector<uint32_t> args;

  bool operator==(const Key&) const = default;
};

struct KeyHash {
  size_t operator()(const Key& k) const noexcept {
    size_t h = static_cast<size_t>(k.kind) * 0x9e3779b97f4a7c15ULL ^ k.name;
    for (auto a : k.args) h = (h ^ a) * 0x100000001b3ULL;
    return h;
  }
};

bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (dot || i + 1 == s.size()) return false;
      dot = true;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return true;
}

class TermTable {
 public:
  static TermTable& instance() {
    static TermTable table;
    return table;
  }

  TermId intern(TermKind kind, Symbol name, std::span<const TermId> args) {
    Key key{kind, name.id(), {}};
    key.args.reserve(args.size());
    for (auto a : args) key.args.push_back(a.value);
    {
      std::shared_lock lock(mutex_);
      auto it = ids_.find(key);
      if (it != ids_.end()) return TermId{it->second};
    }
    unsigned depth = 0;
    for (auto a : args) depth = std::max(depth, at(a).skolem_depth);
    bool reserved = kind == TermKind::Compound && is_reserved_functor(name.str(), args.size());
    if (reserved) ++depth;
    bool number = kind == TermKind::Constant && looks_numeric(name.str());

    std::unique_lock lock(mutex_);
    auto it = ids_.find(key);
    if (it != ids_.end()) return TermId{it->second};
    auto id = static_cast<uint32_t>(entries_.size());
    entries_.push_back(Entry{kind, name, {args.begin(), args.end()}, depth, number});
    ids_.emplace(std::move(key), id);
    return TermId{id};
  }

  Entry at(TermId id) {
    std::shared_lock lock(mutex_);
    return entries_.at(id.value);
  }

  template <typename F>
  auto with(TermId id, F&& f) {
    std::shared_lock lock(mutex_);
    return f(entries_.at(id.value));
  }

 private:
  TermTable() { entries_.push_back(Entry{TermKind::Constant, Symbol(), {}, 0, false}); }

  std::shared_mutex mutex_;
  std::deque<Entry> entries_;
  std::unordered_map<Key, uint32_t, KeyHash> ids_;
};

}  // namespace

bool is_reserved_functor(std::string_view name, size_t arity) {
  return (name == kUnnamedIndividual && arity == 3) || (name == kUnnamedClass && arity == 2);
}

std::string quote_constant(std::string_view name) {
  bool plain = !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') plain = false;
  }
  if (plain || looks_numeric(name)) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

namespace terms {

TermId constant(Symbol name) { return TermTable::instance().intern(TermKind::Constant, name, {}); }
TermId constant(std::string_view name) { return constant(Symbol::intern(name)); }

TermId compound(Symbol functor, std::span<const TermId> args) {
  return TermTable::instance().intern(TermKind::Compound, functor, args);
}

TermId list(std::span<const TermId> elements) {
  return TermTable::instance().intern(TermKind::List, Symbol(), elements);
}

TermKind kind(TermId id) {
  return TermTable::instance().with(id, [](const Entry& e) { return e.kind; });
}

Symbol name(TermId id) {
  return TermTable::instance().with(id, [](const Entry& e) { return e.name; });
}

std::vector<TermId> args(TermId id) {
  return TermTable::instance().with(id, [](const Entry& e) { return e.args; });
}

unsigned skolem_depth(TermId id) {
  return TermTable::instance().with(id, [](const Entry& e) { return e.skolem_depth; });
}

bool is_number(TermId id) {
  return TermTable::instance().with(id, [](const Entry& e) { return e.number; });
}

std::string to_string(TermId id) {
  Entry e = TermTable::instance().at(id);
  switch (e.kind) {
    case TermKind::Constant:
      return quote_constant(e.name.str());
    case TermKind::Compound: {
      std::string out = quote_constant(e.name.str()) + "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(e.args[i]);
      }
      return out + ")";
    }
    case TermKind::List: {
      std::string out = "[";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(e.args[i]);
      }
      return out + "]";
    }
    case TermKind::Variable:
      break;
  }
  return "?";
}

int compare(TermId a, TermId b) {
  if (a == b) return 0;
  Entry ea = TermTable::instance().at(a);
  Entry eb = TermTable::instance().at(b);
  if (ea.kind != eb.kind) return ea.kind < eb.kind ? -1 : 1;
  if (ea.kind != TermKind::List && ea.name != eb.name) {
    int c = ea.name.str().compare(eb.name.str());
    if (c) return c < 0 ? -1 : 1;
  }
  size_t n = std::min(ea.args.size(), eb.args.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = compare(ea.args[i], eb.args[i])) return c;
  }
  if (ea.args.size() != eb.args.size()) return ea.args.size() < eb.args.size() ? -1 : 1;
  return 0;
}

}  // namespace terms

Term Term::variable(std::string_view name) {
  Term t;
  t.kind_ = TermKind::Variable;
  t.name_ = Symbol::intern(name);
  return t;
}

Term Term::constant(std::string_view name) {
  Term t;
  t.kind_ = TermKind::Constant;
  t.name_ = Symbol::intern(name);
  return t;
}

Term Term::compound(std::string_view functor, std::vector<Term> args) {
  Term t;
  t.kind_ = TermKind::Compound;
  t.name_ = Symbol::intern(functor);
  t.args_ = std::move(args);
  return t;
}

Term Term::list(std::vector<Term> elements) {
  Term t;
  t.kind_ = TermKind::List;
  t.args_ = std::move(elements);
  return t;
}

Term Term::from_id(TermId id) {
  Entry e = TermTable::instance().at(id);
  Term t;
  t.kind_ = e.kind;
  t.name_ = e.name;
  for (auto a : e.args) t.args_.push_back(from_id(a));
  return t;
}

bool Term::is_ground() const {
  if (kind_ == TermKind::Variable) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.is_ground(); });
}

std::optional<TermId> Term::ground_id() const {
  switch (kind_) {
    case TermKind::Variable:
      return std::nullopt;
    case TermKind::Constant:
      return terms::constant(name_);
    case TermKind::Compound:
    case TermKind::List: {
      std::vector<TermId> ids;
      ids.reserve(args_.size());
      for (const auto& a : args_) {
        auto id = a.ground_id();
        if (!id) return std::nullopt;
        ids.push_back(*id);
      }
      return kind_ == TermKind::List ? terms::list(ids) : terms::compound(name_, ids);
    }
  }
  return std::nullopt;
}

void Term::collect_variables(std::vector<Symbol>& out) const {
  if (kind_ == TermKind::Variable) {
    if (std::find(out.begin(), out.end(), name_) == out.end()) out.push_back(name_);
    return;
  }
  for (const auto& a : args_) a.collect_variables(out);
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Variable:
      return std::string(name_.str());
    case TermKind::Constant:
      return quote_constant(name_.str());
    case TermKind::Compound:
    case TermKind::List: {
      std::string out = kind_ == TermKind::List ? "[" : quote_constant(name_.str()) + "(";
      for (size_t i = 0; i < args_.size(); ++i) {
        if (i) out += ", ";
        out += args_[i].to_string();
      }
      return out + (kind_ == TermKind::List ? "]" : ")");
    }
  }
  return "?";
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.name_ != b.name_) return a.name_.str() < b.name_.str();
  return a.args_ < b.args_;
}

}  // namespace owlhorn
