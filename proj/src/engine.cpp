#include "owlhorn/engine.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "owlhorn/axiom_rules.hpp"

namespace owlhorn {
namespace {

// A rule term with variables replaced by slot numbers.
struct Pat {
  enum class Kind : uint8_t { Var, Const, Compound, List };
  Kind kind = Kind::Const;
  uint32_t var = 0;
  TermId value;
  Symbol functor;
  std::vector<Pat> args;

  void collect(std::vector<uint32_t>& out) const {
    if (kind == Kind::Var) out.push_back(var);
    for (const auto& a : args) a.collect(out);
  }
};

class VarTable {
 public:
  uint32_t index(Symbol name) {
    auto [it, fresh] = slots_.try_emplace(name.id(), static_cast<uint32_t>(slots_.size()));
    return it->second;
  }
  uint32_t size() const { return static_cast<uint32_t>(slots_.size()); }

 private:
  std::unordered_map<uint32_t, uint32_t> slots_;
};

Pat compile_term(const Term& t, VarTable& vars) {
  Pat p;
  if (t.is_variable()) {
    p.kind = Pat::Kind::Var;
    p.var = vars.index(t.name());
    return p;
  }
  if (auto id = t.ground_id()) {
    p.value = *id;
    return p;
  }
  p.kind = t.kind() == TermKind::List ? Pat::Kind::List : Pat::Kind::Compound;
  p.functor = t.name();
  for (const auto& a : t.args()) p.args.push_back(compile_term(a, vars));
  return p;
}

struct Bindings {
  std::vector<TermId> values;
  std::vector<uint32_t> trail;

  size_t mark() const { return trail.size(); }
  void undo(size_t mark) {
    while (trail.size() > mark) {
      values[trail.back()] = TermId{};
      trail.pop_back();
    }
  }
};

bool unify(const Pat& p, TermId t, Bindings& b) {
  switch (p.kind) {
    case Pat::Kind::Var: {
      TermId& slot = b.values[p.var];
      if (slot.valid()) return slot == t;
      slot = t;
      b.trail.push_back(p.var);
      return true;
    }
    case Pat::Kind::Const:
      return p.value == t;
    case Pat::Kind::Compound:
    case Pat::Kind::List: {
      auto k = terms::kind(t);
      if (k != (p.kind == Pat::Kind::List ? TermKind::List : TermKind::Compound)) return false;
      if (k == TermKind::Compound && terms::name(t) != p.functor) return false;
      auto args = terms::args(t);
      if (args.size() != p.args.size()) return false;
      for (size_t i = 0; i < args.size(); ++i) {
        if (!unify(p.args[i], args[i], b)) return false;
      }
      return true;
    }
  }
  return false;
}

// Invalid TermId when a variable is unbound.
TermId build(const Pat& p, const Bindings& b) {
  switch (p.kind) {
    case Pat::Kind::Var:
      return b.values[p.var];
    case Pat::Kind::Const:
      return p.value;
    case Pat::Kind::Compound:
    case Pat::Kind::List: {
      std::vector<TermId> args;
      args.reserve(p.args.size());
      for (const auto& a : p.args) {
        TermId v = build(a, b);
        if (!v.valid()) return TermId{};
        args.push_back(v);
      }
      return p.kind == Pat::Kind::List ? terms::list(args) : terms::compound(p.functor, args);
    }
  }
  return TermId{};
}

struct CLiteral {
  Predicate pred;
  Polarity pol;
  uint8_t arity;
  std::array<Pat, kMaxArity> args;
};

struct CGuard {
  Guard::Kind kind;
  Pat lhs, rhs;
};

struct CMember {
  Pat element, list;
};

struct Step {
  enum class Kind : uint8_t { Literal, Guard, Member };
  Kind kind;
  uint32_t index;
};

struct CHead {
  Predicate pred;
  std::array<Pat, kMaxArity> args;
};

constexpr size_t kNoDelta = std::numeric_limits<size_t>::max();

struct CRule {
  uint32_t index = 0;
  uint32_t num_vars = 0;
  std::vector<CLiteral> literals;
  std::vector<CGuard> guards;
  std::vector<CMember> members;
  std::vector<Step> written;

  bool disjunctive = false;
  Polarity head_pol = Polarity::Positive;
  std::vector<CHead> heads;
  bool has_each = false;
  Pat each_element, each_list;

  // plans[i] starts with literal i; used when it reads the delta.
  std::vector<std::vector<Step>> plans;
};

std::vector<uint32_t> vars_of(const Pat& p) {
  std::vector<uint32_t> out;
  p.collect(out);
  return out;
}

// Delta literal first, then guards and members as soon as they can run,
// then the literal with the most bound arguments (written order on ties).
std::vector<Step> plan_from(const CRule& r, size_t first) {
  std::vector<Step> plan;
  std::vector<bool> bound(r.num_vars, false);
  std::vector<bool> lit_done(r.literals.size(), false), guard_done(r.guards.size(), false),
      member_done(r.members.size(), false);
  auto all_bound = [&](const Pat& p) {
    for (auto v : vars_of(p)) {
      if (!bound[v]) return false;
    }
    return true;
  };
  auto bind = [&](const Pat& p) {
    for (auto v : vars_of(p)) bound[v] = true;
  };
  auto take_literal = [&](size_t i) {
    lit_done[i] = true;
    plan.push_back({Step::Kind::Literal, static_cast<uint32_t>(i)});
    for (size_t a = 0; a < r.literals[i].arity; ++a) bind(r.literals[i].args[a]);
  };
  auto place_builtins = [&] {
    for (bool progress = true; progress;) {
      progress = false;
      for (size_t g = 0; g < r.guards.size(); ++g) {
        if (!guard_done[g] && all_bound(r.guards[g].lhs) && all_bound(r.guards[g].rhs)) {
          guard_done[g] = true;
          plan.push_back({Step::Kind::Guard, static_cast<uint32_t>(g)});
        }
      }
      for (size_t m = 0; m < r.members.size(); ++m) {
        if (!member_done[m] && all_bound(r.members[m].list)) {
          member_done[m] = true;
          plan.push_back({Step::Kind::Member, static_cast<uint32_t>(m)});
          bind(r.members[m].element);
          progress = true;
        }
      }
    }
  };

  if (first != kNoDelta) take_literal(first);
  place_builtins();
  for (;;) {
    size_t best = kNoDelta;
    int best_score = -1;
    for (size_t i = 0; i < r.literals.size(); ++i) {
      if (lit_done[i]) continue;
      int score = 0;
      for (size_t a = 0; a < r.literals[i].arity; ++a) score += all_bound(r.literals[i].args[a]) ? 1 : 0;
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best == kNoDelta) break;
    take_literal(best);
    place_builtins();
  }
  // Left over only for unsafe rules; they then never match.
  for (size_t g = 0; g < r.guards.size(); ++g) {
    if (!guard_done[g]) plan.push_back({Step::Kind::Guard, static_cast<uint32_t>(g)});
  }
  for (size_t m = 0; m < r.members.size(); ++m) {
    if (!member_done[m]) plan.push_back({Step::Kind::Member, static_cast<uint32_t>(m)});
  }
  return plan;
}

CRule compile_rule(const Rule& rule, uint32_t index) {
  CRule r;
  r.index = index;
  VarTable vars;
  for (const auto& element : rule.body) {
    if (auto* lit = std::get_if<Literal>(&element)) {
      CLiteral c{lit->atom.pred, lit->polarity, lit->atom.pred.arity(), {}};
      for (size_t i = 0; i < lit->atom.args.size() && i < kMaxArity; ++i) c.args[i] = compile_term(lit->atom.args[i], vars);
      r.written.push_back({Step::Kind::Literal, static_cast<uint32_t>(r.literals.size())});
      r.literals.push_back(std::move(c));
    } else if (auto* g = std::get_if<Guard>(&element)) {
      r.written.push_back({Step::Kind::Guard, static_cast<uint32_t>(r.guards.size())});
      r.guards.push_back({g->kind, compile_term(g->lhs, vars), compile_term(g->rhs, vars)});
    } else {
      const auto& m = std::get<ListMember>(element);
      r.written.push_back({Step::Kind::Member, static_cast<uint32_t>(r.members.size())});
      r.members.push_back({compile_term(m.element, vars), compile_term(m.list, vars)});
    }
  }
  auto compile_head = [&](const Atom& a) {
    CHead h{a.pred, {}};
    for (size_t i = 0; i < a.args.size() && i < kMaxArity; ++i) h.args[i] = compile_term(a.args[i], vars);
    return h;
  };
  if (auto* h = std::get_if<Literal>(&rule.head)) {
    r.head_pol = h->polarity;
    r.heads.push_back(compile_head(h->atom));
  } else {
    const auto& d = std::get<DisjunctiveHead>(rule.head);
    r.disjunctive = true;
    if (d.each) {
      r.has_each = true;
      r.each_list = compile_term(d.each->list, vars);
      r.each_element = compile_term(d.each->element, vars);
    }
    for (const auto& a : d.disjuncts) r.heads.push_back(compile_head(a));
  }
  r.num_vars = vars.size();
  for (size_t i = 0; i < r.literals.size(); ++i) r.plans.push_back(plan_from(r, i));
  return r;
}

Predicate error_predicate() { return Predicate(Vocab::Error, Layer::Derived); }

GroundLiteral error_fact(std::string_view message, TermId witness) {
  std::array<TermId, 2> items{terms::constant(message), witness};
  return {Polarity::Positive, GroundAtom::make(error_predicate(), {terms::list(items)})};
}

const Relation& relation_at(const FactStore& store, size_t slot) {
  return store.relation(Predicate::from_index(slot / 2), static_cast<Polarity>(slot % 2));
}

// Outcome of checking one disjunction against the store.
std::optional<GroundLiteral> propagation_of(const FactStore& store, const Disjunction& d) {
  const GroundAtom* open = nullptr;
  size_t open_count = 0;
  for (const auto& a : d.disjuncts()) {
    GroundAtom derived = a;
    derived.pred = a.pred.derived();
    if (store.contains(Polarity::Positive, derived)) return std::nullopt;
    if (!store.contains(Polarity::Negative, derived)) {
      open = &a;
      ++open_count;
    }
  }
  if (open_count == 1) return GroundLiteral{Polarity::Positive, *open};
  if (open_count == 0) return error_fact(kEmptyDisjunctionMessage, d.as_term());
  return std::nullopt;
}

void collect_constants(TermId t, std::unordered_set<uint32_t>& out) {
  auto k = terms::kind(t);
  if (k == TermKind::Constant) {
    out.insert(terms::name(t).id());
    return;
  }
  for (auto a : terms::args(t)) collect_constants(a, out);
}

class Evaluator {
 public:
  Evaluator(FactStore& store, const Program& program, const std::vector<Rule>& rules, const MaterializeOptions& options,
            MaterializeStats* stats, bool naive)
      : store_(store),
        program_(program),
        rules_(rules),
        options_(options),
        stats_(stats),
        naive_(naive),
        fresh_([this](std::string_view name) { return in_use(name); }) {
    compiled_.reserve(rules.size());
    for (size_t i = 0; i < rules.size(); ++i) compiled_.push_back(compile_rule(rules[i], static_cast<uint32_t>(i)));
    per_rule_.assign(rules.size(), 0);
    lo_.assign(FactStore::kSlots, 0);
    hi_.assign(FactStore::kSlots, 0);
    for (const auto& f : program.facts) {
      for (size_t i = 0; i < f.atom.arity(); ++i) collect_constants(f.atom.args[i], program_constants_);
    }
  }

  void load() {
    for (const auto& f : program_.facts) store_.add(f, kSourceBase);
    for (const auto& d : program_.disjunctions) add_disjunction(d, kSourceBase);
  }

  void run() {
    saturate();
    for (unsigned i = 0; i < options_.pass_iteration_cap && !program_.passes.empty(); ++i) {
      if (apply_passes() == 0) break;
      if (stats_) ++stats_->pass_iterations;
      saturate();
    }
    finish();
  }

  void extend(const std::vector<GroundLiteral>& facts, const std::vector<Disjunction>& disjunctions) {
    for (size_t s = 0; s < FactStore::kSlots; ++s) lo_[s] = relation_at(store_, s).size();
    first_round_ = false;
    for (const auto& f : facts) store_.add(f, kSourceBase);
    for (const auto& d : disjunctions) add_disjunction(d, kSourceBase);
    check_cap();
    saturate();
    finish();
  }

 private:
  void add_disjunction(const Disjunction& d, uint32_t source) {
    auto [index, fresh] = store_.add_disjunction(d, source);
    if (fresh) pending_.push_back(index);
  }

  void saturate() {
    if (naive_) {
      while (naive_round()) {
      }
    } else {
      while (semi_naive_round()) {
      }
    }
  }

  bool semi_naive_round() {
    bool delta = false;
    for (size_t s = 0; s < FactStore::kSlots; ++s) {
      hi_[s] = relation_at(store_, s).size();
      delta = delta || lo_[s] < hi_[s];
    }
    if (!delta && pending_.empty() && !first_round_) return false;

    if (first_round_) {
      // Rules without body literals have no delta to wait for.
      for (const auto& r : compiled_) {
        if (r.literals.empty()) execute(r, plan_from(r, kNoDelta), kNoDelta);
      }
      first_round_ = false;
    }
    for (const auto& r : compiled_) {
      for (size_t i = 0; i < r.literals.size(); ++i) {
        size_t s = FactStore::slot(r.literals[i].pred, r.literals[i].pol);
        if (lo_[s] < hi_[s]) execute(r, r.plans[i], i);
      }
    }

    std::vector<uint32_t> dirty = pending_;
    for (size_t s = 0; s < FactStore::kSlots; ++s) {
      Predicate p = Predicate::from_index(s / 2);
      if (p.layer() != Layer::Derived || lo_[s] == hi_[s]) continue;
      const Relation& rel = relation_at(store_, s);
      for (uint32_t row = lo_[s]; row < hi_[s]; ++row) {
        GroundAtom a{p, rel.row(row)};
        auto watching = store_.disjunctions_watching(a);
        dirty.insert(dirty.end(), watching.begin(), watching.end());
      }
    }
    std::sort(dirty.begin(), dirty.end());
    dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
    for (auto index : dirty) propagate(store_.disjunctions()[index]);

    lo_ = hi_;
    pending_.clear();
    flush();
    record_round();
    return true;
  }

  bool naive_round() {
    for (size_t s = 0; s < FactStore::kSlots; ++s) hi_[s] = relation_at(store_, s).size();
    for (const auto& r : compiled_) execute(r, r.written, kNoDelta);
    for (const auto& d : store_.disjunctions()) propagate(d);
    pending_.clear();
    size_t added = flush();
    record_round();
    return added > 0 || !pending_.empty();
  }

  void propagate(const Disjunction& d) {
    if (auto lit = propagation_of(store_, d); lit && !store_.contains(*lit)) {
      facts_.emplace_back(*lit, kSourcePropagation);
    }
  }

  std::pair<uint32_t, uint32_t> range(const CLiteral& lit, size_t position, size_t delta) const {
    size_t s = FactStore::slot(lit.pred, lit.pol);
    if (delta == kNoDelta) return {0, hi_[s]};
    if (position == delta) return {lo_[s], hi_[s]};
    if (position < delta) return {0, lo_[s]};
    return {0, hi_[s]};
  }

  void execute(const CRule& r, const std::vector<Step>& plan, size_t delta) {
    bindings_.values.assign(r.num_vars, TermId{});
    bindings_.trail.clear();
    step(r, plan, 0, delta);
  }

  void step(const CRule& r, const std::vector<Step>& plan, size_t k, size_t delta) {
    if (k == plan.size()) {
      emit(r);
      return;
    }
    const Step& s = plan[k];
    switch (s.kind) {
      case Step::Kind::Literal:
        match_literal(r, plan, k, delta);
        return;
      case Step::Kind::Guard: {
        const auto& g = r.guards[s.index];
        TermId lhs = build(g.lhs, bindings_), rhs = build(g.rhs, bindings_);
        if (!lhs.valid() || !rhs.valid()) return;
        if ((lhs == rhs) == (g.kind == Guard::Kind::Equal)) step(r, plan, k + 1, delta);
        return;
      }
      case Step::Kind::Member: {
        const auto& m = r.members[s.index];
        TermId list = build(m.list, bindings_);
        if (!list.valid() || terms::kind(list) != TermKind::List) return;
        for (auto element : terms::args(list)) {
          size_t mark = bindings_.mark();
          if (unify(m.element, element, bindings_)) step(r, plan, k + 1, delta);
          bindings_.undo(mark);
        }
        return;
      }
    }
  }

  void match_literal(const CRule& r, const std::vector<Step>& plan, size_t k, size_t delta) {
    uint32_t position = plan[k].index;
    const CLiteral& lit = r.literals[position];
    auto [from, to] = range(lit, position, delta);
    if (from >= to) return;
    const Relation& rel = store_.relation(lit.pred, lit.pol);

    auto try_row = [&](uint32_t row) {
      const Tuple& t = rel.row(row);
      size_t mark = bindings_.mark();
      bool ok = true;
      for (size_t i = 0; i < lit.arity && ok; ++i) ok = unify(lit.args[i], t[i], bindings_);
      if (ok) step(r, plan, k + 1, delta);
      bindings_.undo(mark);
    };

    if (naive_) {
      for (uint32_t row = from; row < to; ++row) try_row(row);
      return;
    }

    Tuple key{};
    bool all_bound = true;
    size_t best_pos = kMaxArity;
    size_t best_count = std::numeric_limits<size_t>::max();
    for (size_t i = 0; i < lit.arity; ++i) {
      const Pat& p = lit.args[i];
      TermId v = p.kind == Pat::Kind::Const ? p.value
                 : p.kind == Pat::Kind::Var ? bindings_.values[p.var]
                                            : TermId{};
      if (!v.valid()) {
        all_bound = false;
        continue;
      }
      key[i] = v;
      size_t n = rel.rows_with(i, v).size();
      if (n < best_count) {
        best_count = n;
        best_pos = i;
      }
    }
    if (all_bound) {
      uint32_t row = rel.find(key);
      if (row >= from && row < to) step(r, plan, k + 1, delta);
      return;
    }
    if (best_pos == kMaxArity) {
      for (uint32_t row = from; row < to; ++row) try_row(row);
      return;
    }
    auto rows = rel.rows_with(best_pos, key[best_pos]);
    for (auto it = std::lower_bound(rows.begin(), rows.end(), from); it != rows.end() && *it < to; ++it) try_row(*it);
  }

  bool too_deep(TermId t) const { return terms::skolem_depth(t) > program_.pragmas.skolem_depth_cap; }

  bool build_atom(const CHead& h, GroundAtom& out) {
    out.pred = h.pred;
    out.args = Tuple{};
    for (size_t i = 0; i < h.pred.arity(); ++i) {
      TermId v = build(h.args[i], bindings_);
      if (!v.valid() || too_deep(v)) return false;
      out.args[i] = v;
    }
    return true;
  }

  void emit(const CRule& r) {
    if (stats_) ++stats_->rule_instances;
    if (!r.disjunctive) {
      GroundLiteral lit{r.head_pol, {}};
      if (!build_atom(r.heads.front(), lit.atom)) return;
      if (!store_.contains(lit)) facts_.emplace_back(lit, r.index);
    } else {
      std::vector<GroundAtom> atoms;
      auto build_all = [&] {
        for (const auto& h : r.heads) {
          GroundAtom a;
          if (!build_atom(h, a)) return false;
          atoms.push_back(a);
        }
        return true;
      };
      if (r.has_each) {
        TermId list = build(r.each_list, bindings_);
        if (!list.valid() || terms::kind(list) != TermKind::List) return;
        for (auto element : terms::args(list)) {
          size_t mark = bindings_.mark();
          bool ok = unify(r.each_element, element, bindings_) && build_all();
          bindings_.undo(mark);
          if (!ok) return;
        }
        if (atoms.empty()) {
          auto lit = error_fact(kEmptyDisjunctionMessage, list);
          if (!store_.contains(lit)) facts_.emplace_back(lit, r.index);
          return;
        }
      } else if (!build_all()) {
        return;
      }
      disjunctions_.emplace_back(make_disjunction(std::move(atoms)), r.index);
    }
    if (facts_.size() + disjunctions_.size() > 4 * options_.fact_cap + 1024) throw_capacity();
  }

  size_t flush() {
    size_t added = 0;
    for (const auto& [lit, source] : facts_) {
      if (store_.add(lit, source)) {
        ++added;
        if (source < per_rule_.size()) ++per_rule_[source];
      }
    }
    facts_.clear();
    for (const auto& [d, source] : disjunctions_) add_disjunction(d, source);
    disjunctions_.clear();
    check_cap();
    return added;
  }

  void check_cap() {
    if (store_.positive_count() + store_.negative_count() > options_.fact_cap) throw_capacity();
  }

  [[noreturn]] void throw_capacity() {
    std::string id;
    if (!per_rule_.empty()) {
      auto it = std::max_element(per_rule_.begin(), per_rule_.end());
      id = source_name(static_cast<uint32_t>(it - per_rule_.begin()), rules_);
    }
    throw CapacityError("fact cap of " + std::to_string(options_.fact_cap) + " exceeded; most productive rule: " + id,
                        id);
  }

  void record_round() {
    if (!stats_) return;
    ++stats_->rounds;
    stats_->round_sizes.push_back(
        {store_.positive_count(), store_.negative_count(), store_.relation(error_predicate(), Polarity::Positive).size()});
  }

  void finish() {
    if (!stats_) return;
    for (size_t i = 0; i < per_rule_.size(); ++i) {
      if (per_rule_[i]) stats_->facts_by_rule[source_name(static_cast<uint32_t>(i), rules_)] += per_rule_[i];
    }
    std::fill(per_rule_.begin(), per_rule_.end(), 0);
  }

  bool in_use(std::string_view name) const {
    Symbol s = Symbol::find(name);
    if (!s.valid()) return false;
    if (program_constants_.count(s.id())) return true;
    TermId c = terms::constant(s);
    for (size_t slot = 0; slot < FactStore::kSlots; ++slot) {
      const Relation& rel = relation_at(store_, slot);
      for (size_t pos = 0; pos < rel.arity(); ++pos) {
        if (rel.mentions(pos, c)) return true;
      }
    }
    return false;
  }

  size_t apply_passes() {
    Predicate member(Vocab::IsMemberOf, Layer::Derived), has(Vocab::HasPropertyWith, Layer::Derived);
    const Relation& members = store_.relation(member, Polarity::Positive);
    const Relation& values = store_.relation(has, Polarity::Positive);
    std::vector<GroundLiteral> additions;
    for (const auto& pass : program_.passes) {
      std::vector<TermId> individuals;
      for (auto row : members.rows_with(1, pass.cls)) individuals.push_back(members.row(row)[0]);
      std::sort(individuals.begin(), individuals.end(), [](TermId a, TermId b) { return terms::compare(a, b) < 0; });
      individuals.erase(std::unique(individuals.begin(), individuals.end()), individuals.end());
      for (auto i : individuals) {
        std::set<uint32_t> distinct;
        for (auto row : values.rows_with(0, i)) {
          const Tuple& t = values.row(row);
          if (t[1] != pass.property) continue;
          if (pass.value_class &&
              !store_.contains(Polarity::Positive, GroundAtom::make(member, {t[2], *pass.value_class}))) {
            continue;
          }
          distinct.insert(t[2].value);
        }
        if (distinct.size() >= pass.min_count) continue;
        if (pass.action == ConstraintPass::Action::ReportError) {
          additions.push_back(error_fact(pass.message, i));
          continue;
        }
        for (size_t n = distinct.size(); n < pass.min_count; ++n) {
          TermId fresh = terms::constant(fresh_.next("newIndividual"));
          auto base = [](Vocab v, std::initializer_list<TermId> args) {
            return GroundLiteral{Polarity::Positive, GroundAtom::make(Predicate(v, Layer::Base), args)};
          };
          additions.push_back(base(Vocab::IsIndividual, {fresh}));
          additions.push_back(base(Vocab::HasPropertyWith, {i, pass.property, fresh}));
          if (pass.value_class) additions.push_back(base(Vocab::IsMemberOf, {fresh, *pass.value_class}));
        }
      }
    }
    size_t added = 0;
    for (const auto& lit : additions) added += store_.add(lit, kSourcePass) ? 1 : 0;
    check_cap();
    return added;
  }

  FactStore& store_;
  const Program& program_;
  const std::vector<Rule>& rules_;
  MaterializeOptions options_;
  MaterializeStats* stats_;
  bool naive_;
  FreshConstants fresh_;
  std::vector<CRule> compiled_;
  std::vector<uint64_t> per_rule_;
  std::vector<uint32_t> lo_, hi_;
  std::vector<uint32_t> pending_;
  bool first_round_ = true;
  Bindings bindings_;
  std::vector<std::pair<GroundLiteral, uint32_t>> facts_;
  std::vector<std::pair<Disjunction, uint32_t>> disjunctions_;
  std::unordered_set<uint32_t> program_constants_;
};

FactStore run(const Program& program, const std::string& ruleset, const MaterializeOptions& options,
              MaterializeStats* stats, bool naive) {
  const auto& rules = program.rules(ruleset);
  FactStore store;
  Evaluator ev(store, program, rules, options, stats, naive);
  ev.load();
  ev.run();
  return store;
}

Inconsistency::Kind kind_of(std::string_view message) {
  using K = Inconsistency::Kind;
  if (message == kContradictionMessage) return K::Contradiction;
  if (message == kEmptyClassMessage) return K::EmptyClassMember;
  if (message == kEmptyDisjunctionMessage) return K::EmptyDisjunction;
  if (message == kMaxCardinalityMessage) return K::MaxCardinality;
  if (message == kMinCardinalityMessage) return K::MinCardinality;
  if (message == kExistentialMessage) return K::Existential;
  return K::Other;
}

// The atom a reified witness term stands for, if it names a predicate.
std::optional<GroundAtom> atom_of(TermId t) {
  if (terms::kind(t) != TermKind::Compound) return std::nullopt;
  auto pred = Predicate::lookup(terms::name(t).str(), Layer::Derived);
  auto args = terms::args(t);
  if (!pred || pred->arity() != args.size()) return std::nullopt;
  GroundAtom a;
  a.pred = *pred;
  std::copy(args.begin(), args.end(), a.args.begin());
  return a;
}

}  // namespace

FactStore materialize(const Program& program, const std::string& ruleset, const MaterializeOptions& options,
                      MaterializeStats* stats) {
  return run(program, ruleset, options, stats, false);
}

FactStore materialize_naive(const Program& program, const std::string& ruleset, const MaterializeOptions& options,
                            MaterializeStats* stats) {
  return run(program, ruleset, options, stats, true);
}

void extend(FactStore& store, const Program& program, const std::string& ruleset,
            const std::vector<GroundLiteral>& facts, const std::vector<Disjunction>& disjunctions,
            const MaterializeOptions& options, MaterializeStats* stats) {
  const auto& rules = program.rules(ruleset);
  if (!program.passes.empty()) {
    Program grown = program;
    grown.facts.insert(grown.facts.end(), facts.begin(), facts.end());
    grown.disjunctions.insert(grown.disjunctions.end(), disjunctions.begin(), disjunctions.end());
    store = materialize(grown, ruleset, options, stats);
    return;
  }
  Evaluator ev(store, program, rules, options, stats, false);
  ev.extend(facts, disjunctions);
}

size_t propagate_disjunctions(FactStore& store) {
  std::vector<GroundLiteral> found;
  for (const auto& d : store.disjunctions()) {
    if (auto lit = propagation_of(store, d)) found.push_back(*lit);
  }
  size_t added = 0;
  for (const auto& lit : found) added += store.add(lit, kSourcePropagation) ? 1 : 0;
  return added;
}

std::string_view to_string(Inconsistency::Kind kind) {
  using K = Inconsistency::Kind;
  switch (kind) {
    case K::Contradiction:
      return "contradiction";
    case K::EmptyClassMember:
      return "empty-class-member";
    case K::EmptyDisjunction:
      return "empty-disjunction";
    case K::MaxCardinality:
      return "max-cardinality";
    case K::MinCardinality:
      return "min-cardinality";
    case K::Existential:
      return "existential";
    case K::Other:
      return "other";
  }
  return "other";
}

std::string source_name(uint32_t source, const std::vector<Rule>& rules) {
  switch (source) {
    case kSourceBase:
      return "fact";
    case kSourcePropagation:
      return "propagation";
    case kSourcePass:
      return "pass";
    default:
      break;
  }
  if (source >= rules.size()) return "rule#" + std::to_string(source);
  const Rule& r = rules[source];
  return r.id.empty() ? "rule#" + std::to_string(source) : r.id;
}

std::vector<Inconsistency> find_inconsistencies(const FactStore& store, const std::vector<Rule>& rules) {
  std::vector<Inconsistency> out;
  for (const auto& fact : store.atoms(error_predicate(), Polarity::Positive)) {
    Inconsistency inc;
    inc.error_fact = fact;
    inc.provenance.push_back(source_name(store.source_of({Polarity::Positive, fact}), rules));
    TermId payload = fact.args[0];
    std::vector<TermId> items;
    if (terms::kind(payload) == TermKind::List) {
      items = terms::args(payload);
    } else {
      items.push_back(payload);
    }
    size_t first_witness = 0;
    if (!items.empty() && terms::kind(items[0]) == TermKind::Constant) {
      inc.message = std::string(terms::name(items[0]).str());
      first_witness = 1;
    }
    inc.kind = kind_of(inc.message);
    for (size_t i = first_witness; i < items.size(); ++i) {
      inc.witnesses.push_back(terms::to_string(items[i]));
      if (auto atom = atom_of(items[i])) {
        for (auto pol : {Polarity::Positive, Polarity::Negative}) {
          if (store.contains(pol, *atom)) inc.provenance.push_back(source_name(store.source_of({pol, *atom}), rules));
        }
      }
    }
    out.push_back(std::move(inc));
  }
  return out;
}

std::vector<std::string> QueryResult::lines() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (variables.empty()) {
      out.push_back("true");
      continue;
    }
    std::string line;
    for (size_t i = 0; i < variables.size(); ++i) {
      if (i) line += ", ";
      line += variables[i] + " = " + terms::to_string(row[i]);
    }
    out.push_back(std::move(line));
  }
  return out;
}

QueryResult query(const FactStore& store, const Literal& pattern) {
  const Atom& atom = pattern.atom;
  if (atom.args.size() != atom.pred.arity()) {
    throw std::invalid_argument("arity mismatch: " + std::string(atom.pred.spelling()) + "/" +
                                std::to_string(atom.args.size()) + " expected /" +
                                std::to_string(atom.pred.arity()));
  }
  VarTable vars;
  std::vector<Pat> pats;
  QueryResult result;
  std::vector<uint32_t> visible;
  std::vector<Symbol> names;
  for (const auto& a : atom.args) a.collect_variables(names);
  for (auto n : names) {
    uint32_t index = vars.index(n);
    // Anonymous variables are matched but not reported.
    if (n.str().starts_with("_")) continue;
    if (std::find(visible.begin(), visible.end(), index) != visible.end()) continue;
    visible.push_back(index);
    result.variables.emplace_back(n.str());
  }
  for (const auto& a : atom.args) pats.push_back(compile_term(a, vars));

  const Relation& rel = store.relation(atom.pred, pattern.polarity);
  Bindings b;
  b.values.assign(vars.size(), TermId{});
  std::set<std::vector<TermId>> seen;
  auto consider = [&](uint32_t row) {
    const Tuple& t = rel.row(row);
    size_t mark = b.mark();
    bool ok = true;
    for (size_t i = 0; i < pats.size() && ok; ++i) ok = unify(pats[i], t[i], b);
    if (ok) {
      std::vector<TermId> values;
      for (auto v : visible) values.push_back(b.values[v]);
      if (seen.insert(values).second) result.rows.push_back(std::move(values));
    }
    b.undo(mark);
  };
  size_t pos = kMaxArity;
  for (size_t i = 0; i < pats.size(); ++i) {
    if (pats[i].kind == Pat::Kind::Const) {
      pos = i;
      break;
    }
  }
  if (pos == kMaxArity) {
    for (uint32_t row = 0; row < rel.size(); ++row) consider(row);
  } else {
    for (auto row : rel.rows_with(pos, pats[pos].value)) consider(row);
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const auto& x, const auto& y) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (int c = terms::compare(x[i], y[i])) return c < 0;
    }
    return false;
  });
  return result;
}

}  // namespace owlhorn
