#include "owlhorn/rule.hpp"

namespace owlhorn {

std::string_view to_string(RuleOrigin origin) {
  switch (origin) {
    case RuleOrigin::General:
      return "general";
    case RuleOrigin::Cardinality:
      return "cardinality";
    case RuleOrigin::User:
      return "user";
  }
  return "user";
}

std::optional<RuleOrigin> parse_rule_origin(std::string_view text) {
  if (text == "general") return RuleOrigin::General;
  if (text == "cardinality") return RuleOrigin::Cardinality;
  if (text == "user") return RuleOrigin::User;
  return std::nullopt;
}

std::vector<const Literal*> Rule::body_literals() const {
  std::vector<const Literal*> out;
  for (const auto& e : body) {
    if (auto* lit = std::get_if<Literal>(&e)) out.push_back(lit);
  }
  return out;
}

std::string to_string(const BodyElement& element) {
  if (auto* lit = std::get_if<Literal>(&element)) return lit->to_string();
  if (auto* g = std::get_if<Guard>(&element)) {
    return g->lhs.to_string() + (g->kind == Guard::Kind::Equal ? " = " : " \\= ") + g->rhs.to_string();
  }
  const auto& m = std::get<ListMember>(element);
  return "member(" + m.element.to_string() + ", " + m.list.to_string() + ")";
}

std::string to_string(const Head& head) {
  if (auto* lit = std::get_if<Literal>(&head)) return lit->to_string();
  const auto& d = std::get<DisjunctiveHead>(head);
  if (d.each) {
    return "orEach(" + d.each->element.to_string() + ", " + d.each->list.to_string() + ", " +
           d.disjuncts.front().to_string() + ")";
  }
  if (d.disjuncts.size() == 1) return "or(" + d.disjuncts[0].to_string() + ")";
  std::string out = d.disjuncts.back().to_string();
  for (size_t i = d.disjuncts.size() - 1; i-- > 0;) out = "or(" + d.disjuncts[i].to_string() + ", " + out + ")";
  return out;
}

std::string Rule::to_string() const {
  std::string out = owlhorn::to_string(head);
  if (!body.empty()) {
    out += " :- ";
    for (size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += owlhorn::to_string(body[i]);
    }
  }
  return out + ".";
}

}  // namespace owlhorn
