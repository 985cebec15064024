#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "owlhorn/literal.hpp"

namespace owlhorn {

struct Guard {
  enum class Kind { Equal, NotEqual };
  Kind kind = Kind::NotEqual;
  Term lhs;
  Term rhs;

  friend bool operator==(const Guard&, const Guard&) = default;
};

// Builtin `member(Element, List)`: binds Element to each member of a bound list.
struct ListMember {
  Term element;
  Term list;

  friend bool operator==(const ListMember&, const ListMember&) = default;
};

using BodyElement = std::variant<Literal, Guard, ListMember>;

// A disjunction in a rule head. With `each` set, the single disjunct template
// is instantiated once per element of the list bound to each->list, giving
// one disjunct per member (enumerated classes).
struct DisjunctiveHead {
  struct Each {
    Term element;
    Term list;
    friend bool operator==(const Each&, const Each&) = default;
  };
  std::vector<Atom> disjuncts;
  std::optional<Each> each;

  friend bool operator==(const DisjunctiveHead&, const DisjunctiveHead&) = default;
};

using Head = std::variant<Literal, DisjunctiveHead>;

enum class RuleOrigin { General, Cardinality, User };

std::string_view to_string(RuleOrigin origin);
std::optional<RuleOrigin> parse_rule_origin(std::string_view text);

struct Rule {
  Head head;
  std::vector<BodyElement> body;
  RuleOrigin origin = RuleOrigin::User;
  std::string id;

  bool disjunctive() const { return std::holds_alternative<DisjunctiveHead>(head); }
  std::vector<const Literal*> body_literals() const;
  // Clause text in the native logic-program syntax, terminated by '.'.
  std::string to_string() const;
  // Structural equality ignoring origin and id.
  bool same_clause(const Rule& other) const { return head == other.head && body == other.body; }
};

std::string to_string(const BodyElement& element);
std::string to_string(const Head& head);

}  // namespace owlhorn
