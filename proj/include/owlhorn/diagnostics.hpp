#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace owlhorn {

struct SourceLocation {
  std::string file;
  int line = 0;

  std::string to_string() const;
  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class Severity { Warning, Error };

// Syntax covers malformed input; Unsupported covers well-formed input using an
// OWL construct outside the handled subset.
enum class DiagnosticKind { Syntax, Unsupported, Semantic, Safety };

struct Diagnostic {
  Severity severity = Severity::Error;
  DiagnosticKind kind = DiagnosticKind::Syntax;
  SourceLocation location;
  std::string message;

  // `file:line: message`
  std::string to_string() const;
};

bool has_errors(const std::vector<Diagnostic>& diags);
bool has_errors(const std::vector<Diagnostic>& diags, DiagnosticKind kind);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedConstruct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedDisjunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::string rule_id)
      : std::runtime_error(what), rule_id_(std::move(rule_id)) {}
  const std::string& rule_id() const { return rule_id_; }

 private:
  std::string rule_id_;
};

class UnknownRuleSet : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class KbFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace owlhorn
