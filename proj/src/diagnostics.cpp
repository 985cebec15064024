#include "owlhorn/diagnostics.hpp"

#include <algorithm>

namespace owlhorn {

std::string SourceLocation::to_string() const {
  return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line);
}

std::string Diagnostic::to_string() const {
  std::string out = location.to_string() + ": ";
  if (severity == Severity::Warning) out += "warning: ";
  return out + message;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_errors(const std::vector<Diagnostic>& diags, DiagnosticKind kind) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const Diagnostic& d) { return d.severity == Severity::Error && d.kind == kind; });
}

}  // namespace owlhorn
