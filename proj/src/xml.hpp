#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "owlhorn/diagnostics.hpp"

namespace owlhorn::xml {

struct Node {
  std::string name;  // qualified, e.g. "owl:Class"
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;  // concatenated character data, trimmed
  int line = 0;
  bool self_closed = false;

  std::optional<std::string> attribute(std::string_view qname) const;
  // Matches the part after the namespace prefix.
  std::optional<std::string> attribute_local(std::string_view local) const;
  std::string_view local_name() const;
  std::string_view prefix() const;
};

// Parses a document or a fragment with several top-level elements into a
// synthetic "#document" node. Errors are appended to `diags`; parsing goes on
// where it can. One malformation is repaired with a warning: a self-closed
// element followed by siblings and a stray matching end tag is treated as
// having wrapped those siblings (`<a/> <b/> </a>` reads as `<a><b/></a>`).
Node parse(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags);

}  // namespace owlhorn::xml
