#pragma once

#include <optional>
#include <string>

#include "owlhorn/ingest.hpp"

namespace owlhorn::detail {

// The axiom a ground positive Base fact states, if it has one of the
// ontology shapes; anything else stays a head-only rule.
std::optional<SourceAxiom> axiom_from_literal(const Literal& lit, const SourceLocation& loc);

ParseResult parse_native(std::string_view text, const ParseOptions& options);
ParseResult parse_owl(std::string_view text, const ParseOptions& options);
ParseResult parse_swrl(std::string_view text, const ParseOptions& options);
ParseResult parse_ruleml(std::string_view text, const ParseOptions& options);

}  // namespace owlhorn::detail
