#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "parrot/graph.hpp"

namespace parrot::rdf {

/// Parses the supported Turtle subset: `@prefix`/`PREFIX`, prefixed names,
/// `<absolute IRIs>`, `a`, predicate lists (`;`), object lists (`,`),
/// quoted literals with `@lang` or `^^datatype`, `#` comments and `_:`
/// blank node labels. Collections, `[ ]` and numeric shorthand are not
/// accepted.
///
/// A redeclared prefix replaces the earlier one; a note is appended to
/// `warnings` when provided. Throws ParseError with line and column.
Graph parse_turtle(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Deterministic Turtle rendering: triples sorted by expanded subject,
/// predicate and object, grouped by subject. Re-parses to an equal graph.
std::string serialize_turtle(const Graph& graph);

}  // namespace parrot::rdf
