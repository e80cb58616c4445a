#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "parrot/graph.hpp"
#include "parrot/namespaces.hpp"

namespace parrot::query {

struct Var {
    std::string name;  // without the leading '?'
    friend bool operator==(const Var&, const Var&) = default;
};

using Slot = std::variant<Var, rdf::Term>;

struct TriplePattern {
    Slot subject;
    Slot predicate;
    Slot object;
};

struct Filter {
    enum class Op { Equals, NotEquals };
    std::string variable;
    Op op = Op::Equals;
    rdf::Term value;  // always a ground IRI
};

struct Query {
    std::vector<std::string> select;
    std::vector<TriplePattern> patterns;
    std::vector<Filter> filters;
};

using Row = std::vector<rdf::Term>;

/// Solutions projected onto `vars`. Rows are distinct and sorted.
struct BindingSet {
    std::vector<std::string> vars;
    std::vector<Row> rows;

    bool empty() const noexcept { return rows.empty(); }
    friend bool operator==(const BindingSet&, const BindingSet&) = default;
};

/// Parses a SELECT query over a single basic graph pattern with optional
/// `FILTER (?v = <iri>)` / `!=` constraints. Keywords are case-insensitive.
/// `defaults` are available without PREFIX declarations.
///
/// Throws ParseError on malformed input and UnsupportedFeature naming the
/// keyword for SPARQL constructs outside this subset (OPTIONAL, UNION,
/// ORDER BY, GROUP BY, LIMIT, ...).
Query parse_query(std::string_view text, const rdf::PrefixMap& defaults = ns::default_prefixes());

/// Index-backed backtracking join; patterns are reordered by selectivity.
BindingSet evaluate(const Query& query, const rdf::Graph& graph);

/// Reference evaluator: nested loops over every assignment of graph terms
/// to the query variables, checked against the raw triple set. Exponential
/// in the number of variables; intended for tests on small inputs.
BindingSet evaluate_oracle(const Query& query, const rdf::Graph& graph);

/// Variables mentioned by the patterns, in first-occurrence order.
std::vector<std::string> pattern_variables(const Query& query);

}  // namespace parrot::query
