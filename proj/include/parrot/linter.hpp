#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/graph.hpp"

namespace parrot::lint {

enum class Severity { Minor, Important, Critical };

std::string to_string(Severity severity);
/// Throws SchemaError for anything but critical/important/minor.
Severity parse_severity(std::string_view name);

struct Finding {
    std::string pitfall;
    Severity severity = Severity::Minor;
    /// Empty for ontology-wide pitfalls.
    std::vector<std::string> elements;
    std::string message;
    /// Every element lies outside the configured namespace.
    bool foreign = false;

    friend bool operator==(const Finding&, const Finding&) = default;
};

struct RuleInfo {
    std::string id;
    Severity severity;
    std::string title;
};

/// Implemented rules in id order.
const std::vector<RuleInfo>& registry();

struct LintConfig {
    /// Empty means every registered rule.
    std::set<std::string> enabled_rules;
    /// Class and individual local names: underscore-separated words, each
    /// starting with a capital or digit unless it is a connective.
    std::string class_name_pattern =
        "^[A-Z0-9][A-Z0-9]*[a-z0-9]*(_([A-Z0-9][A-Z0-9]*[a-z0-9]*|of|and|et|al|for|by|the|to|with|on|in|into|a|an|or|at|from|as|not))*$";
    /// Property local names: lower-case words joined by underscores.
    std::string property_name_pattern = "^[a-z][a-z0-9]*(_[a-z0-9]+)*$";
    std::vector<std::string> conjunction_words = {"and"};
    /// Class local names P07 leaves alone.
    std::set<std::string> conjunction_allowlist;
    /// P08 fires when an element has none of these.
    std::vector<std::string> annotation_properties = {"http://www.w3.org/2000/01/rdf-schema#label",
                                                      "http://www.w3.org/2000/01/rdf-schema#comment"};
    std::string namespace_iri = "https://w3id.org/parrot#";
    bool include_foreign = false;
};

/// Config used for the shipped knowledge base: the three scheme names
/// that join two authors with "and" are accepted as single concepts.
LintConfig shipped_config();

/// Findings of every enabled rule, ordered by severity (critical first),
/// pitfall id, then first element. Foreign findings are dropped unless
/// `include_foreign` is set.
std::vector<Finding> lint(const rdf::Graph& graph, const LintConfig& config = {});

/// One rule only; throws UnknownEntity for ids outside the registry.
std::vector<Finding> run_rule(std::string_view id, const rdf::Graph& graph, const LintConfig& config = {});

/// `[{"pitfall":..,"severity":..,"elements":[..],"message":..}, ...]`
std::string findings_to_json(const std::vector<Finding>& findings);
std::string findings_to_text(const std::vector<Finding>& findings);

bool any_at_or_above(const std::vector<Finding>& findings, Severity threshold);

}  // namespace parrot::lint
