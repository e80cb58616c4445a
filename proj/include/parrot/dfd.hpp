#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parrot/graph.hpp"

namespace parrot::dfd {

enum class NodeKind { ExternalEntity, Process, DataStore, DataFlow, Device };

std::string to_string(NodeKind kind);
/// Throws SchemaError for names outside the five kinds.
NodeKind parse_kind(std::string_view name);

struct DfdNode {
    std::string id;
    NodeKind kind = NodeKind::Process;
    std::string label;
    /// Values may list several items separated by commas,
    /// e.g. "data-category": "location,routine".
    std::map<std::string, std::string> attributes;

    /// Trimmed comma-separated items of an attribute; empty if absent.
    std::vector<std::string> values(const std::string& key) const;

    friend bool operator==(const DfdNode&, const DfdNode&) = default;
};

struct DfdEdge {
    std::string from;
    std::string to;
    std::string label;

    friend bool operator==(const DfdEdge&, const DfdEdge&) = default;
};

struct Dfd {
    std::string name;
    std::vector<DfdNode> nodes;
    std::vector<DfdEdge> edges;

    const DfdNode* find(std::string_view id) const;

    friend bool operator==(const Dfd&, const Dfd&) = default;
};

/// Parses the DFD JSON document. Throws ParseError for malformed JSON and
/// SchemaError (with "node"/"edge"/"field" detail) for schema violations,
/// duplicate ids and dangling edges.
Dfd parse_dfd(std::string_view text);

/// Canonical JSON rendering accepted by parse_dfd.
std::string serialize_dfd(const Dfd& dfd);

struct RuleCondition {
    std::optional<NodeKind> kind;
    std::map<std::string, std::string> attributes;
};

struct MappingRule {
    RuleCondition when;
    std::vector<rdf::Term> targets;
};

/// Parses a rule file. Targets may be prefixed names (default prefixes) or
/// absolute IRIs; each must be a typed individual of `kb`, otherwise
/// SchemaError is thrown naming the target.
std::vector<MappingRule> parse_rules(std::string_view text, const rdf::Graph& kb);
std::vector<MappingRule> load_rules(const std::filesystem::path& path, const rdf::Graph& kb);
std::filesystem::path default_rules_path();

bool rule_matches(const MappingRule& rule, const DfdNode& node);

/// Union of targets of every matching rule, deduplicated and sorted by IRI.
/// A DataFlow node without an activity attribute is treated as activity=route.
std::vector<rdf::Term> map_node(const DfdNode& node, const std::vector<MappingRule>& rules);

/// The node as seen by the rules: DataFlow nodes also carry the
/// data-category values of the nodes they are connected to.
DfdNode effective_node(const Dfd& dfd, const DfdNode& node);

}  // namespace parrot::dfd
