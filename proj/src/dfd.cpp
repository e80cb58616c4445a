#include "parrot/dfd.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "parrot/errors.hpp"
#include "parrot/knowledge_base.hpp"
#include "parrot/namespaces.hpp"

namespace parrot::dfd {

using json = nlohmann::ordered_json;
using rdf::Term;

namespace {

const char* const kKindNames[] = {"ExternalEntity", "Process", "DataStore", "DataFlow", "Device"};

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_values(std::string_view raw) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= raw.size()) {
        std::size_t comma = raw.find(',', start);
        if (comma == std::string_view::npos) comma = raw.size();
        if (auto item = trim(raw.substr(start, comma - start)); !item.empty()) out.push_back(item);
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void rethrow_json(const json::parse_error& e, std::string_view text) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ParseError("malformed JSON", line, col);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        rethrow_json(e, text);
    }
}

const json& require(const json& obj, const char* field, std::map<std::string, std::string> where) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        where["field"] = field;
        throw SchemaError(std::string("missing field '") + field + "'", where);
    }
    return *it;
}

std::string require_string(const json& obj, const char* field, std::map<std::string, std::string> where) {
    const json& v = require(obj, field, where);
    if (!v.is_string()) {
        where["field"] = field;
        throw SchemaError(std::string("field '") + field + "' must be a string", where);
    }
    return v.get<std::string>();
}

std::map<std::string, std::string> string_map(const json& v, const char* field,
                                              std::map<std::string, std::string> where) {
    std::map<std::string, std::string> out;
    if (v.is_null()) return out;
    where["field"] = field;
    if (!v.is_object()) throw SchemaError(std::string("field '") + field + "' must be an object", where);
    for (const auto& [k, val] : v.items()) {
        if (!val.is_string()) throw SchemaError("attribute '" + k + "' must be a string", where);
        out[k] = val.get<std::string>();
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("internal", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Term expand_target(const std::string& text) {
    if (text.size() > 2 && text.front() == '<' && text.back() == '>') return Term::iri(text.substr(1, text.size() - 2));
    auto colon = text.find(':');
    if (colon != std::string::npos && text.find("://") == std::string::npos) {
        auto prefixes = ns::default_prefixes();
        auto it = prefixes.find(text.substr(0, colon));
        if (it == prefixes.end()) throw SchemaError("unknown prefix in rule target '" + text + "'");
        return Term::iri(it->second + text.substr(colon + 1));
    }
    return Term::iri(text);
}

}  // namespace

std::string to_string(NodeKind kind) { return kKindNames[static_cast<int>(kind)]; }

NodeKind parse_kind(std::string_view name) {
    for (int i = 0; i < 5; ++i)
        if (name == kKindNames[i]) return static_cast<NodeKind>(i);
    throw SchemaError("unknown node kind '" + std::string(name) + "'");
}

std::vector<std::string> DfdNode::values(const std::string& key) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? std::vector<std::string>{} : split_values(it->second);
}

const DfdNode* Dfd::find(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

Dfd parse_dfd(std::string_view text) {
    json doc = parse_json(text);
    if (!doc.is_object()) throw SchemaError("DFD document must be a JSON object");
    Dfd dfd;
    dfd.name = require_string(doc, "name", {});
    const json& nodes = require(doc, "nodes", {});
    if (!nodes.is_array()) throw SchemaError("field 'nodes' must be an array", {{"field", "nodes"}});
    if (nodes.empty()) throw SchemaError("a DFD needs at least one node", {{"field", "nodes"}});
    std::set<std::string> ids;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const json& n = nodes[i];
        std::map<std::string, std::string> where{{"index", std::to_string(i)}};
        if (!n.is_object()) throw SchemaError("node must be an object", where);
        DfdNode node;
        node.id = require_string(n, "id", where);
        if (node.id.empty()) throw SchemaError("node id must not be empty", where);
        where = {{"node", node.id}};
        std::string kind = require_string(n, "kind", where);
        try {
            node.kind = parse_kind(kind);
        } catch (const SchemaError& e) {
            where["field"] = "kind";
            throw SchemaError(e.what(), where);
        }
        if (auto it = n.find("label"); it != n.end()) {
            if (!it->is_string()) throw SchemaError("field 'label' must be a string", {{"node", node.id}, {"field", "label"}});
            node.label = it->get<std::string>();
        }
        if (auto it = n.find("attributes"); it != n.end()) node.attributes = string_map(*it, "attributes", where);
        if (!ids.insert(node.id).second) throw SchemaError("duplicate node id '" + node.id + "'", where);
        dfd.nodes.push_back(std::move(node));
    }
    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) throw SchemaError("field 'edges' must be an array", {{"field", "edges"}});
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& e = (*it)[i];
            std::map<std::string, std::string> where{{"edge", std::to_string(i)}};
            if (!e.is_object()) throw SchemaError("edge must be an object", where);
            DfdEdge edge;
            edge.from = require_string(e, "from", where);
            edge.to = require_string(e, "to", where);
            if (auto l = e.find("label"); l != e.end() && l->is_string()) edge.label = l->get<std::string>();
            for (const auto* end : {&edge.from, &edge.to})
                if (!ids.count(*end))
                    throw SchemaError("dangling edge " + edge.from + " -> " + edge.to + ": no node '" + *end + "'",
                                      {{"edge", std::to_string(i)}, {"node", *end}});
            dfd.edges.push_back(std::move(edge));
        }
    }
    return dfd;
}

std::string serialize_dfd(const Dfd& dfd) {
    json doc;
    doc["name"] = dfd.name;
    doc["nodes"] = json::array();
    for (const auto& n : dfd.nodes) {
        json attrs = json::object();
        for (const auto& [k, v] : n.attributes) attrs[k] = v;
        doc["nodes"].push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"label", n.label}, {"attributes", attrs}});
    }
    doc["edges"] = json::array();
    for (const auto& e : dfd.edges) doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    return doc.dump(2) + "\n";
}

std::vector<MappingRule> parse_rules(std::string_view text, const rdf::Graph& kb) {
    json doc = parse_json(text);
    if (!doc.is_array()) throw SchemaError("rule file must be a JSON array");
    std::vector<MappingRule> rules;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& r = doc[i];
        std::map<std::string, std::string> where{{"rule", std::to_string(i)}};
        if (!r.is_object()) throw SchemaError("rule must be an object", where);
        MappingRule rule;
        const json& when = require(r, "when", where);
        if (!when.is_object()) throw SchemaError("'when' must be an object", where);
        if (auto k = when.find("kind"); k != when.end() && !k->is_null()) {
            if (!k->is_string()) throw SchemaError("'kind' must be a string", where);
            rule.when.kind = parse_kind(k->get<std::string>());
        }
        if (auto a = when.find("attributes"); a != when.end()) rule.when.attributes = string_map(*a, "attributes", where);
        const json& targets = require(r, "targets", where);
        if (!targets.is_array() || targets.empty()) throw SchemaError("'targets' must be a non-empty array", where);
        for (const auto& t : targets) {
            if (!t.is_string()) throw SchemaError("rule target must be a string", where);
            Term iri = expand_target(t.get<std::string>());
            if (kb.match(iri, kb::iri::rdf_type(), std::nullopt).empty()) {
                where["target"] = iri.value();
                throw SchemaError("rule target not in knowledge base: " + iri.value(), where);
            }
            rule.targets.push_back(iri);
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<MappingRule> load_rules(const std::filesystem::path& path, const rdf::Graph& kb) {
    return parse_rules(read_file(path), kb);
}

std::filesystem::path default_rules_path() { return kb::default_data_dir() / "rules.json"; }

bool rule_matches(const MappingRule& rule, const DfdNode& node) {
    if (rule.when.kind && *rule.when.kind != node.kind) return false;
    for (const auto& [key, wanted] : rule.when.attributes) {
        auto have = node.values(key);
        if (have.empty() && key == "activity" && node.kind == NodeKind::DataFlow) have = {"route"};
        if (std::find(have.begin(), have.end(), wanted) == have.end()) return false;
    }
    return true;
}

std::vector<Term> map_node(const DfdNode& node, const std::vector<MappingRule>& rules) {
    std::vector<Term> out;
    for (const auto& rule : rules)
        if (rule_matches(rule, node)) out.insert(out.end(), rule.targets.begin(), rule.targets.end());
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.value() < b.value(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DfdNode effective_node(const Dfd& dfd, const DfdNode& node) {
    if (node.kind != NodeKind::DataFlow || node.attributes.count("data-category")) return node;
    std::vector<std::string> inherited;
    for (const auto& e : dfd.edges) {
        const std::string* other = e.from == node.id ? &e.to : e.to == node.id ? &e.from : nullptr;
        if (!other) continue;
        if (const DfdNode* n = dfd.find(*other))
            for (auto& v : n->values("data-category"))
                if (std::find(inherited.begin(), inherited.end(), v) == inherited.end()) inherited.push_back(v);
    }
    DfdNode out = node;
    if (!inherited.empty()) {
        std::string joined;
        for (const auto& v : inherited) joined += (joined.empty() ? "" : ",") + v;
        out.attributes["data-category"] = joined;
    }
    return out;
}

}  // namespace parrot::dfd
