#include "parrot/recommender.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

#include "parrot/errors.hpp"

namespace parrot::rec {

using json = nlohmann::ordered_json;
using rdf::Term;

namespace {

bool entry_less(const Entry& a, const Entry& b) {
    if (a.pattern.number != b.pattern.number) return a.pattern.number < b.pattern.number;
    if (a.pattern.id.value() != b.pattern.id.value()) return a.pattern.id.value() < b.pattern.id.value();
    return a.via.value() < b.via.value();
}

json tags_json(const kb::TagSet& tags) {
    json out = json::array();
    for (auto t : tags) out.push_back(kb::to_string(t));
    return out;
}

json pattern_json(const kb::PatternEntry& p) {
    return {{"iri", p.id.value()}, {"number", p.number}, {"name", p.name}, {"tags", tags_json(p.tags)},
            {"global", p.global}};
}

template <typename E>
E enum_from(const json& v, const std::vector<E>& all, const char* what) {
    if (!v.is_string()) throw SchemaError(std::string(what) + " must be a string");
    for (E e : all)
        if (kb::to_string(e) == v.get<std::string>()) return e;
    throw SchemaError(std::string("unknown ") + what + " '" + v.get<std::string>() + "'");
}

const json& field(const json& obj, const char* name) {
    if (!obj.is_object()) throw SchemaError(std::string("expected an object holding '") + name + "'");
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + name + "'", {{"field", name}});
    return *it;
}

std::string str(const json& obj, const char* name) {
    const json& v = field(obj, name);
    if (!v.is_string()) throw SchemaError(std::string("field '") + name + "' must be a string", {{"field", name}});
    return v.get<std::string>();
}

const json& arr(const json& obj, const char* name) {
    const json& v = field(obj, name);
    if (!v.is_array()) throw SchemaError(std::string("field '") + name + "' must be an array", {{"field", name}});
    return v;
}

kb::TagSet tags_from(const json& v) {
    if (!v.is_array()) throw SchemaError("tags must be an array");
    kb::TagSet out;
    for (const auto& t : v) {
        if (!t.is_string()) throw SchemaError("tag must be a string");
        out.insert(kb::parse_tag(t.get<std::string>()));
    }
    return out;
}

kb::PatternEntry pattern_from(const json& v) {
    kb::PatternEntry p;
    p.id = Term::iri(str(v, "iri"));
    const json& n = field(v, "number");
    if (!n.is_number_integer()) throw SchemaError("pattern number must be an integer");
    p.number = n.get<int>();
    p.name = str(v, "name");
    p.tags = tags_from(field(v, "tags"));
    const json& g = field(v, "global");
    if (!g.is_boolean()) throw SchemaError("field 'global' must be a boolean");
    p.global = g.get<bool>();
    return p;
}

std::string pattern_line(const kb::PatternEntry& p) {
    std::string out = std::to_string(p.number) + ". " + p.name;
    if (!p.tags.empty()) {
        out += " (";
        bool first = true;
        for (auto t : p.tags) {
            out += (first ? "" : ", ") + kb::to_string(t);
            first = false;
        }
        out += ")";
    }
    return out;
}

std::string render_markdown(const Report& r) {
    std::ostringstream out;
    out << "# Privacy patterns for " << r.dfd_name << "\n";
    for (const auto& a : r.annotations) {
        out << "\n## " << a.node_id << "\n\n";
        if (a.entries.empty()) out << "No node-specific patterns.\n";
        for (const auto& e : a.entries) {
            out << "- " << pattern_line(e.pattern) << " via " << rdf::local_name(e.via.value()) << "\n";
            for (const auto& c : e.chain)
                out << "  - " << kb::to_string(c.level) << ": " << rdf::local_name(c.element.value()) << " ("
                    << kb::to_string(c.strength) << ")\n";
        }
    }
    out << "\n## Patterns for all nodes\n\n";
    if (r.global_patterns.empty()) out << "None.\n";
    for (const auto& p : r.global_patterns) out << "- " << pattern_line(p) << "\n";
    out << "\n## Unmatched nodes\n\n";
    if (r.unmatched_nodes.empty()) out << "None.\n";
    for (const auto& n : r.unmatched_nodes) out << "- " << n << "\n";
    out << "\n## Strategy tags\n\n| Tag | Patterns |\n|---|---|\n";
    for (const auto& [tag, count] : r.tag_summary) out << "| " << kb::to_string(tag) << " | " << count << " |\n";
    return out.str();
}

std::string render_json(const Report& r) {
    json doc;
    doc["dfd_name"] = r.dfd_name;
    doc["annotations"] = json::array();
    for (const auto& a : r.annotations) {
        json entries = json::array();
        for (const auto& e : a.entries) {
            json chain = json::array();
            for (const auto& c : e.chain)
                chain.push_back({{"element", c.element.value()},
                                 {"level", kb::to_string(c.level)},
                                 {"strength", kb::to_string(c.strength)}});
            entries.push_back(
                {{"pattern", pattern_json(e.pattern)}, {"via", e.via.value()}, {"chain", chain}, {"tags", tags_json(e.tags)}});
        }
        doc["annotations"].push_back({{"node_id", a.node_id}, {"entries", entries}});
    }
    doc["global_patterns"] = json::array();
    for (const auto& p : r.global_patterns) doc["global_patterns"].push_back(pattern_json(p));
    doc["unmatched_nodes"] = r.unmatched_nodes;
    json summary = json::object();
    for (const auto& [tag, count] : r.tag_summary) summary[kb::to_string(tag)] = count;
    doc["tag_summary"] = summary;
    return doc.dump(2) + "\n";
}

}  // namespace

Report annotate(const dfd::Dfd& dfd, const rdf::Graph& graph, const std::vector<dfd::MappingRule>& rules) {
    Report report;
    report.dfd_name = dfd.name;
    for (const auto& p : kb::pattern_catalog(graph))
        if (p.global) report.global_patterns.push_back(p);

    for (const auto& node : dfd.nodes) {
        auto mapped = dfd::map_node(dfd::effective_node(dfd, node), rules);
        if (mapped.empty()) {
            report.unmatched_nodes.push_back(node.id);
            continue;
        }
        Annotation a{node.id, {}};
        for (const auto& via : mapped) {
            for (const auto& target : kb::entails_targets(graph, via)) {
                kb::PatternEntry p = kb::pattern_entry(graph, target);
                if (p.global) continue;
                a.entries.push_back({p, via, kb::explanation_chain(graph, target), p.tags});
            }
        }
        std::sort(a.entries.begin(), a.entries.end(), entry_less);
        report.annotations.push_back(std::move(a));
    }
    report.tag_summary = summarize_tags(report);
    return report;
}

std::map<kb::HoepmanTag, int> summarize_tags(const Report& report) {
    std::map<Term, kb::TagSet> distinct;
    for (const auto& a : report.annotations)
        for (const auto& e : a.entries) distinct[e.pattern.id] = e.pattern.tags;
    for (const auto& p : report.global_patterns) distinct[p.id] = p.tags;
    std::map<kb::HoepmanTag, int> out;
    for (auto t : kb::all_tags()) out[t] = 0;
    for (const auto& [id, tags] : distinct)
        for (auto t : tags) ++out[t];
    return out;
}

std::string to_string(CqOutcome::Kind kind) {
    switch (kind) {
        case CqOutcome::Kind::Answered: return "answered";
        case CqOutcome::Kind::Missing: return "missing";
        case CqOutcome::Kind::NotAvailable: return "not-available";
        case CqOutcome::Kind::Unclassified: return "unclassified";
    }
    return "unclassified";
}

CqOutcome answer_cq(const query::Query& query, const rdf::Graph& graph, const cq::CqRecord& record) {
    CqOutcome out;
    out.bindings = query::evaluate(query, graph);
    if (!out.bindings.empty()) {
        out.kind = CqOutcome::Kind::Answered;
        return out;
    }
    switch (record.availability) {
        case cq::Availability::NotAvailable: out.kind = CqOutcome::Kind::NotAvailable; break;
        case cq::Availability::Unclassified: out.kind = CqOutcome::Kind::Unclassified; break;
        // An answered-flagged record with no rows is a regression; the
        // harness reports it, here it simply is not answered.
        default: out.kind = CqOutcome::Kind::Missing; break;
    }
    return out;
}

std::string render_report(const Report& report, std::string_view format) {
    if (format == "json") return render_json(report);
    if (format == "markdown" || format == "md") return render_markdown(report);
    throw SchemaError("unknown report format '" + std::string(format) + "'", {{"field", "format"}});
}

Report report_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed report JSON", 1, e.byte);
    }
    const std::vector<kb::SchemeLevel> levels = {kb::SchemeLevel::Principle, kb::SchemeLevel::Strategy,
                                                 kb::SchemeLevel::Guideline, kb::SchemeLevel::Goal,
                                                 kb::SchemeLevel::PrivacyPattern};
    const std::vector<kb::Strength> strengths = {kb::Strength::Full, kb::Strength::Partial};

    Report r;
    r.dfd_name = str(doc, "dfd_name");
    for (const auto& a : arr(doc, "annotations")) {
        Annotation ann{str(a, "node_id"), {}};
        for (const auto& e : arr(a, "entries")) {
            Entry entry;
            entry.pattern = pattern_from(field(e, "pattern"));
            entry.via = Term::iri(str(e, "via"));
            for (const auto& c : arr(e, "chain"))
                entry.chain.push_back({Term::iri(str(c, "element")), enum_from(field(c, "level"), levels, "level"),
                                       enum_from(field(c, "strength"), strengths, "strength")});
            entry.tags = tags_from(field(e, "tags"));
            ann.entries.push_back(std::move(entry));
        }
        r.annotations.push_back(std::move(ann));
    }
    for (const auto& p : arr(doc, "global_patterns")) r.global_patterns.push_back(pattern_from(p));
    for (const auto& n : arr(doc, "unmatched_nodes")) {
        if (!n.is_string()) throw SchemaError("unmatched node id must be a string");
        r.unmatched_nodes.push_back(n.get<std::string>());
    }
    const json& summary = field(doc, "tag_summary");
    if (!summary.is_object()) throw SchemaError("tag_summary must be an object");
    for (const auto& [k, v] : summary.items()) {
        if (!v.is_number_integer()) throw SchemaError("tag count must be an integer");
        r.tag_summary[kb::parse_tag(k)] = v.get<int>();
    }
    return r;
}

}  // namespace parrot::rec
