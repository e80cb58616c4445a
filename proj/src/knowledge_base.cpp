#include "parrot/knowledge_base.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "parrot/errors.hpp"
#include "parrot/namespaces.hpp"
#include "parrot/turtle.hpp"

#ifndef PARROT_DEFAULT_DATA_DIR
#define PARROT_DEFAULT_DATA_DIR "data"
#endif

namespace parrot::kb {

using rdf::Triple;

namespace {

const char* const kTagNames[] = {"Minimise", "Hide",    "Separate", "Aggregate",
                                 "Inform",   "Control", "Enforce",  "Demonstrate"};

Term parrot_iri(const char* local) { return Term::iri(ns::parrot(local)); }

std::optional<std::string> literal_value(const Graph& g, const Term& s, const Term& p) {
    for (const auto& t : g.match(s, p, std::nullopt))
        if (t.object.is_literal()) return t.object.value();
    return std::nullopt;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw ParseError("unclosed quote in catalog", line_no, line.size() + 1);
    return fields;
}

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("internal", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Blank node labels are scoped to one document; keep files from colliding.
void scope_blank_nodes(Graph& g, const std::string& scope) {
    Graph out;
    out.prefixes() = g.prefixes();
    auto remap = [&](const Term& t) { return t.is_blank() ? Term::blank(scope + "_" + t.value()) : t; };
    for (const auto& t : g.triples()) out.insert(remap(t.subject), t.predicate, remap(t.object));
    g = std::move(out);
}

// Members of an owl:unionOf list, or the class itself.
std::vector<Term> class_members(const Graph& g, const Term& cls) {
    static const Term union_of = Term::iri(ns::owl("unionOf"));
    static const Term first = Term::iri(ns::rdf("first"));
    static const Term rest = Term::iri(ns::rdf("rest"));
    static const Term nil = Term::iri(ns::rdf("nil"));
    auto lists = g.match(cls, union_of, std::nullopt);
    if (lists.empty()) return {cls};
    std::vector<Term> out;
    Term node = lists.front().object;
    for (std::size_t guard = 0; node != nil && guard < g.size(); ++guard) {
        auto f = g.match(node, first, std::nullopt);
        auto r = g.match(node, rest, std::nullopt);
        if (f.empty() || r.empty()) break;
        out.push_back(f.front().object);
        node = r.front().object;
    }
    return out;
}

bool is_minor_word(const std::string& w) {
    static const std::set<std::string> minor = {"of", "and", "et", "al", "for", "by", "the", "to", "with",
                                                "on", "in", "a",  "an", "or",  "at", "from", "as", "not"};
    return minor.count(w) != 0;
}

}  // namespace

std::string to_string(SchemeLevel level) {
    switch (level) {
        case SchemeLevel::Principle: return "Principle";
        case SchemeLevel::Strategy: return "Strategy";
        case SchemeLevel::Guideline: return "Guideline";
        case SchemeLevel::Goal: return "Goal";
        case SchemeLevel::PrivacyPattern: return "PrivacyPattern";
    }
    return "?";
}

std::string to_string(HoepmanTag tag) { return kTagNames[static_cast<int>(tag)]; }

std::string to_string(Strength strength) { return strength == Strength::Full ? "full" : "partial"; }

HoepmanTag parse_tag(std::string_view name) {
    if (name == "Minimize") return HoepmanTag::Minimise;
    for (int i = 0; i < 8; ++i)
        if (name == kTagNames[i]) return static_cast<HoepmanTag>(i);
    throw SchemaError("unknown Hoepman tag '" + std::string(name) + "'");
}

std::vector<HoepmanTag> all_tags() {
    std::vector<HoepmanTag> out;
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<HoepmanTag>(i));
    return out;
}

namespace iri {
const Term& entails() { static const Term t = parrot_iri("entails"); return t; }
const Term& fully_inspired_by() { static const Term t = parrot_iri("fully_inspired_by"); return t; }
const Term& partially_inspired_by() { static const Term t = parrot_iri("partially_inspired_by"); return t; }
const Term& hoepman_tag() { static const Term t = parrot_iri("hoepman_tag"); return t; }
const Term& catalog_number() { static const Term t = parrot_iri("catalog_number"); return t; }
const Term& applies_globally() { static const Term t = parrot_iri("applies_globally"); return t; }
const Term& provenance() { static const Term t = parrot_iri("provenance"); return t; }
const Term& privacy_pattern() { static const Term t = parrot_iri("Privacy_Pattern"); return t; }
const Term& rdf_type() { static const Term t = Term::iri(ns::kRdfType); return t; }
const Term& subclass_of() { static const Term t = Term::iri(ns::rdfs("subClassOf")); return t; }
const Term& rdfs_label() { static const Term t = Term::iri(ns::rdfs("label")); return t; }
const Term& rdfs_comment() { static const Term t = Term::iri(ns::rdfs("comment")); return t; }
}  // namespace iri

std::string pattern_local_name(int number, std::string_view name) {
    std::vector<std::string> words(1);
    for (char c : name) {
        if (c == '\'') continue;
        if (std::isalnum(static_cast<unsigned char>(c))) {
            words.back() += c;
        } else if (!words.back().empty()) {
            words.emplace_back();
        }
    }
    if (words.back().empty()) words.pop_back();
    std::string out = "P" + std::to_string(number);
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::string w = words[i];
        std::string lower = w;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (i > 0 && is_minor_word(lower)) {
            w = lower;
        } else {
            w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
        }
        out += "_" + w;
    }
    return out;
}

Graph compile_pattern_csv(std::string_view csv) {
    Graph g;
    g.prefixes()["parrot"] = ns::kParrot;
    std::istringstream in{std::string(csv)};
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    std::set<int> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (header) {
            header = false;
            if (fields.size() < 3 || trim(fields[0]) != "catalog_number")
                throw ParseError("catalog header must start with catalog_number,name,tags", line_no, 1);
            continue;
        }
        if (fields.size() < 3) throw ParseError("catalog row needs at least 3 fields", line_no, 1);
        int number = 0;
        try {
            std::size_t used = 0;
            number = std::stoi(trim(fields[0]), &used);
            if (used != trim(fields[0]).size() || number <= 0) throw std::invalid_argument("n");
        } catch (const std::exception&) {
            throw ParseError("bad catalog number '" + fields[0] + "'", line_no, 1);
        }
        if (!seen.insert(number).second)
            throw SchemaError("duplicate catalog number " + std::to_string(number));
        std::string name = trim(fields[1]);
        Term id = Term::iri(ns::parrot(pattern_local_name(number, name)));
        g.insert(id, iri::rdf_type(), iri::privacy_pattern());
        g.insert(id, iri::rdfs_label(), Term::literal(name));
        g.insert(id, iri::catalog_number(), Term::literal(std::to_string(number)));
        std::istringstream tags(fields[2]);
        std::string tag;
        while (std::getline(tags, tag, ';')) {
            tag = trim(tag);
            if (tag.empty()) continue;
            g.insert(id, iri::hoepman_tag(), Term::literal(to_string(parse_tag(tag))));
        }
        if (fields.size() > 3 && !trim(fields[3]).empty())
            g.insert(id, iri::provenance(), Term::literal(trim(fields[3])));
    }
    return g;
}

std::set<Term> superclasses(const Graph& graph, const Term& cls) {
    std::set<Term> seen{cls};
    std::vector<Term> stack{cls};
    while (!stack.empty()) {
        Term c = stack.back();
        stack.pop_back();
        for (const auto& t : graph.match(c, iri::subclass_of(), std::nullopt))
            if (seen.insert(t.object).second) stack.push_back(t.object);
    }
    return seen;
}

std::size_t materialize_subclass_closure(Graph& graph) {
    std::vector<Triple> extra;
    std::map<Term, std::set<Term>> cache;
    for (const auto& t : graph.match(std::nullopt, iri::rdf_type(), std::nullopt)) {
        auto it = cache.find(t.object);
        if (it == cache.end()) it = cache.emplace(t.object, superclasses(graph, t.object)).first;
        for (const auto& sup : it->second)
            if (sup != t.object) extra.emplace_back(t.subject, iri::rdf_type(), sup);
    }
    std::size_t added = 0;
    for (const auto& t : extra) added += graph.insert(t) ? 1 : 0;
    return added;
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("PARROT_DATA_DIR"); env && *env) return env;
    return PARROT_DEFAULT_DATA_DIR;
}

Graph load_directory(const std::filesystem::path& kb_dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(kb_dir)) throw Error("internal", "knowledge-base directory not found: " + kb_dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(kb_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    Graph kb;
    for (const auto& file : files) {
        Graph part;
        try {
            part = rdf::parse_turtle(read_file(file));
        } catch (const ParseError& e) {
            throw Error("parse_error", file.filename().string() + ": " + e.what());
        }
        scope_blank_nodes(part, file.stem().string());
        kb.merge(part);
    }
    if (auto csv = kb_dir / "patterns.csv"; fs::exists(csv)) kb.merge(compile_pattern_csv(read_file(csv)));
    materialize_subclass_closure(kb);

    auto issues = validate_kb(kb);
    if (!issues.empty()) {
        std::string msg = "knowledge base failed validation (" + std::to_string(issues.size()) + " issues)";
        for (std::size_t i = 0; i < issues.size() && i < 5; ++i)
            msg += "\n  " + issues[i].code + " " + issues[i].subject + ": " + issues[i].message;
        throw SchemaError(msg);
    }
    return kb;
}

Graph load_builtin() { return load_directory(default_data_dir() / "kb"); }

bool has_type(const Graph& graph, const Term& node, const Term& cls) {
    for (const auto& t : graph.match(node, iri::rdf_type(), std::nullopt))
        if (t.object == cls || superclasses(graph, t.object).count(cls)) return true;
    return false;
}

bool is_pattern(const Graph& graph, const Term& node) { return has_type(graph, node, iri::privacy_pattern()); }

std::optional<SchemeLevel> scheme_level(const Graph& graph, const Term& element) {
    static const std::pair<Term, SchemeLevel> levels[] = {
        {Term::iri(ns::parrot("Privacy_Pattern")), SchemeLevel::PrivacyPattern},
        {Term::iri(std::string(ns::kGdprtext) + "Principle"), SchemeLevel::Principle},
        {Term::iri(ns::parrot("Strategy")), SchemeLevel::Strategy},
        {Term::iri(ns::parrot("Guideline")), SchemeLevel::Guideline},
        {Term::iri(ns::parrot("Goal")), SchemeLevel::Goal},
    };
    for (const auto& [cls, level] : levels)
        if (has_type(graph, element, cls)) return level;
    return std::nullopt;
}

std::vector<ValidationIssue> validate_kb(const Graph& graph) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::string code, const Term& subject, std::string message) {
        issues.push_back({std::move(code), subject.value(), std::move(message)});
    };

    // Individuals: anything that takes part in a link or carries catalog data.
    std::set<Term> individuals;
    for (const Term* p : {&iri::entails(), &iri::fully_inspired_by(), &iri::partially_inspired_by()}) {
        for (const auto& t : graph.match(std::nullopt, *p, std::nullopt)) {
            individuals.insert(t.subject);
            individuals.insert(t.object);
        }
    }
    for (const Term* p : {&iri::catalog_number(), &iri::hoepman_tag()})
        for (const auto& t : graph.match(std::nullopt, *p, std::nullopt)) individuals.insert(t.subject);
    for (const auto& ind : individuals)
        if (graph.match(ind, iri::rdf_type(), std::nullopt).empty())
            add("untyped_individual", ind, "individual has no rdf:type");

    std::vector<Term> sources;
    for (const auto& t : graph.match(iri::entails(), Term::iri(ns::rdfs("domain")), std::nullopt))
        for (auto& m : class_members(graph, t.object)) sources.push_back(m);
    for (const auto& t : graph.match(std::nullopt, iri::entails(), std::nullopt)) {
        bool ok_source = sources.empty() ||
                         std::any_of(sources.begin(), sources.end(),
                                     [&](const Term& c) { return has_type(graph, t.subject, c); });
        if (!ok_source)
            add("bad_entailment_source", t.subject, "entails source is not a device or activity");
        if (!is_pattern(graph, t.object))
            add("bad_entailment_target", t.object, "entails target is not a privacy pattern");
    }

    for (const Term* p : {&iri::fully_inspired_by(), &iri::partially_inspired_by()}) {
        for (const auto& t : graph.match(std::nullopt, *p, std::nullopt)) {
            if (!is_pattern(graph, t.subject))
                add("bad_inspiration_source", t.subject, "inspiration source is not a privacy pattern");
            auto level = scheme_level(graph, t.object);
            if (!level || *level == SchemeLevel::PrivacyPattern)
                add("bad_inspiration_target", t.object, "inspiration target is not a scheme element");
        }
    }
    for (const auto& t : graph.match(std::nullopt, iri::fully_inspired_by(), std::nullopt))
        if (graph.contains(Triple(t.subject, iri::partially_inspired_by(), t.object)))
            add("conflicting_strength", t.subject, "both fully and partially inspired by " + t.object.value());

    std::map<int, Term> numbers;
    for (const auto& t : graph.match(std::nullopt, iri::rdf_type(), iri::privacy_pattern())) {
        const Term& p = t.subject;
        if (graph.match(p, iri::hoepman_tag(), std::nullopt).empty())
            add("missing_tag", p, "pattern has no Hoepman tag");
        auto num = literal_value(graph, p, iri::catalog_number());
        if (!num) {
            add("missing_number", p, "pattern has no catalog number");
            continue;
        }
        int n = std::atoi(num->c_str());
        if (auto [it, fresh] = numbers.emplace(n, p); !fresh)
            add("duplicate_number", p, "catalog number " + *num + " also used by " + it->second.value());
    }
    for (const auto& t : graph.match(std::nullopt, iri::hoepman_tag(), std::nullopt)) {
        try {
            parse_tag(t.object.value());
        } catch (const SchemaError&) {
            add("bad_tag", t.subject, "unknown tag '" + t.object.value() + "'");
        }
    }

    for (const char* local : {"Sensor", "Goal", "Guideline", "Device", "Strategy", "entails"}) {
        Term el = Term::iri(ns::parrot(local));
        if (graph.match(el, iri::rdfs_comment(), std::nullopt).empty())
            add("missing_comment", el, "annotated element lacks rdfs:comment");
    }
    return issues;
}

TagSet tags_of(const Graph& graph, const Term& pattern) {
    if (!is_pattern(graph, pattern)) throw UnknownEntity("unknown privacy pattern " + pattern.value());
    TagSet tags;
    for (const auto& t : graph.match(pattern, iri::hoepman_tag(), std::nullopt)) tags.insert(parse_tag(t.object.value()));
    return tags;
}

std::vector<ChainLink> explanation_chain(const Graph& graph, const Term& pattern) {
    if (!is_pattern(graph, pattern)) throw UnknownEntity("unknown privacy pattern " + pattern.value());
    std::vector<ChainLink> chain;
    for (auto [prop, strength] : {std::pair{&iri::fully_inspired_by(), Strength::Full},
                                  std::pair{&iri::partially_inspired_by(), Strength::Partial}}) {
        for (const auto& t : graph.match(pattern, *prop, std::nullopt)) {
            auto level = scheme_level(graph, t.object);
            if (!level || *level == SchemeLevel::PrivacyPattern) continue;
            chain.push_back({t.object, *level, strength});
        }
    }
    std::sort(chain.begin(), chain.end(), [](const ChainLink& a, const ChainLink& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.element != b.element) return a.element.value() < b.element.value();
        return a.strength < b.strength;
    });
    return chain;
}

PatternEntry pattern_entry(const Graph& graph, const Term& pattern) {
    PatternEntry e;
    e.id = pattern;
    e.tags = tags_of(graph, pattern);
    if (auto n = literal_value(graph, pattern, iri::catalog_number())) e.number = std::atoi(n->c_str());
    e.name = literal_value(graph, pattern, iri::rdfs_label()).value_or(std::string(rdf::local_name(pattern.value())));
    e.global = literal_value(graph, pattern, iri::applies_globally()).value_or("") == "true";
    return e;
}

std::vector<PatternEntry> pattern_catalog(const Graph& graph) {
    std::vector<PatternEntry> out;
    std::set<Term> seen;
    for (const auto& t : graph.match(std::nullopt, iri::rdf_type(), iri::privacy_pattern()))
        if (seen.insert(t.subject).second) out.push_back(pattern_entry(graph, t.subject));
    std::sort(out.begin(), out.end(), [](const PatternEntry& a, const PatternEntry& b) {
        if (a.number != b.number) return a.number < b.number;
        return a.id.value() < b.id.value();
    });
    return out;
}

std::optional<PatternEntry> find_pattern(const Graph& graph, int number) {
    for (const auto& t : graph.match(std::nullopt, iri::catalog_number(), Term::literal(std::to_string(number))))
        if (is_pattern(graph, t.subject)) return pattern_entry(graph, t.subject);
    return std::nullopt;
}

std::vector<Term> entails_targets(const Graph& graph, const Term& source) {
    std::vector<Term> out;
    for (const auto& t : graph.match(source, iri::entails(), std::nullopt)) out.push_back(t.object);
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.value() < b.value(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace parrot::kb
