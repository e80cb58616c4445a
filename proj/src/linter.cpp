#include "parrot/linter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "parrot/errors.hpp"
#include "parrot/namespaces.hpp"

namespace parrot::lint {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

namespace {

const Term kType = Term::iri(ns::kRdfType);
const Term kOwlClass = Term::iri(ns::owl("Class"));
const Term kRdfsClass = Term::iri(ns::rdfs("Class"));
const Term kObjectProperty = Term::iri(ns::owl("ObjectProperty"));
const Term kOntology = Term::iri(ns::owl("Ontology"));
const Term kSubClassOf = Term::iri(ns::rdfs("subClassOf"));
const Term kDomain = Term::iri(ns::rdfs("domain"));
const Term kRange = Term::iri(ns::rdfs("range"));
const Term kDisjointWith = Term::iri(ns::owl("disjointWith"));
const Term kInverseOf = Term::iri(ns::owl("inverseOf"));
const Term kFirst = Term::iri(ns::rdf("first"));
const Term kRest = Term::iri(ns::rdf("rest"));

bool reserved(const std::string& iri) {
    for (const char* p : {ns::kRdf, ns::kRdfs, ns::kOwl, ns::kXsd})
        if (iri.rfind(p, 0) == 0) return true;
    return false;
}

const std::set<std::string>& property_types() {
    static const std::set<std::string> types = {ns::owl("ObjectProperty"),     ns::owl("DatatypeProperty"),
                                                ns::owl("AnnotationProperty"), ns::rdf("Property"),
                                                ns::owl("FunctionalProperty"), ns::owl("TransitiveProperty"),
                                                ns::owl("SymmetricProperty"),  ns::owl("InverseFunctionalProperty")};
    return types;
}

const std::set<std::string>& license_predicates() {
    static const std::set<std::string> preds = {"http://purl.org/dc/terms/license", "http://purl.org/dc/terms/rights",
                                                "http://purl.org/dc/elements/1.1/rights",
                                                "http://creativecommons.org/ns#license"};
    return preds;
}

/// Shared lookups computed once per lint run.
struct Facts {
    const Graph& g;
    std::set<Term> classes;
    std::set<Term> properties;
    std::set<Term> object_properties;
    std::set<Term> annotation_props;

    explicit Facts(const Graph& graph) : g(graph) {
        for (const auto& t : g.match(std::nullopt, kType, std::nullopt)) {
            if (!t.subject.is_iri()) continue;
            if (t.object == kOwlClass || t.object == kRdfsClass) classes.insert(t.subject);
            if (property_types().count(t.object.value())) properties.insert(t.subject);
            if (t.object == kObjectProperty) object_properties.insert(t.subject);
            if (t.object.value() == ns::owl("AnnotationProperty")) annotation_props.insert(t.subject);
        }
    }

    bool is_annotation(const Term& p) const {
        return annotation_props.count(p) || p.value() == ns::rdfs("label") || p.value() == ns::rdfs("comment") ||
               p.value() == ns::rdfs("seeAlso") || p.value().rfind(ns::kSkos, 0) == 0;
    }

    std::vector<Term> objects(const Term& s, const Term& p) const {
        std::vector<Term> out;
        for (const auto& t : g.match(s, p, std::nullopt)) out.push_back(t.object);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Direct subclass edges between IRIs.
    std::map<Term, std::set<Term>> children() const {
        std::map<Term, std::set<Term>> out;
        for (const auto& t : g.match(std::nullopt, kSubClassOf, std::nullopt))
            if (t.subject.is_iri() && t.object.is_iri()) out[t.object].insert(t.subject);
        return out;
    }

    /// IRIs of a union/intersection list hanging off a blank class.
    void list_members(const Term& head, std::set<Term>& out) const {
        Term cur = head;
        for (int guard = 0; guard < 10000 && cur.value() != ns::rdf("nil"); ++guard) {
            auto first = objects(cur, kFirst);
            for (const auto& f : first)
                if (f.is_iri()) out.insert(f);
            auto rest = objects(cur, kRest);
            if (rest.empty()) break;
            cur = rest.front();
        }
    }
};

Finding make(const char* id, Severity sev, std::vector<std::string> elements, std::string message) {
    return Finding{id, sev, std::move(elements), std::move(message), false};
}

std::string local(const Term& t) { return std::string(rdf::local_name(t.value())); }

std::vector<std::string> tokens(const std::string& name) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (c == '_' || c == '-' || c == ' ') {
            flush();
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty() &&
            std::islower(static_cast<unsigned char>(cur.back())))
            flush();
        cur += c;
    }
    flush();
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// P04: declared element that takes part in nothing but its own declaration.
std::vector<Finding> p04(const Facts& f, const LintConfig&) {
    std::set<Term> declared;
    for (const auto& t : f.g.match(std::nullopt, kType, std::nullopt))
        if (t.subject.is_iri() && !reserved(t.subject.value()) && t.object != kOntology) declared.insert(t.subject);
    std::vector<Finding> out;
    for (const auto& e : declared) {
        bool connected = f.g.count_at(1, e) > 0 || f.g.count_at(2, e) > 0;
        if (!connected)
            for (const auto& t : f.g.match(e, std::nullopt, std::nullopt))
                if (t.predicate != kType && !f.is_annotation(t.predicate)) {
                    connected = true;
                    break;
                }
        if (!connected) out.push_back(make("P04", Severity::Minor, {e.value()}, local(e) + " is not connected to any other element"));
    }
    return out;
}

// P06: cycles in the class hierarchy.
std::vector<Finding> p06(const Facts& f, const LintConfig&) {
    auto kids = f.children();
    // Tarjan over parent -> child edges.
    std::map<Term, int> index, low;
    std::set<Term> on_stack;
    std::vector<Term> stack;
    int counter = 0;
    std::vector<Finding> out;
    std::function<void(const Term&)> visit = [&](const Term& v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        if (auto it = kids.find(v); it != kids.end())
            for (const auto& w : it->second) {
                if (!index.count(w)) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.count(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
        if (low[v] != index[v]) return;
        std::vector<std::string> comp;
        Term w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            comp.push_back(w.value());
        } while (w != v);
        bool self_loop = kids.count(v) && kids.at(v).count(v);
        if (comp.size() > 1 || self_loop) {
            std::sort(comp.begin(), comp.end());
            out.push_back(make("P06", Severity::Critical, comp, "cycle in the class hierarchy"));
        }
    };
    std::set<Term> nodes;
    for (const auto& [p, cs] : kids) {
        nodes.insert(p);
        nodes.insert(cs.begin(), cs.end());
    }
    for (const auto& n : nodes)
        if (!index.count(n)) visit(n);
    return out;
}

// P07: class names joining two concepts with a conjunction.
std::vector<Finding> p07(const Facts& f, const LintConfig& cfg) {
    std::vector<Finding> out;
    for (const auto& c : f.classes) {
        std::string name = local(c);
        if (cfg.conjunction_allowlist.count(name)) continue;
        auto toks = tokens(name);
        for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
            auto word = lower(toks[i]);
            if (std::find(cfg.conjunction_words.begin(), cfg.conjunction_words.end(), word) !=
                cfg.conjunction_words.end()) {
                out.push_back(make("P07", Severity::Minor, {c.value()}, name + " may merge several concepts ('" + word + "')"));
                break;
            }
        }
    }
    return out;
}

// P08: classes and properties without any of the configured annotations.
std::vector<Finding> p08(const Facts& f, const LintConfig& cfg) {
    std::set<Term> elements = f.classes;
    elements.insert(f.properties.begin(), f.properties.end());
    std::vector<Finding> out;
    for (const auto& e : elements) {
        bool annotated = false;
        for (const auto& a : cfg.annotation_properties)
            if (!f.g.match(e, Term::iri(a), std::nullopt).empty()) annotated = true;
        if (!annotated) out.push_back(make("P08", Severity::Minor, {e.value()}, local(e) + " has no annotation"));
    }
    return out;
}

bool disjoint(const Graph& g, const Term& a, const Term& b) {
    return g.contains({a, kDisjointWith, b}) || g.contains({b, kDisjointWith, a});
}

// P10: sibling leaf classes with no disjointness between any of them.
std::vector<Finding> p10(const Facts& f, const LintConfig&) {
    auto kids = f.children();
    std::vector<std::string> parents;
    for (const auto& [parent, cs] : kids) {
        std::vector<Term> leaves;
        for (const auto& c : cs)
            if (!kids.count(c)) leaves.push_back(c);
        if (leaves.size() < 2) continue;
        bool any = false;
        for (std::size_t i = 0; i < leaves.size() && !any; ++i)
            for (std::size_t j = i + 1; j < leaves.size() && !any; ++j) any = disjoint(f.g, leaves[i], leaves[j]);
        if (!any) parents.push_back(local(parent));
    }
    if (parents.empty()) return {};
    std::string msg = "no disjointness among the subclasses of";
    for (const auto& p : parents) msg += " " + p;
    return {make("P10", Severity::Important, {}, msg)};
}

// P11: object properties lacking a domain or a range.
std::vector<Finding> p11(const Facts& f, const LintConfig&) {
    std::vector<Finding> out;
    for (const auto& p : f.object_properties) {
        bool d = !f.g.match(p, kDomain, std::nullopt).empty();
        bool r = !f.g.match(p, kRange, std::nullopt).empty();
        if (!d || !r)
            out.push_back(make("P11", Severity::Important, {p.value()},
                               local(p) + " has no " + (!d && !r ? "domain or range" : !d ? "domain" : "range")));
    }
    return out;
}

// P13: object properties without an inverse.
std::vector<Finding> p13(const Facts& f, const LintConfig&) {
    std::vector<Finding> out;
    for (const auto& p : f.object_properties)
        if (f.g.match(p, kInverseOf, std::nullopt).empty() && f.g.match(std::nullopt, kInverseOf, p).empty())
            out.push_back(make("P13", Severity::Minor, {p.value()}, local(p) + " has no inverse property"));
    return out;
}

// P19: more than one domain or range statement on a property.
std::vector<Finding> p19(const Facts& f, const LintConfig&) {
    std::set<Term> props = f.properties;
    for (const auto& t : f.g.match(std::nullopt, kDomain, std::nullopt)) props.insert(t.subject);
    for (const auto& t : f.g.match(std::nullopt, kRange, std::nullopt)) props.insert(t.subject);
    std::vector<Finding> out;
    for (const auto& p : props) {
        if (!p.is_iri()) continue;
        auto d = f.objects(p, kDomain).size();
        auto r = f.objects(p, kRange).size();
        if (d > 1 || r > 1) {
            std::string what = d > 1 && r > 1 ? "domains and ranges" : d > 1 ? "domains" : "ranges";
            out.push_back(make("P19", Severity::Critical, {p.value()},
                               local(p) + " declares multiple " + what + "; use a single union class instead"));
        }
    }
    return out;
}

// P22: names that break the naming convention, reported once.
std::vector<Finding> p22(const Facts& f, const LintConfig& cfg) {
    const std::regex cls(cfg.class_name_pattern);
    const std::regex prop(cfg.property_name_pattern);
    std::set<std::string> bad;
    std::set<Term> seen;
    for (const auto& t : f.g.triples()) {
        for (const Term* x : {&t.subject, &t.object}) {
            if (!x->is_iri() || x->value().rfind(cfg.namespace_iri, 0) != 0 || !seen.insert(*x).second) continue;
            if (f.properties.count(*x)) continue;
            if (!std::regex_match(local(*x), cls)) bad.insert(local(*x));
        }
    }
    std::set<Term> props = f.properties;
    for (const auto& t : f.g.triples()) props.insert(t.predicate);
    for (const auto& p : props)
        if (p.value().rfind(cfg.namespace_iri, 0) == 0 && !std::regex_match(local(p), prop)) bad.insert(local(p));
    if (bad.empty()) return {};
    std::string msg = std::to_string(bad.size()) + " names break the naming convention:";
    for (const auto& b : bad) msg += " " + b;
    return {make("P22", Severity::Minor, {}, msg)};
}

// P34: IRIs in class positions that are never declared as classes.
std::vector<Finding> p34(const Facts& f, const LintConfig&) {
    std::set<Term> used;
    for (const auto& t : f.g.triples()) {
        if (t.predicate == kType) used.insert(t.object);
        if (t.predicate == kSubClassOf || t.predicate == kDisjointWith ||
            t.predicate.value() == ns::owl("equivalentClass")) {
            used.insert(t.subject);
            used.insert(t.object);
        }
        if (t.predicate == kDomain || t.predicate == kRange) used.insert(t.object);
        if (t.predicate.value() == ns::owl("unionOf") || t.predicate.value() == ns::owl("intersectionOf"))
            f.list_members(t.object, used);
    }
    std::vector<Finding> out;
    for (const auto& c : used)
        if (c.is_iri() && !reserved(c.value()) && !f.classes.count(c))
            out.push_back(make("P34", Severity::Important, {c.value()}, local(c) + " is used as a class but not declared"));
    return out;
}

// P35: predicates never declared as properties.
std::vector<Finding> p35(const Facts& f, const LintConfig&) {
    std::set<Term> used;
    for (const auto& t : f.g.triples()) {
        used.insert(t.predicate);
        if (t.predicate == kDomain || t.predicate == kRange || t.predicate == kInverseOf) used.insert(t.subject);
    }
    std::vector<Finding> out;
    for (const auto& p : used)
        if (p.is_iri() && !reserved(p.value()) && !f.properties.count(p))
            out.push_back(make("P35", Severity::Important, {p.value()}, local(p) + " is used as a property but not declared"));
    return out;
}

// P38: no ontology header.
std::vector<Finding> p38(const Facts& f, const LintConfig&) {
    if (!f.g.match(std::nullopt, kType, kOntology).empty()) return {};
    return {make("P38", Severity::Important, {}, "no owl:Ontology declaration")};
}

// P41: ontology header without a license.
std::vector<Finding> p41(const Facts& f, const LintConfig&) {
    for (const auto& h : f.g.match(std::nullopt, kType, kOntology))
        for (const auto& t : f.g.match(h.subject, std::nullopt, std::nullopt))
            if (license_predicates().count(t.predicate.value())) return {};
    return {make("P41", Severity::Minor, {}, "the ontology metadata declares no license")};
}

using RuleFn = std::vector<Finding> (*)(const Facts&, const LintConfig&);

const std::map<std::string, RuleFn>& rule_fns() {
    static const std::map<std::string, RuleFn> fns = {
        {"P04", p04}, {"P06", p06}, {"P07", p07}, {"P08", p08}, {"P10", p10}, {"P11", p11}, {"P13", p13},
        {"P19", p19}, {"P22", p22}, {"P34", p34}, {"P35", p35}, {"P38", p38}, {"P41", p41},
    };
    return fns;
}

void finish(std::vector<Finding>& findings, const LintConfig& cfg) {
    for (auto& fd : findings) {
        fd.foreign = !fd.elements.empty();
        for (const auto& e : fd.elements)
            if (e.rfind(cfg.namespace_iri, 0) == 0) fd.foreign = false;
    }
    if (!cfg.include_foreign)
        findings.erase(std::remove_if(findings.begin(), findings.end(), [](const Finding& x) { return x.foreign; }),
                       findings.end());
    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        if (a.severity != b.severity) return a.severity > b.severity;
        if (a.pitfall != b.pitfall) return a.pitfall < b.pitfall;
        std::string ea = a.elements.empty() ? "" : a.elements.front();
        std::string eb = b.elements.empty() ? "" : b.elements.front();
        return ea < eb;
    });
}

}  // namespace

std::string to_string(Severity severity) {
    switch (severity) {
        case Severity::Critical: return "critical";
        case Severity::Important: return "important";
        case Severity::Minor: return "minor";
    }
    return "minor";
}

Severity parse_severity(std::string_view name) {
    if (name == "critical") return Severity::Critical;
    if (name == "important") return Severity::Important;
    if (name == "minor") return Severity::Minor;
    throw SchemaError("unknown severity '" + std::string(name) + "'", {{"field", "severity"}});
}

const std::vector<RuleInfo>& registry() {
    static const std::vector<RuleInfo> rules = {
        {"P04", Severity::Minor, "Creating unconnected ontology elements"},
        {"P06", Severity::Critical, "Including cycles in a class hierarchy"},
        {"P07", Severity::Minor, "Merging different concepts in the same class"},
        {"P08", Severity::Minor, "Missing annotations"},
        {"P10", Severity::Important, "Missing disjointness"},
        {"P11", Severity::Important, "Missing domain or range in properties"},
        {"P13", Severity::Minor, "Inverse relationships not explicitly declared"},
        {"P19", Severity::Critical, "Defining multiple domains or ranges in properties"},
        {"P22", Severity::Minor, "Using different naming conventions in the ontology"},
        {"P34", Severity::Important, "Untyped class"},
        {"P35", Severity::Important, "Untyped property"},
        {"P38", Severity::Important, "No OWL ontology declaration"},
        {"P41", Severity::Minor, "No license declared"},
    };
    return rules;
}

LintConfig shipped_config() {
    LintConfig cfg;
    cfg.conjunction_allowlist = {"Principles_of_Wright_and_Raab", "Principles_of_Cavoukian_and_Jonas",
                                 "Goals_of_Rost_and_Bock"};
    return cfg;
}

std::vector<Finding> run_rule(std::string_view id, const Graph& graph, const LintConfig& config) {
    auto it = rule_fns().find(std::string(id));
    if (it == rule_fns().end()) throw UnknownEntity("no lint rule " + std::string(id));
    Facts facts(graph);
    auto out = it->second(facts, config);
    finish(out, config);
    return out;
}

std::vector<Finding> lint(const Graph& graph, const LintConfig& config) {
    for (const auto& id : config.enabled_rules)
        if (!rule_fns().count(id)) throw UnknownEntity("no lint rule " + id);
    Facts facts(graph);
    std::vector<Finding> out;
    for (const auto& [id, fn] : rule_fns()) {
        if (!config.enabled_rules.empty() && !config.enabled_rules.count(id)) continue;
        auto part = fn(facts, config);
        out.insert(out.end(), part.begin(), part.end());
    }
    finish(out, config);
    return out;
}

std::string findings_to_json(const std::vector<Finding>& findings) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& f : findings) {
        nlohmann::ordered_json item = {
            {"pitfall", f.pitfall}, {"severity", to_string(f.severity)}, {"elements", f.elements}, {"message", f.message}};
        if (f.foreign) item["foreign"] = true;
        doc.push_back(item);
    }
    return doc.dump(2) + "\n";
}

std::string findings_to_text(const std::vector<Finding>& findings) {
    std::ostringstream out;
    for (const auto& f : findings) {
        out << f.pitfall << " [" << to_string(f.severity) << "] " << f.message;
        if (f.foreign) out << " (foreign)";
        out << "\n";
    }
    if (findings.empty()) out << "no findings\n";
    return out.str();
}

bool any_at_or_above(const std::vector<Finding>& findings, Severity threshold) {
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.severity >= threshold; });
}

}  // namespace parrot::lint
