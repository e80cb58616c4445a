#include "parrot/service.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "parrot/knowledge_base.hpp"
#include "parrot/query.hpp"
#include "parrot/recommender.hpp"
#include "parrot/turtle.hpp"

namespace parrot::service {

using json = nlohmann::ordered_json;
using rdf::Term;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("internal", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json term_json(const Term& t) {
    json out;
    out["type"] = t.is_iri() ? "iri" : t.is_literal() ? "literal" : "bnode";
    out["value"] = t.value();
    if (!t.language().empty()) out["lang"] = t.language();
    if (!t.datatype().empty()) out["datatype"] = t.datatype();
    return out;
}

json entry_json(const rdf::Graph& g, const kb::PatternEntry& p) {
    json tags = json::array();
    for (auto t : p.tags) tags.push_back(kb::to_string(t));
    json out = {{"number", p.number}, {"name", p.name}, {"iri", p.id.value()}, {"tags", tags}, {"global", p.global}};
    auto comments = g.match(p.id, kb::iri::rdfs_comment(), std::nullopt);
    if (!comments.empty()) out["comment"] = comments.front().object.value();
    json chain = json::array();
    for (const auto& c : kb::explanation_chain(g, p.id))
        chain.push_back({{"element", c.element.value()},
                         {"level", kb::to_string(c.level)},
                         {"strength", kb::to_string(c.strength)}});
    out["chain"] = chain;
    return out;
}

json parse_body(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON body", 1, e.byte);
    }
}

Response error_response(const Error& e) { return {http_status(e), error_json(e), "application/json"}; }

bool has_type(const Request& r, std::string_view wanted) {
    return r.content_type.rfind(std::string(wanted), 0) == 0;
}

void require_json(const Request& r) {
    if (!r.content_type.empty() && !has_type(r, "application/json"))
        throw SchemaError("expected an application/json body", {{"field", "content-type"}});
}

bool flag(const Request& r, const char* name) {
    auto it = r.params.find(name);
    return it != r.params.end() && (it->second == "1" || it->second == "true");
}

}  // namespace

Engine load_engine(const std::filesystem::path& kb_dir, const std::filesystem::path& rules_path) {
    Engine e;
    e.kb = kb::load_directory(kb_dir.empty() ? kb::default_data_dir() / "kb" : kb_dir);
    auto rp = rules_path.empty() ? dfd::default_rules_path() : rules_path;
    e.rules_text = read_file(rp);
    e.rules = dfd::parse_rules(e.rules_text, e.kb);
    return e;
}

std::string annotate_json(const Engine& engine, std::string_view dfd_text) {
    auto d = dfd::parse_dfd(dfd_text);
    return rec::render_report(rec::annotate(d, engine.kb, engine.rules), "json");
}

std::string query_json(const Engine& engine, std::string_view query_text) {
    auto result = query::evaluate(query::parse_query(query_text), engine.kb);
    json doc;
    doc["vars"] = result.vars;
    doc["rows"] = json::array();
    for (const auto& row : result.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < result.vars.size() && i < row.size(); ++i) r[result.vars[i]] = term_json(row[i]);
        doc["rows"].push_back(r);
    }
    return doc.dump(2) + "\n";
}

std::string patterns_json(const Engine& engine) {
    json doc = json::array();
    for (const auto& p : kb::pattern_catalog(engine.kb)) doc.push_back(entry_json(engine.kb, p));
    return doc.dump(2) + "\n";
}

std::string pattern_json(const Engine& engine, int number) {
    auto p = kb::find_pattern(engine.kb, number);
    if (!p) throw UnknownEntity("no privacy pattern number " + std::to_string(number));
    return entry_json(engine.kb, *p).dump(2) + "\n";
}

std::string lint_json(std::string_view turtle, const lint::LintConfig& config) {
    if (turtle.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty Turtle document", 1, 1);
    return lint::findings_to_json(lint::lint(rdf::parse_turtle(turtle), config));
}

std::string error_json(const Error& error) {
    json doc = {{"code", error.code()}, {"message", error.what()}};
    if (!error.detail().empty()) {
        json d = json::object();
        for (const auto& [k, v] : error.detail()) d[k] = v;
        doc["detail"] = d;
    }
    if (auto* pe = dynamic_cast<const ParseError*>(&error))
        doc["detail"] = {{"line", pe->line()}, {"column", pe->column()}};
    return doc.dump(2) + "\n";
}

int http_status(const Error& error) {
    const auto& c = error.code();
    if (c == "unknown_entity") return 404;
    if (c == "parse_error" || c == "schema_error" || c == "unsupported_feature") return 400;
    return 500;
}

Response handle(const Engine& engine, const Request& req) {
    try {
        const std::string& p = req.path;
        if (p == "/annotate") {
            if (req.method != "POST") return {405, error_json(Error("schema_error", "use POST")), "application/json"};
            require_json(req);
            return {200, annotate_json(engine, req.body)};
        }
        if (p == "/query") {
            if (req.method != "POST") return {405, error_json(Error("schema_error", "use POST")), "application/json"};
            require_json(req);
            json body = parse_body(req.body);
            if (!body.is_object() || !body.contains("query") || !body["query"].is_string())
                throw SchemaError("body must be {\"query\": string}", {{"field", "query"}});
            return {200, query_json(engine, body["query"].get<std::string>())};
        }
        if (p == "/patterns") {
            if (req.method != "GET") return {405, error_json(Error("schema_error", "use GET")), "application/json"};
            return {200, patterns_json(engine)};
        }
        if (p.rfind("/patterns/", 0) == 0) {
            if (req.method != "GET") return {405, error_json(Error("schema_error", "use GET")), "application/json"};
            std::string n = p.substr(10);
            if (n.empty() || n.size() > 6 || n.find_first_not_of("0123456789") != std::string::npos)
                throw UnknownEntity("no privacy pattern '" + n + "'");
            return {200, pattern_json(engine, std::stoi(n))};
        }
        if (p == "/lint") {
            if (req.method != "POST") return {405, error_json(Error("schema_error", "use POST")), "application/json"};
            lint::LintConfig cfg;
            cfg.include_foreign = flag(req, "include_foreign");
            return {200, lint_json(req.body, cfg)};
        }
        if (p == "/rules" && req.method == "GET") return {200, engine.rules_text};
        if (p == "/health" && req.method == "GET") return {200, "{\n  \"status\": \"ok\"\n}\n"};
        return error_response(UnknownEntity("no route " + req.method + " " + p));
    } catch (const Error& e) {
        return error_response(e);
    } catch (const std::exception& e) {
        return error_response(Error("internal", e.what()));
    }
}

}  // namespace parrot::service
