#include <algorithm>
#include <array>
#include <cctype>

#include "parrot/errors.hpp"
#include "parrot/query.hpp"
#include "text_cursor.hpp"

namespace parrot::query {

namespace {

using detail::TextCursor;

constexpr std::array kUnsupported = {
    "OPTIONAL", "UNION",  "MINUS",    "BIND",   "VALUES",   "SERVICE", "GRAPH",  "ORDER",
    "GROUP",    "LIMIT",  "OFFSET",   "HAVING", "CONSTRUCT", "ASK",    "DESCRIBE", "INSERT",
    "DELETE",   "LOAD",   "CLEAR",    "DROP",   "CREATE",   "FROM",    "BASE",   "REDUCED",
    "EXISTS",   "NOT",    "REGEX",    "COUNT",  "SUM",      "MIN",     "MAX",    "AVG",
    "SAMPLE",   "GROUP_CONCAT", "SUBSTR", "STR",
};

class QueryParser {
public:
    QueryParser(std::string_view text, const rdf::PrefixMap& defaults) : cur_(text), prefixes_(defaults) {}

    Query run() {
        prologue();
        reject_unsupported();
        if (!cur_.at_keyword("SELECT")) cur_.fail("expected SELECT");
        skip_word("SELECT");
        select_clause();
        cur_.skip_space();
        reject_unsupported();
        if (cur_.at_keyword("WHERE")) skip_word("WHERE");
        cur_.skip_space();
        if (cur_.peek() != '{') cur_.fail("expected '{'");
        cur_.get();
        group_body();
        cur_.skip_space();
        if (!cur_.at_end()) {
            reject_unsupported();
            cur_.fail("unexpected trailing input");
        }
        check_variables();
        return std::move(query_);
    }

private:
    void skip_word(std::string_view kw) {
        for (std::size_t i = 0; i < kw.size(); ++i) cur_.get();
    }

    void reject_unsupported() {
        cur_.skip_space();
        for (const char* kw : kUnsupported) {
            if (cur_.at_keyword(kw)) throw UnsupportedFeature(kw == std::string_view("ORDER") ? "ORDER BY"
                                                              : kw == std::string_view("GROUP") ? "GROUP BY"
                                                                                                : kw);
        }
    }

    void prologue() {
        while (true) {
            cur_.skip_space();
            if (cur_.at_keyword("BASE")) throw UnsupportedFeature("BASE");
            if (!cur_.at_keyword("PREFIX")) return;
            skip_word("PREFIX");
            cur_.skip_space();
            std::string label;
            while (detail::is_name_char(cur_.peek()) || cur_.peek() == '.') label += cur_.get();
            if (cur_.get() != ':') cur_.fail("expected ':' after prefix label");
            cur_.skip_space();
            if (cur_.peek() != '<') cur_.fail("expected IRI in PREFIX declaration");
            prefixes_[label] = detail::read_iriref(cur_);
        }
    }

    Var variable() {
        cur_.get();  // ? or $
        std::string name;
        while (detail::is_name_char(cur_.peek())) name += cur_.get();
        if (name.empty()) cur_.fail("empty variable name");
        return Var{name};
    }

    void select_clause() {
        cur_.skip_space();
        if (cur_.at_keyword("DISTINCT")) {
            skip_word("DISTINCT");  // solutions are always distinct
            cur_.skip_space();
        }
        reject_unsupported();
        if (cur_.peek() == '*') throw UnsupportedFeature("SELECT *");
        if (cur_.peek() == '(') throw UnsupportedFeature("SELECT expressions");
        while (true) {
            cur_.skip_space();
            if (cur_.peek() != '?' && cur_.peek() != '$') break;
            var_positions_.emplace_back(cur_.pos());
            Var v = variable();
            if (std::find(query_.select.begin(), query_.select.end(), v.name) == query_.select.end()) {
                query_.select.push_back(v.name);
            }
        }
        if (query_.select.empty()) cur_.fail("SELECT requires at least one variable");
    }

    rdf::Term iri() {
        if (cur_.peek() == '<') return rdf::Term::iri(detail::read_iriref(cur_));
        const std::size_t start = cur_.pos();
        if (!detail::is_name_char(cur_.peek()) && cur_.peek() != ':') cur_.fail("expected IRI or prefixed name");
        auto [prefix, local] = detail::read_prefixed_name(cur_);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) cur_.fail_at("unknown prefix '" + prefix + ":'", start);
        return rdf::Term::iri(it->second + local);
    }

    Slot slot(int position) {
        cur_.skip_space();
        const char c = cur_.peek();
        if (cur_.at_end()) cur_.fail("unexpected end of query");
        if (c == '?' || c == '$') return variable();
        if (c == '_' && cur_.peek(1) == ':') cur_.fail("blank nodes are not allowed in query patterns");
        if (c == '[' || c == '(') cur_.fail("anonymous nodes and collections are not supported");
        if (position == 1 && c == 'a' && !detail::is_name_char(cur_.peek(1)) && cur_.peek(1) != ':') {
            cur_.get();
            return rdf::Term::iri(ns::kRdfType);
        }
        if (position == 2 && (c == '"' || c == '\'')) {
            std::string lexical = detail::read_quoted(cur_);
            if (cur_.peek() == '@') return rdf::Term::literal(std::move(lexical), detail::read_langtag(cur_));
            if (cur_.peek() == '^' && cur_.peek(1) == '^') {
                cur_.get();
                cur_.get();
                return rdf::Term::literal(std::move(lexical), {}, iri().value());
            }
            return rdf::Term::literal(std::move(lexical));
        }
        if (position == 1 && c == '^') throw UnsupportedFeature("property paths");
        return iri();
    }

    void check_path_operator() {
        cur_.skip_space();
        char c = cur_.peek();
        if (c == '/' || c == '|' || c == '*' || c == '+' || (c == '?' && !detail::is_name_char(cur_.peek(1)))) {
            throw UnsupportedFeature("property paths");
        }
    }

    void filter() {
        skip_word("FILTER");
        cur_.skip_space();
        if (cur_.peek() != '(') {
            reject_unsupported();
            cur_.fail("expected '(' after FILTER");
        }
        cur_.get();
        cur_.skip_space();
        reject_unsupported();

        Filter f;
        bool have_var = false;
        auto operand = [&]() {
            cur_.skip_space();
            if (cur_.peek() == '?' || cur_.peek() == '$') {
                if (have_var) cur_.fail("FILTER must compare a variable with an IRI");
                var_positions_.emplace_back(cur_.pos());
                f.variable = variable().name;
                have_var = true;
            } else if (cur_.peek() == '"' || cur_.peek() == '\'' ||
                       std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
                cur_.fail("FILTER value must be an IRI");
            } else {
                f.value = iri();
            }
        };
        operand();
        cur_.skip_space();
        if (cur_.peek() == '=') {
            cur_.get();
            f.op = Filter::Op::Equals;
        } else if (cur_.peek() == '!' && cur_.peek(1) == '=') {
            cur_.get();
            cur_.get();
            f.op = Filter::Op::NotEquals;
        } else if (cur_.peek() == '&' || cur_.peek() == '|' || cur_.peek() == '<' || cur_.peek() == '>') {
            throw UnsupportedFeature("FILTER operator '" + std::string(1, cur_.peek()) + "'");
        } else {
            cur_.fail("expected '=' or '!=' in FILTER");
        }
        operand();
        if (!have_var) cur_.fail("FILTER must compare a variable with an IRI");
        cur_.skip_space();
        if (cur_.peek() == '&' || cur_.peek() == '|') throw UnsupportedFeature("FILTER boolean connectives");
        if (cur_.get() != ')') cur_.fail("expected ')' to close FILTER");
        query_.filters.push_back(std::move(f));
    }

    void group_body() {
        while (true) {
            cur_.skip_space();
            if (cur_.at_end()) cur_.fail("unterminated group: expected '}'");
            if (cur_.peek() == '}') {
                cur_.get();
                return;
            }
            if (cur_.peek() == '.') {
                cur_.get();
                continue;
            }
            if (cur_.peek() == '{') throw UnsupportedFeature("nested group patterns");
            if (cur_.at_keyword("FILTER")) {
                filter();
                continue;
            }
            reject_unsupported();
            triples_same_subject();
        }
    }

    void triples_same_subject() {
        Slot s = slot(0);
        while (true) {
            Slot p = slot(1);
            check_path_operator();
            while (true) {
                Slot o = slot(2);
                query_.patterns.push_back(TriplePattern{s, p, std::move(o)});
                cur_.skip_space();
                if (cur_.peek() != ',') break;
                cur_.get();
            }
            cur_.skip_space();
            if (cur_.peek() != ';') break;
            while (cur_.peek() == ';') {
                cur_.get();
                cur_.skip_space();
            }
            if (cur_.peek() == '.' || cur_.peek() == '}') break;
        }
        cur_.skip_space();
        if (cur_.peek() != '.' && cur_.peek() != '}' && !cur_.at_keyword("FILTER")) {
            reject_unsupported();
            cur_.fail("expected '.' between triple patterns");
        }
    }

    void check_variables() {
        const auto vars = pattern_variables(query_);
        auto known = [&](const std::string& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
        std::size_t next = 0;
        for (const auto& v : query_.select) {
            if (!known(v)) cur_.fail_at("variable ?" + v + " is not used in any pattern", var_positions_[next]);
            ++next;
        }
        for (const auto& f : query_.filters) {
            if (!known(f.variable)) cur_.fail("FILTER variable ?" + f.variable + " is not used in any pattern");
        }
    }

    TextCursor cur_;
    rdf::PrefixMap prefixes_;
    Query query_;
    std::vector<std::size_t> var_positions_;
};

}  // namespace

Query parse_query(std::string_view text, const rdf::PrefixMap& defaults) {
    return QueryParser(text, defaults).run();
}

std::vector<std::string> pattern_variables(const Query& query) {
    std::vector<std::string> vars;
    auto add = [&](const Slot& slot) {
        if (const auto* v = std::get_if<Var>(&slot)) {
            if (std::find(vars.begin(), vars.end(), v->name) == vars.end()) vars.push_back(v->name);
        }
    };
    for (const auto& p : query.patterns) {
        add(p.subject);
        add(p.predicate);
        add(p.object);
    }
    return vars;
}

}  // namespace parrot::query
