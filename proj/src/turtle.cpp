#include "parrot/turtle.hpp"

#include <algorithm>

#include "parrot/namespaces.hpp"
#include "text_cursor.hpp"

namespace parrot::rdf {

namespace {

using detail::TextCursor;

class TurtleParser {
public:
    TurtleParser(std::string_view text, std::vector<std::string>* warnings) : cur_(text), warnings_(warnings) {}

    Graph run() {
        while (true) {
            cur_.skip_space();
            if (cur_.at_end()) break;
            if (cur_.peek() == '@') {
                directive_at();
            } else if (cur_.at_keyword("PREFIX")) {
                directive_sparql();
            } else {
                statement();
            }
        }
        return std::move(graph_);
    }

private:
    void declare(const std::string& label, const std::string& iri) {
        auto [it, inserted] = graph_.prefixes().insert_or_assign(label, iri);
        (void)it;
        if (!inserted && warnings_ != nullptr) {
            warnings_->push_back("prefix '" + label + ":' redeclared; using <" + iri + ">");
        }
    }

    std::pair<std::string, std::string> prefix_decl() {
        cur_.skip_space();
        std::string label;
        while (detail::is_name_char(cur_.peek()) || cur_.peek() == '.') label += cur_.get();
        if (cur_.peek() != ':') cur_.fail("expected ':' after prefix label");
        cur_.get();
        cur_.skip_space();
        if (cur_.peek() != '<') cur_.fail("bad IRI: expected '<' in prefix declaration");
        return {label, detail::read_iriref(cur_)};
    }

    void directive_at() {
        if (!cur_.starts_with("@prefix")) cur_.fail("unsupported directive");
        for (int i = 0; i < 7; ++i) cur_.get();
        auto [label, iri] = prefix_decl();
        cur_.skip_space();
        if (cur_.peek() != '.') cur_.fail("unterminated statement: expected '.' after @prefix");
        cur_.get();
        declare(label, iri);
    }

    void directive_sparql() {
        for (int i = 0; i < 6; ++i) cur_.get();
        auto [label, iri] = prefix_decl();
        declare(label, iri);
    }

    Term iri_or_pname() {
        if (cur_.peek() == '<') return Term::iri(detail::read_iriref(cur_));
        const std::size_t start = cur_.pos();
        auto [prefix, local] = detail::read_prefixed_name(cur_);
        auto it = graph_.prefixes().find(prefix);
        if (it == graph_.prefixes().end()) cur_.fail_at("unknown prefix '" + prefix + ":'", start);
        return Term::iri(it->second + local);
    }

    Term blank() {
        cur_.get();
        if (cur_.get() != ':') cur_.fail("expected ':' after '_'");
        std::string label;
        while (detail::is_name_char(cur_.peek()) ||
               (cur_.peek() == '.' && detail::is_name_char(cur_.peek(1)))) {
            label += cur_.get();
        }
        if (label.empty()) cur_.fail("empty blank node label");
        return Term::blank(label);
    }

    Term subject() {
        cur_.skip_space();
        if (cur_.peek() == '_' && cur_.peek(1) == ':') return blank();
        if (cur_.peek() == '[' || cur_.peek() == '(') cur_.fail("anonymous blank nodes and collections are not supported");
        if (cur_.peek() == '"' || cur_.peek() == '\'') cur_.fail("literal cannot be a subject");
        return iri_or_pname();
    }

    Term verb() {
        cur_.skip_space();
        if (cur_.peek() == 'a' && !detail::is_name_char(cur_.peek(1)) && cur_.peek(1) != ':') {
            cur_.get();
            return Term::iri(ns::kRdfType);
        }
        if (cur_.at_end()) cur_.fail("unterminated statement: expected predicate");
        return iri_or_pname();
    }

    Term object() {
        cur_.skip_space();
        if (cur_.at_end()) cur_.fail("unterminated statement: expected object");
        char c = cur_.peek();
        if (c == '_' && cur_.peek(1) == ':') return blank();
        if (c == '"' || c == '\'') {
            std::string lexical = detail::read_quoted(cur_);
            if (cur_.peek() == '@') return Term::literal(std::move(lexical), detail::read_langtag(cur_));
            if (cur_.peek() == '^' && cur_.peek(1) == '^') {
                cur_.get();
                cur_.get();
                return Term::literal(std::move(lexical), {}, iri_or_pname().value());
            }
            return Term::literal(std::move(lexical));
        }
        if (c == '[' || c == '(') cur_.fail("anonymous blank nodes and collections are not supported");
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
            cur_.fail("numeric literal shorthand is not supported");
        }
        return iri_or_pname();
    }

    void statement() {
        Term s = subject();
        while (true) {
            Term p = verb();
            while (true) {
                Term o = object();
                graph_.insert(Triple(s, p, std::move(o)));
                cur_.skip_space();
                if (cur_.peek() == ',') {
                    cur_.get();
                    continue;
                }
                break;
            }
            cur_.skip_space();
            if (cur_.peek() == ';') {
                while (cur_.peek() == ';') {
                    cur_.get();
                    cur_.skip_space();
                }
                if (cur_.peek() == '.') break;
                continue;
            }
            break;
        }
        cur_.skip_space();
        if (cur_.at_end()) cur_.fail("unterminated statement: expected '.' at end of input");
        if (cur_.peek() != '.') cur_.fail("unterminated statement: expected '.'");
        cur_.get();
    }

    TextCursor cur_;
    std::vector<std::string>* warnings_;
    Graph graph_;
};

bool safe_local(std::string_view local) {
    if (local.empty()) return true;
    if (local.front() == '-' || local.front() == '.' || local.back() == '.') return false;
    return std::all_of(local.begin(), local.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

class Abbreviator {
public:
    explicit Abbreviator(const PrefixMap& prefixes) {
        for (const auto& [label, ns] : prefixes) by_length_.emplace_back(label, ns);
        // Longest namespace first, then label for determinism.
        std::sort(by_length_.begin(), by_length_.end(), [](const auto& a, const auto& b) {
            if (a.second.size() != b.second.size()) return a.second.size() > b.second.size();
            return a.first < b.first;
        });
    }

    std::string iri(const std::string& value) const {
        for (const auto& [label, ns] : by_length_) {
            if (value.size() >= ns.size() && value.compare(0, ns.size(), ns) == 0) {
                std::string_view local(value.data() + ns.size(), value.size() - ns.size());
                if (safe_local(local)) return label + ":" + std::string(local);
            }
        }
        return "<" + value + ">";
    }

    std::string term(const Term& t) const {
        switch (t.kind()) {
            case Term::Kind::Iri: return iri(t.value());
            case Term::Kind::Blank: return "_:" + t.value();
            case Term::Kind::Literal: {
                std::string out = "\"" + escape_literal(t.value()) + "\"";
                if (!t.language().empty()) out += "@" + t.language();
                if (!t.datatype().empty()) out += "^^" + iri(t.datatype());
                return out;
            }
        }
        return {};
    }

private:
    std::vector<std::pair<std::string, std::string>> by_length_;
};

}  // namespace

Graph parse_turtle(std::string_view text, std::vector<std::string>* warnings) {
    return TurtleParser(text, warnings).run();
}

std::string serialize_turtle(const Graph& graph) {
    std::string out;
    for (const auto& [label, ns] : graph.prefixes()) out += "@prefix " + label + ": <" + ns + "> .\n";

    std::vector<const Triple*> sorted;
    sorted.reserve(graph.size());
    for (const auto& t : graph.triples()) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [](const Triple* a, const Triple* b) {
        auto key = [](const Triple* t) {
            return std::tie(t->subject.value(), t->predicate.value(), t->object.value());
        };
        if (key(a) != key(b)) return key(a) < key(b);
        return *a < *b;
    });

    const Abbreviator abbrev(graph.prefixes());
    if (!sorted.empty() && !graph.prefixes().empty()) out += "\n";
    for (std::size_t i = 0; i < sorted.size();) {
        const Term& subject = sorted[i]->subject;
        out += abbrev.term(subject);
        bool first = true;
        for (; i < sorted.size() && sorted[i]->subject == subject; ++i) {
            out += first ? " " : " ;\n    ";
            first = false;
            const Term& p = sorted[i]->predicate;
            out += p.value() == ns::kRdfType ? std::string("a") : abbrev.iri(p.value());
            out += " " + abbrev.term(sorted[i]->object);
        }
        out += " .\n";
    }
    return out;
}

}  // namespace parrot::rdf
