#include "parrot/term.hpp"

#include <stdexcept>

namespace parrot::rdf {

namespace {

bool has_whitespace(std::string_view s) {
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return true;
    }
    return false;
}

std::size_t mix(std::size_t seed, std::size_t h) {
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::iri(std::string value) {
    if (value.empty() || has_whitespace(value)) {
        throw std::invalid_argument("invalid IRI: '" + value + "'");
    }
    return Term(Kind::Iri, std::move(value), {}, {});
}

Term Term::literal(std::string lexical, std::string language, std::string datatype) {
    if (!language.empty() && !datatype.empty()) {
        throw std::invalid_argument("literal cannot carry both a language tag and a datatype");
    }
    return Term(Kind::Literal, std::move(lexical), std::move(language), std::move(datatype));
}

Term Term::blank(std::string label) {
    if (label.empty() || has_whitespace(label)) {
        throw std::invalid_argument("invalid blank node label: '" + label + "'");
    }
    return Term(Kind::Blank, std::move(label), {}, {});
}

std::string Term::to_ntriples() const {
    switch (kind_) {
        case Kind::Iri:
            return "<" + value_ + ">";
        case Kind::Blank:
            return "_:" + value_;
        case Kind::Literal: {
            std::string out = "\"" + escape_literal(value_) + "\"";
            if (!language_.empty()) out += "@" + language_;
            if (!datatype_.empty()) out += "^^<" + datatype_ + ">";
            return out;
        }
    }
    return {};
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
    if (subject.is_literal()) throw std::invalid_argument("triple subject cannot be a literal");
    if (!predicate.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
}

std::string_view local_name(std::string_view iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos) return iri;
    return iri.substr(pos + 1);
}

std::string escape_literal(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
    std::hash<std::string> h;
    std::size_t seed = static_cast<std::size_t>(t.kind());
    seed = mix(seed, h(t.value()));
    if (!t.language().empty()) seed = mix(seed, h(t.language()));
    if (!t.datatype().empty()) seed = mix(seed, h(t.datatype()));
    return seed;
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
    TermHash h;
    return mix(mix(h(t.subject), h(t.predicate)), h(t.object));
}

}  // namespace parrot::rdf
