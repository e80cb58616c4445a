#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace parrot::rdf {

/// An RDF term: IRI, literal or blank node. IRIs are held in expanded form
/// and compared byte-for-byte.
class Term {
public:
    enum class Kind : unsigned char { Iri, Literal, Blank };

    Term() = default;

    static Term iri(std::string value);
    static Term literal(std::string lexical, std::string language = {}, std::string datatype = {});
    static Term blank(std::string label);

    Kind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == Kind::Iri; }
    bool is_literal() const noexcept { return kind_ == Kind::Literal; }
    bool is_blank() const noexcept { return kind_ == Kind::Blank; }

    /// IRI string, literal lexical form, or blank node label.
    const std::string& value() const noexcept { return value_; }
    const std::string& language() const noexcept { return language_; }
    const std::string& datatype() const noexcept { return datatype_; }

    /// N-Triples rendering, used for ordering and diagnostics.
    std::string to_ntriples() const;

    friend bool operator==(const Term&, const Term&) = default;
    friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

private:
    Term(Kind kind, std::string value, std::string language, std::string datatype)
        : kind_(kind), value_(std::move(value)), language_(std::move(language)), datatype_(std::move(datatype)) {}

    Kind kind_ = Kind::Iri;
    std::string value_;
    std::string language_;
    std::string datatype_;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    Triple() = default;
    /// Throws std::invalid_argument if the positions are ill-typed.
    Triple(Term s, Term p, Term o);

    friend bool operator==(const Triple&, const Triple&) = default;
    friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

/// Local part of an IRI after the last '#' or '/'.
std::string_view local_name(std::string_view iri);

/// Escapes a string for use inside a double-quoted Turtle/N-Triples literal.
std::string escape_literal(std::string_view text);

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept;
};

}  // namespace parrot::rdf
