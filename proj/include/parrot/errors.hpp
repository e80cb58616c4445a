#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

namespace parrot {

/// Base for every error raised by the engine. `code()` is the stable
/// machine-readable category surfaced by the HTTP API.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

    /// Optional structured context, e.g. {"node": "n3", "field": "kind"}.
    const std::map<std::string, std::string>& detail() const noexcept { return detail_; }

protected:
    std::map<std::string, std::string> detail_;

private:
    std::string code_;
};

/// Syntax error in Turtle or query text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("parse_error", message + " at line " + std::to_string(line) +
                                   ", column " + std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& message, std::map<std::string, std::string> detail = {})
        : Error("schema_error", message) {
        detail_ = std::move(detail);
    }
};

class UnknownEntity : public Error {
public:
    explicit UnknownEntity(const std::string& message) : Error("unknown_entity", message) {}
};

class UnsupportedFeature : public Error {
public:
    explicit UnsupportedFeature(const std::string& keyword)
        : Error("unsupported_feature", "unsupported SPARQL feature: " + keyword),
          keyword_(keyword) {}

    const std::string& keyword() const noexcept { return keyword_; }

private:
    std::string keyword_;
};

}  // namespace parrot
