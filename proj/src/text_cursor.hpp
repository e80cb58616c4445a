#pragma once

// Character cursor shared by the Turtle and query parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "parrot/errors.hpp"

namespace parrot::detail {

class TextCursor {
public:
    explicit TextCursor(std::string_view text) : text_(text) {}

    bool at_end() const noexcept { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const noexcept {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char get() noexcept { return at_end() ? '\0' : text_[pos_++]; }
    std::size_t pos() const noexcept { return pos_; }
    void seek(std::size_t pos) noexcept { pos_ = pos; }
    std::string_view text() const noexcept { return text_; }

    bool starts_with(std::string_view s) const noexcept { return text_.substr(pos_).starts_with(s); }

    /// Case-insensitive keyword test; the keyword must not run into a name.
    bool at_keyword(std::string_view kw) const noexcept {
        if (pos_ + kw.size() > text_.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) !=
                std::tolower(static_cast<unsigned char>(kw[i])))
                return false;
        }
        char after = peek(kw.size());
        return !(std::isalnum(static_cast<unsigned char>(after)) || after == '_' || after == ':');
    }

    /// Skips whitespace and `#` comments.
    void skip_space() noexcept {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

    [[noreturn]] void fail_at(const std::string& message, std::size_t offset) const {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(message, line, column);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (static_cast<unsigned char>(c) >= 0x80);
}

inline bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-';
}

/// Reads `<...>` at the cursor and returns the enclosed IRI.
std::string read_iriref(TextCursor& cur);

/// Reads `prefix:local` (either part may be empty) at the cursor. Handles
/// `\`-escapes in the local part. Returns {prefix, local}.
std::pair<std::string, std::string> read_prefixed_name(TextCursor& cur);

/// Reads a quoted string (single or triple quoted, `"` or `'`).
std::string read_quoted(TextCursor& cur);

/// Reads `@lang`. Cursor must be on '@'.
std::string read_langtag(TextCursor& cur);

}  // namespace parrot::detail
