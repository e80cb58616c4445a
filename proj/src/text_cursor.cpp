#include "text_cursor.hpp"

namespace parrot::detail {

namespace {

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_prefix_char(char c) { return is_name_char(c) || c == '.'; }

}  // namespace

std::string read_iriref(TextCursor& cur) {
    const std::size_t start = cur.pos();
    cur.get();  // '<'
    std::string iri;
    while (true) {
        if (cur.at_end()) cur.fail_at("bad IRI: missing '>'", start);
        char c = cur.get();
        if (c == '>') break;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '"' || c == '{' ||
            c == '}' || c == '|' || c == '^' || c == '`') {
            cur.fail_at("bad IRI: illegal character in IRI", start);
        }
        iri += c;
    }
    if (iri.empty()) cur.fail_at("bad IRI: empty IRI", start);
    return iri;
}

std::pair<std::string, std::string> read_prefixed_name(TextCursor& cur) {
    std::string prefix;
    while (is_prefix_char(cur.peek())) prefix += cur.get();
    if (!prefix.empty() && prefix.back() == '.') cur.fail("prefix label cannot end with '.'");
    if (cur.peek() != ':') cur.fail("expected ':' in prefixed name");
    cur.get();
    std::string local;
    while (true) {
        char c = cur.peek();
        if (c == '\\') {
            char next = cur.peek(1);
            if (std::string_view("_~.-!$&'()*+,;=/?#@%").find(next) == std::string_view::npos || next == '\0') {
                cur.fail("invalid escape in local name");
            }
            cur.get();
            local += cur.get();
        } else if (is_name_char(c) || c == ':') {
            local += cur.get();
        } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(cur.peek(1))) &&
                   std::isxdigit(static_cast<unsigned char>(cur.peek(2)))) {
            local += cur.get();
            local += cur.get();
            local += cur.get();
        } else if (c == '.' && (is_name_char(cur.peek(1)) || cur.peek(1) == ':' || cur.peek(1) == '\\')) {
            // A '.' is part of the name only if the name continues after it.
            local += cur.get();
        } else {
            break;
        }
    }
    return {prefix, local};
}

std::string read_quoted(TextCursor& cur) {
    const std::size_t start = cur.pos();
    const char quote = cur.get();
    bool long_form = false;
    if (cur.peek() == quote && cur.peek(1) == quote) {
        cur.get();
        cur.get();
        long_form = true;
    }
    std::string out;
    while (true) {
        if (cur.at_end()) cur.fail_at("unclosed literal", start);
        char c = cur.get();
        if (c == quote) {
            if (!long_form) break;
            if (cur.peek() == quote && cur.peek(1) == quote) {
                cur.get();
                cur.get();
                break;
            }
            out += c;
            continue;
        }
        if (!long_form && (c == '\n' || c == '\r')) cur.fail_at("unclosed literal", start);
        if (c != '\\') {
            out += c;
            continue;
        }
        char e = cur.get();
        switch (e) {
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case 'b': out += '\b'; break;
            case 'f': out += '\f'; break;
            case '"': out += '"'; break;
            case '\'': out += '\''; break;
            case '\\': out += '\\'; break;
            case 'u':
            case 'U': {
                const int digits = e == 'u' ? 4 : 8;
                std::string hex;
                for (int i = 0; i < digits; ++i) {
                    char h = cur.get();
                    if (!std::isxdigit(static_cast<unsigned char>(h))) cur.fail("invalid unicode escape");
                    hex += h;
                }
                append_utf8(out, std::stoul(hex, nullptr, 16));
                break;
            }
            default:
                if (cur.at_end()) cur.fail_at("unclosed literal", start);
                cur.fail("invalid string escape");
        }
    }
    return out;
}

std::string read_langtag(TextCursor& cur) {
    cur.get();  // '@'
    std::string tag;
    while (std::isalnum(static_cast<unsigned char>(cur.peek())) || cur.peek() == '-') tag += cur.get();
    if (tag.empty() || !std::isalpha(static_cast<unsigned char>(tag.front()))) cur.fail("invalid language tag");
    return tag;
}

}  // namespace parrot::detail
