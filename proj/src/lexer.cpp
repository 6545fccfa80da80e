#include "lexer.hpp"

#include <cctype>

namespace apimine::detail {

namespace {

bool is_ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

void append_utf8(std::string& out, unsigned int cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Multi-char punctuators, longest first so maximal munch works.
constexpr std::string_view kPuncts[] = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=", ">=",
    "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>",
};

} // namespace

std::string sanitize_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        std::size_t extra = 0;
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
            ++i;
            continue;
        }
        if ((c & 0xE0) == 0xC0) extra = 1;
        else if ((c & 0xF0) == 0xE0) extra = 2;
        else if ((c & 0xF8) == 0xF0) extra = 3;
        else {
            append_utf8(out, 0xFFFD);
            ++i;
            continue;
        }
        bool ok = i + extra < text.size();
        for (std::size_t k = 1; ok && k <= extra; ++k)
            ok = (static_cast<unsigned char>(text[i + k]) & 0xC0) == 0x80;
        if (ok) {
            out.append(text.substr(i, extra + 1));
            i += extra + 1;
        } else {
            append_utf8(out, 0xFFFD);
            ++i;
        }
    }
    return out;
}

std::string decode_java_escapes(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c != '\\' || i + 1 >= raw.size()) {
            out.push_back(c);
            ++i;
            continue;
        }
        char e = raw[i + 1];
        i += 2;
        switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '\'': out.push_back('\''); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'u': {
            // Java allows repeated u's: \uuuXXXX.
            while (i < raw.size() && raw[i] == 'u') ++i;
            unsigned int cp = 0;
            int digits = 0;
            while (digits < 4 && i < raw.size() && std::isxdigit(static_cast<unsigned char>(raw[i]))) {
                char h = raw[i];
                cp = cp * 16 + static_cast<unsigned int>(
                    h <= '9' ? h - '0' : (std::tolower(h) - 'a' + 10));
                ++i;
                ++digits;
            }
            if (digits == 4) append_utf8(out, cp);
            else out.push_back('?'); // malformed escape, keep going
            break;
        }
        default:
            if (e >= '0' && e <= '7') { // octal, up to 3 digits
                unsigned int cp = static_cast<unsigned int>(e - '0');
                int digits = 1;
                while (digits < 3 && i < raw.size() && raw[i] >= '0' && raw[i] <= '7' && cp * 8 + 7 <= 0377) {
                    cp = cp * 8 + static_cast<unsigned int>(raw[i] - '0');
                    ++i;
                    ++digits;
                }
                append_utf8(out, cp);
            } else {
                out.push_back(e); // unknown escape: keep the character
            }
        }
    }
    return out;
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> toks;
    std::size_t i = 0;
    int line = 1;
    const std::size_t n = text.size();

    auto push = [&](Token::Kind kind, std::string value, std::size_t begin, bool isInt = true) {
        Token t;
        t.kind = kind;
        t.text = std::move(value);
        t.isInt = isInt;
        t.begin = begin;
        t.end = i;
        t.line = line;
        toks.push_back(std::move(t));
    };

    while (i < n) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        // Comments.
        if (c == '/' && i + 1 < n) {
            if (text[i + 1] == '/') {
                while (i < n && text[i] != '\n') ++i;
                continue;
            }
            if (text[i + 1] == '*') {
                i += 2;
                while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) {
                    if (text[i] == '\n') ++line;
                    ++i;
                }
                i = (i + 1 < n) ? i + 2 : n;
                continue;
            }
        }
        std::size_t begin = i;
        // String literal.
        if (c == '"') {
            ++i;
            std::string raw;
            while (i < n && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < n) {
                    raw.push_back(text[i]);
                    raw.push_back(text[i + 1]);
                    i += 2;
                    continue;
                }
                if (text[i] == '\n') ++line; // unterminated, keep scanning to the quote on a later line is wrong; stop at EOL
                raw.push_back(text[i]);
                ++i;
            }
            if (i < n) ++i; // closing quote
            push(Token::Kind::String, decode_java_escapes(raw), begin);
            continue;
        }
        // Char literal.
        if (c == '\'') {
            ++i;
            std::string raw;
            while (i < n && text[i] != '\'') {
                if (text[i] == '\\' && i + 1 < n) {
                    raw.push_back(text[i]);
                    raw.push_back(text[i + 1]);
                    i += 2;
                    continue;
                }
                raw.push_back(text[i]);
                ++i;
            }
            if (i < n) ++i;
            push(Token::Kind::CharLit, decode_java_escapes(raw), begin);
            continue;
        }
        // Number.
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            bool isInt = true;
            std::string lex;
            if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
                lex += "0x";
                i += 2;
                while (i < n && (std::isxdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                    if (text[i] != '_') lex.push_back(text[i]);
                    ++i;
                }
            } else if (c == '0' && i + 1 < n && (text[i + 1] == 'b' || text[i + 1] == 'B')) {
                lex += "0b";
                i += 2;
                while (i < n && (text[i] == '0' || text[i] == '1' || text[i] == '_')) {
                    if (text[i] != '_') lex.push_back(text[i]);
                    ++i;
                }
            } else {
                while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                    if (text[i] != '_') lex.push_back(text[i]);
                    ++i;
                }
                if (i < n && text[i] == '.' && i + 1 < n &&
                    std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                    isInt = false;
                    lex.push_back('.');
                    ++i;
                    while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                        if (text[i] != '_') lex.push_back(text[i]);
                        ++i;
                    }
                }
                if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                    std::size_t save = i;
                    std::string exp(1, text[i]);
                    ++i;
                    if (i < n && (text[i] == '+' || text[i] == '-')) {
                        exp.push_back(text[i]);
                        ++i;
                    }
                    if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                        isInt = false;
                        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                            exp.push_back(text[i]);
                            ++i;
                        }
                        lex += exp;
                    } else {
                        i = save;
                    }
                }
            }
            if (i < n && (text[i] == 'f' || text[i] == 'F' || text[i] == 'd' || text[i] == 'D')) {
                isInt = false;
                ++i;
            } else if (i < n && (text[i] == 'l' || text[i] == 'L')) {
                ++i;
            }
            push(Token::Kind::Number, std::move(lex), begin, isInt);
            continue;
        }
        // Identifier / keyword.
        if (is_ident_start(static_cast<unsigned char>(c))) {
            while (i < n && is_ident_part(static_cast<unsigned char>(text[i]))) ++i;
            push(Token::Kind::Ident, std::string(text.substr(begin, i - begin)), begin);
            continue;
        }
        // Punctuator, maximal munch.
        bool matched = false;
        for (std::string_view p : kPuncts) {
            if (text.substr(i, p.size()) == p) {
                i += p.size();
                push(Token::Kind::Punct, std::string(p), begin);
                matched = true;
                break;
            }
        }
        if (!matched) {
            ++i;
            push(Token::Kind::Punct, std::string(1, c), begin);
        }
    }

    Token end;
    end.kind = Token::Kind::End;
    end.begin = end.end = n;
    end.line = line;
    toks.push_back(std::move(end));
    return toks;
}

} // namespace apimine::detail
