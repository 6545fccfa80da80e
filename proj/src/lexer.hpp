#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace apimine::detail {

struct Token {
    enum class Kind {
        Ident,   // identifiers and keywords
        String,  // text = decoded value
        CharLit, // text = decoded value
        Number,  // text = lexeme with suffix/underscores stripped, isInt set
        Punct,   // text = operator/punctuator lexeme
        End,
    };

    Kind kind = Kind::End;
    std::string text;
    bool isInt = true;
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;

    bool is(Kind k) const { return kind == k; }
    bool is_punct(std::string_view p) const { return kind == Kind::Punct && text == p; }
    bool is_ident(std::string_view s) const { return kind == Kind::Ident && text == s; }
};

// Tokenizes a whole file. Comments (including decompiler markers such as
// "/* JADX ... */") are skipped. Never fails: unrecognized bytes become
// single-character Punct tokens.
std::vector<Token> lex(std::string_view text);

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view text);

// Decodes Java escape sequences exactly once (\n, \t, \", \\, \uXXXX, octal).
std::string decode_java_escapes(std::string_view raw);

} // namespace apimine::detail
