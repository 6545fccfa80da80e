#include "apimine/source_model.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace apimine {

using detail::Token;

ExprPtr make_string_lit(std::string text, Span span) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::StringLit;
    e->text = std::move(text);
    e->span = span;
    return e;
}

ExprPtr make_unknown(std::string raw, Span span) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Unknown;
    e->text = std::move(raw);
    e->span = span;
    return e;
}

std::optional<std::string> Annotation::string_arg(std::string_view key) const {
    for (const auto& a : args)
        if (a.key == key) return a.value;
    return std::nullopt;
}

namespace {

constexpr std::size_t kMaxParseErrors = 50;

const std::set<std::string>& modifier_words() {
    static const std::set<std::string> words = {
        "public", "protected", "private", "static", "final", "abstract",
        "synchronized", "native", "transient", "volatile", "strictfp", "default",
    };
    return words;
}

bool is_primitive_numeric_int(const std::string& s) {
    return s == "int" || s == "long" || s == "short" || s == "byte" || s == "char";
}

bool is_primitive_numeric_float(const std::string& s) {
    return s == "float" || s == "double";
}

TypeRef classify_type(const std::string& name) {
    TypeRef t;
    if (name == "String" || name == "java.lang.String" || name == "CharSequence") {
        t.kind = DeclaredType::String;
    } else if (is_primitive_numeric_int(name) || name == "Integer" || name == "Long" ||
               name == "Short" || name == "Byte" || name == "Character") {
        t.kind = DeclaredType::NumberInt;
    } else if (is_primitive_numeric_float(name) || name == "Float" || name == "Double") {
        t.kind = DeclaredType::NumberFloat;
    } else if (name == "boolean" || name == "Boolean") {
        t.kind = DeclaredType::Boolean;
    } else if (name == "var" || name == "void" || name.empty()) {
        t.kind = DeclaredType::Unknown;
    } else {
        t.kind = DeclaredType::Object;
        t.objectName = name;
    }
    return t;
}

class Parser {
public:
    Parser(std::string_view text, std::vector<Token> toks, SourceUnit& unit)
        : text_(text), toks_(std::move(toks)), unit_(unit) {}

    void run() {
        while (!at_end()) {
            if (cur().is_ident("package")) {
                advance();
                unit_.packageName = parse_dotted_name();
                eat_punct(";");
                continue;
            }
            if (cur().is_ident("import")) {
                advance();
                if (cur().is_ident("static")) advance();
                std::string name = parse_dotted_name();
                if (cur().is_punct("*")) {
                    advance();
                    name += ".*";
                } else if (cur().is_punct(".")) {
                    // dotted-name parse stopped at ".*"
                    advance();
                    if (cur().is_punct("*")) {
                        advance();
                        name += ".*";
                    }
                }
                eat_punct(";");
                if (!name.empty()) unit_.imports.push_back(name);
                continue;
            }
            std::vector<Annotation> annos = parse_annotations();
            skip_modifiers();
            if (is_type_keyword(cur())) {
                TypeDecl t = parse_type_decl(std::move(annos));
                unit_.types.push_back(std::move(t));
                continue;
            }
            if (at_end()) break;
            record_error(cur(), "unexpected token at top level: " + describe(cur()));
            advance();
        }
    }

private:
    std::string_view text_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    SourceUnit& unit_;
    int anonCounter_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& peek(std::size_t k = 1) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    bool at_end() const { return cur().is(Token::Kind::End); }
    void advance() {
        if (!at_end()) ++pos_;
    }

    Span span_from(std::size_t beginTok) const {
        Span s;
        const Token& b = toks_[std::min(beginTok, toks_.size() - 1)];
        const Token& e = toks_[pos_ > 0 ? pos_ - 1 : 0];
        s.begin = b.begin;
        s.end = std::max(b.begin, e.end);
        s.line = b.line;
        return s;
    }

    Span token_span(const Token& t) const { return Span{t.begin, t.end, t.line}; }

    std::string slice(const Span& s) const {
        if (s.begin >= text_.size() || s.end <= s.begin) return {};
        return std::string(text_.substr(s.begin, std::min(s.end, text_.size()) - s.begin));
    }

    std::string describe(const Token& t) const {
        switch (t.kind) {
        case Token::Kind::Ident: return "'" + t.text + "'";
        case Token::Kind::String: return "string literal";
        case Token::Kind::CharLit: return "char literal";
        case Token::Kind::Number: return "number";
        case Token::Kind::Punct: return "'" + t.text + "'";
        default: return "end of file";
        }
    }

    void record_error(const Token& at, std::string message) {
        if (unit_.parseErrors.size() >= kMaxParseErrors) return;
        unit_.parseErrors.push_back({token_span(at), std::move(message)});
    }

    bool eat_punct(std::string_view p) {
        if (cur().is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }

    static bool is_type_keyword(const Token& t) {
        return t.is_ident("class") || t.is_ident("interface") || t.is_ident("enum") ||
               t.is_ident("record");
    }

    void skip_modifiers() {
        while (cur().is(Token::Kind::Ident) && modifier_words().count(cur().text)) advance();
    }

    std::string parse_dotted_name() {
        std::string name;
        while (cur().is(Token::Kind::Ident)) {
            name += cur().text;
            advance();
            if (cur().is_punct(".") && peek().is(Token::Kind::Ident)) {
                name += '.';
                advance();
            } else {
                break;
            }
        }
        return name;
    }

    // Skips a balanced <...> region. Java generics may nest and contain
    // wildcards; shift tokens like ">>" are split logically here.
    void skip_generics() {
        if (!cur().is_punct("<")) return;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is_punct("<")) {
                ++depth;
            } else if (t.is_punct(">")) {
                --depth;
            } else if (t.is_punct(">>")) {
                depth -= 2;
            } else if (t.is_punct(">>>")) {
                depth -= 3;
            } else if (t.is_punct(";") || t.is_punct("{")) {
                return; // not generics after all, bail out
            }
            advance();
            if (depth <= 0) return;
        }
    }

    void skip_balanced(std::string_view open, std::string_view close) {
        int depth = 0;
        while (!at_end()) {
            if (cur().is_punct(open)) ++depth;
            else if (cur().is_punct(close)) --depth;
            advance();
            if (depth <= 0) return;
        }
    }

    // --- annotations ---------------------------------------------------

    std::vector<Annotation> parse_annotations() {
        std::vector<Annotation> out;
        while (cur().is_punct("@") && peek().is(Token::Kind::Ident)) {
            if (peek().is_ident("interface")) break; // @interface declaration
            std::size_t beginTok = pos_;
            advance();
            Annotation a;
            a.name = parse_dotted_name();
            if (cur().is_punct("(")) {
                advance();
                parse_annotation_args(a);
                eat_punct(")");
            }
            a.span = span_from(beginTok);
            out.push_back(std::move(a));
        }
        return out;
    }

    void parse_annotation_args(Annotation& a) {
        while (!at_end() && !cur().is_punct(")")) {
            std::string key = "value";
            if (cur().is(Token::Kind::Ident) && peek().is_punct("=")) {
                key = cur().text;
                advance();
                advance();
            }
            parse_annotation_value(a, key);
            if (!eat_punct(",")) break;
        }
    }

    void parse_annotation_value(Annotation& a, const std::string& key) {
        if (cur().is_punct("{")) {
            advance();
            while (!at_end() && !cur().is_punct("}")) {
                parse_annotation_value(a, key);
                if (!eat_punct(",")) break;
            }
            eat_punct("}");
            return;
        }
        if (cur().is(Token::Kind::String)) {
            a.args.push_back({key, cur().text, true});
            advance();
            return;
        }
        // Non-string values (enum constants, numbers, class refs) are kept as
        // raw text; nested parens get skipped.
        std::string raw;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is_punct(",") || t.is_punct(")") || t.is_punct("}"))) break;
            if (t.is_punct("(")) ++depth;
            if (t.is_punct(")")) --depth;
            raw += t.text;
            advance();
        }
        a.args.push_back({key, raw, false});
    }

    // --- type declarations ----------------------------------------------

    TypeDecl parse_type_decl(std::vector<Annotation> annos) {
        TypeDecl t;
        t.annotations = std::move(annos);
        std::size_t beginTok = pos_;
        t.isInterface = cur().is_ident("interface");
        advance(); // class/interface/enum/record
        bool isEnum = toks_[beginTok].is_ident("enum");
        if (cur().is(Token::Kind::Ident)) {
            t.name = cur().text;
            advance();
        }
        skip_generics();
        if (cur().is_punct("(")) skip_balanced("(", ")"); // record header
        while (cur().is_ident("extends") || cur().is_ident("implements") || cur().is_ident("permits")) {
            advance();
            while (!at_end() && !cur().is_punct("{") &&
                   !cur().is_ident("extends") && !cur().is_ident("implements") &&
                   !cur().is_ident("permits")) {
                if (cur().is_punct("<")) skip_generics();
                else advance();
            }
        }
        if (!eat_punct("{")) {
            record_error(cur(), "expected '{' in type declaration");
            t.span = span_from(beginTok);
            return t;
        }
        if (isEnum) skip_enum_constants();
        parse_type_body(t);
        t.span = span_from(beginTok);
        lower_type(t, nullptr);
        return t;
    }

    void skip_enum_constants() {
        // Constants run until ';' or the closing brace of the enum body.
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is_punct(";") || t.is_punct("}"))) {
                if (t.is_punct(";")) advance();
                return;
            }
            if (t.is_punct("{") || t.is_punct("(")) ++depth;
            else if (t.is_punct("}") || t.is_punct(")")) --depth;
            advance();
        }
    }

    void parse_type_body(TypeDecl& t) {
        while (!at_end() && !cur().is_punct("}")) {
            parse_member(t);
        }
        eat_punct("}");
    }

    void parse_member(TypeDecl& t) {
        std::vector<Annotation> annos = parse_annotations();
        bool isStatic = false;
        bool isTransient = false;
        while (cur().is(Token::Kind::Ident) && modifier_words().count(cur().text)) {
            if (cur().is_ident("static")) isStatic = true;
            if (cur().is_ident("transient")) isTransient = true;
            advance();
        }
        if (cur().is_punct(";")) {
            advance();
            return;
        }
        if (cur().is_punct("{")) {
            // Initializer block: keep its statements as a synthetic method so
            // call sites inside stay visible to extraction.
            MethodDecl m;
            m.name = "<initializer>";
            std::size_t beginTok = pos_;
            m.body = parse_block(t);
            m.span = span_from(beginTok);
            t.methods.push_back(std::move(m));
            return;
        }
        if (is_type_keyword(cur()) ||
            (cur().is_punct("@") && peek().is_ident("interface"))) {
            if (cur().is_punct("@")) advance();
            t.nested.push_back(parse_type_decl(std::move(annos)));
            return;
        }
        if (!cur().is(Token::Kind::Ident)) {
            record_error(cur(), "unexpected token in type body: " + describe(cur()));
            advance();
            return;
        }
        // Constructor: identifier matching the type name, directly followed
        // by the parameter list.
        if (cur().text == t.name && peek().is_punct("(")) {
            MethodDecl m;
            m.isConstructor = true;
            m.name = cur().text;
            m.annotations = std::move(annos);
            std::size_t beginTok = pos_;
            advance();
            parse_method_rest(m, t, beginTok);
            t.methods.push_back(std::move(m));
            return;
        }
        std::size_t save = pos_;
        TypeRef type = parse_type_ref();
        if (!cur().is(Token::Kind::Ident)) {
            pos_ = save;
            record_error(cur(), "unparseable member");
            skip_to_member_boundary();
            return;
        }
        std::string name = cur().text;
        std::size_t beginTok = save;
        advance();
        if (cur().is_punct("(")) {
            MethodDecl m;
            m.name = std::move(name);
            m.returnType = type;
            m.annotations = std::move(annos);
            parse_method_rest(m, t, beginTok);
            t.methods.push_back(std::move(m));
            return;
        }
        // Field declaration, possibly with several declarators.
        while (true) {
            while (eat_punct("[")) eat_punct("]");
            FieldDecl f;
            f.name = name;
            f.declaredType = type;
            f.annotations = annos;
            f.isStatic = isStatic;
            f.isTransient = isTransient;
            if (eat_punct("=")) {
                f.initializer = parse_expression(t);
            }
            f.span = span_from(beginTok);
            t.fields.push_back(std::move(f));
            if (eat_punct(",") && cur().is(Token::Kind::Ident)) {
                beginTok = pos_;
                name = cur().text;
                advance();
                continue;
            }
            break;
        }
        if (!eat_punct(";")) {
            record_error(cur(), "expected ';' after field declaration");
            skip_to_member_boundary();
        }
    }

    void skip_to_member_boundary() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && t.is_punct(";")) {
                advance();
                return;
            }
            if (depth == 0 && t.is_punct("}")) return;
            if (t.is_punct("{") || t.is_punct("(")) ++depth;
            else if (t.is_punct("}") || t.is_punct(")")) --depth;
            advance();
        }
    }

    TypeRef parse_type_ref() {
        std::string name = parse_dotted_name();
        skip_generics();
        while (cur().is_punct("[") && peek().is_punct("]")) {
            advance();
            advance();
            // Arrays are outside the declared-type lattice.
            return TypeRef{DeclaredType::Unknown, {}};
        }
        return classify_type(name);
    }

    void parse_method_rest(MethodDecl& m, TypeDecl& enclosing, std::size_t beginTok) {
        eat_punct("(");
        while (!at_end() && !cur().is_punct(")")) {
            ParamDecl p;
            std::size_t pBegin = pos_;
            p.annotations = parse_annotations();
            if (cur().is_ident("final")) advance();
            p.type = parse_type_ref();
            if (cur().is_punct("...")) {
                p.isVarargs = true;
                advance();
            }
            if (cur().is(Token::Kind::Ident)) {
                p.name = cur().text;
                advance();
            }
            while (eat_punct("[")) eat_punct("]");
            p.span = span_from(pBegin);
            if (!p.name.empty()) m.params.push_back(std::move(p));
            if (!eat_punct(",")) break;
        }
        eat_punct(")");
        while (eat_punct("[")) eat_punct("]");
        if (cur().is_ident("throws")) {
            advance();
            while (cur().is(Token::Kind::Ident)) {
                parse_dotted_name();
                if (!eat_punct(",")) break;
            }
        }
        if (cur().is_punct(";")) {
            advance();
            m.span = span_from(beginTok);
            return; // abstract / interface method
        }
        if (cur().is_punct("{")) {
            std::size_t errorsBefore = unit_.parseErrors.size();
            m.body = parse_block(enclosing);
            m.bodyParsed = unit_.parseErrors.size() == errorsBefore;
        } else {
            record_error(cur(), "expected method body");
            m.bodyParsed = false;
            skip_to_member_boundary();
        }
        m.span = span_from(beginTok);
    }

    // --- statements -----------------------------------------------------

    std::vector<Stmt> parse_block(TypeDecl& enclosing) {
        std::vector<Stmt> out;
        if (!eat_punct("{")) return out;
        while (!at_end() && !cur().is_punct("}")) {
            parse_statement(out, enclosing);
        }
        eat_punct("}");
        return out;
    }

    void parse_block_into(std::vector<Stmt>& out, TypeDecl& enclosing) {
        if (!eat_punct("{")) {
            parse_statement(out, enclosing);
            return;
        }
        while (!at_end() && !cur().is_punct("}")) {
            parse_statement(out, enclosing);
        }
        eat_punct("}");
    }

    void parse_paren_condition(std::vector<Stmt>& out, TypeDecl& enclosing) {
        if (!eat_punct("(")) return;
        // Condition expressions may contain call sites worth extracting, so
        // they are kept as ExprStmt rather than skipped.
        std::size_t beginTok = pos_;
        ExprPtr e = parse_expression(enclosing);
        Stmt s;
        s.kind = Stmt::Kind::ExprStmt;
        s.value = std::move(e);
        s.span = span_from(beginTok);
        out.push_back(std::move(s));
        // Tolerate leftovers (e.g. unsupported operators already consumed
        // into Unknown) up to the closing paren.
        int depth = 0;
        while (!at_end()) {
            if (cur().is_punct("(")) ++depth;
            else if (cur().is_punct(")")) {
                if (depth == 0) {
                    advance();
                    return;
                }
                --depth;
            }
            advance();
        }
    }

    void parse_statement(std::vector<Stmt>& out, TypeDecl& enclosing) {
        const Token& t = cur();
        std::size_t beginTok = pos_;

        if (t.is_punct(";")) {
            advance();
            return;
        }
        if (t.is_punct("{")) {
            parse_block_into(out, enclosing);
            return;
        }
        if (t.is_ident("if") || t.is_ident("while") || t.is_ident("switch") ||
            t.is_ident("synchronized")) {
            bool isSwitch = t.is_ident("switch");
            advance();
            parse_paren_condition(out, enclosing);
            if (isSwitch) {
                parse_switch_body(out, enclosing);
            } else {
                parse_statement(out, enclosing);
                if (cur().is_ident("else")) {
                    advance();
                    parse_statement(out, enclosing);
                }
            }
            return;
        }
        if (t.is_ident("do")) {
            advance();
            parse_statement(out, enclosing);
            if (cur().is_ident("while")) {
                advance();
                parse_paren_condition(out, enclosing);
            }
            eat_punct(";");
            return;
        }
        if (t.is_ident("for")) {
            advance();
            parse_for_header(out, enclosing);
            parse_statement(out, enclosing);
            return;
        }
        if (t.is_ident("try")) {
            advance();
            if (cur().is_punct("(")) parse_paren_condition(out, enclosing); // try-with-resources
            parse_block_into(out, enclosing);
            while (cur().is_ident("catch")) {
                advance();
                if (cur().is_punct("(")) skip_balanced("(", ")");
                parse_block_into(out, enclosing);
            }
            if (cur().is_ident("finally")) {
                advance();
                parse_block_into(out, enclosing);
            }
            return;
        }
        if (t.is_ident("return") || t.is_ident("throw")) {
            bool isReturn = t.is_ident("return");
            advance();
            Stmt s;
            s.kind = isReturn ? Stmt::Kind::Return : Stmt::Kind::ExprStmt;
            if (!cur().is_punct(";")) s.value = parse_expression(enclosing);
            s.span = span_from(beginTok);
            out.push_back(std::move(s));
            if (!eat_punct(";")) recover_statement();
            return;
        }
        if (t.is_ident("break") || t.is_ident("continue")) {
            advance();
            if (cur().is(Token::Kind::Ident)) advance(); // label
            eat_punct(";");
            return;
        }
        // Label: `name:` (but not `case x:` which only occurs inside switch).
        if (t.is(Token::Kind::Ident) && peek().is_punct(":") && !t.is_ident("default")) {
            // Could also be a ternary remnant; labels are rare, just skip both
            // tokens when the next token opens a statement.
            if (peek(2).is_ident("for") || peek(2).is_ident("while") || peek(2).is_punct("{")) {
                advance();
                advance();
                return;
            }
        }

        // Local variable declaration?
        if (try_parse_local_decl(out, enclosing)) return;

        // Expression statement or assignment.
        ExprPtr lhs = parse_expression(enclosing);
        if (cur().is_punct("=") || cur().is_punct("+=")) {
            bool compound = cur().is_punct("+=");
            advance();
            ExprPtr rhs = parse_expression(enclosing);
            Stmt s;
            s.kind = Stmt::Kind::Assign;
            assign_target(*lhs, s);
            if (compound) {
                auto cat = std::make_shared<Expr>();
                cat->kind = Expr::Kind::Concat;
                cat->lhs = lhs;
                cat->rhs = rhs;
                cat->span = Span{lhs->span.begin, rhs->span.end, lhs->span.line};
                s.value = std::move(cat);
            } else {
                s.value = std::move(rhs);
            }
            s.span = span_from(beginTok);
            out.push_back(std::move(s));
        } else if (cur().is_punct("-=") || cur().is_punct("*=") || cur().is_punct("/=") ||
                   cur().is_punct("%=") || cur().is_punct("&=") || cur().is_punct("|=") ||
                   cur().is_punct("^=") || cur().is_punct("<<=") || cur().is_punct(">>=")) {
            advance();
            ExprPtr rhs = parse_expression(enclosing);
            Stmt s;
            s.kind = Stmt::Kind::Assign;
            assign_target(*lhs, s);
            s.value = make_unknown(slice(Span{lhs->span.begin, rhs->span.end, lhs->span.line}),
                                   Span{lhs->span.begin, rhs->span.end, lhs->span.line});
            s.span = span_from(beginTok);
            out.push_back(std::move(s));
        } else {
            Stmt s;
            s.kind = Stmt::Kind::ExprStmt;
            s.value = std::move(lhs);
            s.span = span_from(beginTok);
            out.push_back(std::move(s));
        }
        if (!eat_punct(";")) {
            if (!cur().is_punct("}")) {
                record_error(cur(), "expected ';' in statement");
                recover_statement();
                // Surface the skipped region.
                Stmt bad;
                bad.kind = Stmt::Kind::Unparsed;
                bad.span = span_from(beginTok);
                out.push_back(std::move(bad));
            }
        }
    }

    void parse_switch_body(std::vector<Stmt>& out, TypeDecl& enclosing) {
        if (!eat_punct("{")) return;
        while (!at_end() && !cur().is_punct("}")) {
            if (cur().is_ident("case")) {
                advance();
                while (!at_end() && !cur().is_punct(":") && !cur().is_punct("{")) advance();
                eat_punct(":");
                continue;
            }
            if (cur().is_ident("default")) {
                advance();
                eat_punct(":");
                continue;
            }
            parse_statement(out, enclosing);
        }
        eat_punct("}");
    }

    void parse_for_header(std::vector<Stmt>& out, TypeDecl& enclosing) {
        if (!eat_punct("(")) return;
        // classic: init; cond; update   |   for-each: Type name : expr
        if (!cur().is_punct(";")) {
            std::size_t save = pos_;
            if (!try_parse_local_decl(out, enclosing, /*inForHeader=*/true)) {
                pos_ = save;
                ExprPtr e = parse_expression(enclosing);
                Stmt s;
                s.kind = Stmt::Kind::ExprStmt;
                s.value = std::move(e);
                s.span = span_from(save);
                out.push_back(std::move(s));
            }
        }
        // Consume the rest of the header without structure.
        int depth = 0;
        while (!at_end()) {
            if (cur().is_punct("(")) ++depth;
            else if (cur().is_punct(")")) {
                if (depth == 0) {
                    advance();
                    return;
                }
                --depth;
            }
            advance();
        }
    }

    bool try_parse_local_decl(std::vector<Stmt>& out, TypeDecl& enclosing,
                              bool inForHeader = false) {
        if (!cur().is(Token::Kind::Ident)) return false;
        if (cur().is_ident("new") || cur().is_ident("this") || cur().is_ident("super") ||
            cur().is_ident("true") || cur().is_ident("false") || cur().is_ident("null"))
            return false;
        std::size_t save = pos_;
        TypeRef type = parse_type_ref();
        if (!cur().is(Token::Kind::Ident)) {
            pos_ = save;
            return false;
        }
        std::string name = cur().text;
        const Token& after = peek();
        bool looksDecl = after.is_punct("=") || after.is_punct(";") || after.is_punct(",") ||
                         (inForHeader && after.is_punct(":")) ||
                         (after.is_punct("[") && peek(2).is_punct("]"));
        if (!looksDecl) {
            pos_ = save;
            return false;
        }
        advance(); // name
        while (true) {
            while (eat_punct("[")) eat_punct("]");
            Stmt s;
            s.kind = Stmt::Kind::LocalDecl;
            s.declType = type;
            s.name = name;
            if (inForHeader && cur().is_punct(":")) {
                advance();
                s.value = parse_expression(enclosing); // for-each source
                s.span = span_from(save);
                out.push_back(std::move(s));
                return true;
            }
            if (eat_punct("=")) s.value = parse_expression(enclosing);
            s.span = span_from(save);
            out.push_back(std::move(s));
            if (eat_punct(",") && cur().is(Token::Kind::Ident)) {
                name = cur().text;
                save = pos_;
                advance();
                continue;
            }
            break;
        }
        if (!inForHeader) {
            if (!eat_punct(";")) {
                record_error(cur(), "expected ';' after local declaration");
                recover_statement();
            }
        } else {
            eat_punct(";");
        }
        return true;
    }

    void recover_statement() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && t.is_punct(";")) {
                advance();
                return;
            }
            if (depth == 0 && t.is_punct("}")) return;
            if (t.is_punct("{") || t.is_punct("(")) ++depth;
            else if (t.is_punct("}") || t.is_punct(")")) {
                if (depth == 0) return;
                --depth;
            }
            advance();
        }
    }

    static void assign_target(const Expr& lhs, Stmt& s) {
        s.targetText = flatten_name(lhs);
        if (lhs.kind == Expr::Kind::NameRef) {
            s.name = lhs.text;
        } else if (lhs.kind == Expr::Kind::FieldAccess) {
            s.name = lhs.text; // this.x assigns field x; obj.f resolves if visible
        }
    }

    static std::string flatten_name(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::NameRef: return e.text;
        case Expr::Kind::FieldAccess: {
            std::string base = e.receiver ? flatten_name(*e.receiver) : e.receiverName;
            if (base.empty()) return e.text;
            return base + "." + e.text;
        }
        default: return {};
        }
    }

    // --- expressions ----------------------------------------------------

    ExprPtr parse_expression(TypeDecl& enclosing) { return parse_ternary(enclosing); }

    ExprPtr parse_ternary(TypeDecl& enclosing) {
        std::size_t beginTok = pos_;
        ExprPtr cond = parse_binary(enclosing);
        if (cur().is_punct("?")) {
            advance();
            parse_expression(enclosing);
            eat_punct(":");
            parse_expression(enclosing);
            Span sp = span_from(beginTok);
            return make_unknown(slice(sp), sp);
        }
        return cond;
    }

    static bool is_other_binary_op(const Token& t) {
        if (t.kind != Token::Kind::Punct) return false;
        static const std::set<std::string> ops = {
            "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=",
            "&&", "||", "&", "|", "^", "<<", ">>", ">>>",
        };
        return ops.count(t.text) > 0;
    }

    ExprPtr parse_binary(TypeDecl& enclosing) {
        std::size_t beginTok = pos_;
        ExprPtr left = parse_unary(enclosing);
        while (true) {
            if (cur().is_punct("+")) {
                advance();
                ExprPtr right = parse_unary(enclosing);
                auto cat = std::make_shared<Expr>();
                cat->kind = Expr::Kind::Concat;
                cat->lhs = std::move(left);
                cat->rhs = std::move(right);
                cat->span = span_from(beginTok);
                left = std::move(cat);
                continue;
            }
            if (cur().is_ident("instanceof")) {
                advance();
                parse_type_ref();
                Span sp = span_from(beginTok);
                left = make_unknown(slice(sp), sp);
                continue;
            }
            if (is_other_binary_op(cur())) {
                advance();
                parse_unary(enclosing);
                Span sp = span_from(beginTok);
                left = make_unknown(slice(sp), sp);
                continue;
            }
            break;
        }
        return left;
    }

    ExprPtr parse_unary(TypeDecl& enclosing) {
        std::size_t beginTok = pos_;
        if (cur().is_punct("-") && cur().kind == Token::Kind::Punct &&
            peek().is(Token::Kind::Number)) {
            advance();
            const Token& num = cur();
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NumberLit;
            e->text = "-" + num.text;
            e->numIsInt = num.isInt;
            e->span = span_from(beginTok);
            return e;
        }
        if (cur().is_punct("!") || cur().is_punct("~") || cur().is_punct("-") ||
            cur().is_punct("++") || cur().is_punct("--")) {
            advance();
            parse_unary(enclosing);
            Span sp = span_from(beginTok);
            return make_unknown(slice(sp), sp);
        }
        return parse_postfix(enclosing);
    }

    std::vector<ExprPtr> parse_args(TypeDecl& enclosing) {
        std::vector<ExprPtr> args;
        if (!eat_punct("(")) return args;
        while (!at_end() && !cur().is_punct(")")) {
            args.push_back(parse_expression(enclosing));
            if (!eat_punct(",")) break;
        }
        eat_punct(")");
        return args;
    }

    // Receivers that start with an uppercase letter are treated as type
    // names (String.format, Glide.with); everything else stays an expression.
    static bool looks_like_type_name(const Expr& e) {
        if (e.kind != Expr::Kind::NameRef) return false;
        return !e.text.empty() && std::isupper(static_cast<unsigned char>(e.text[0]));
    }

    void note_qualified_ref(const Expr& e) {
        std::string dotted = flatten_name(e);
        if (dotted.find('.') != std::string::npos)
            unit_.qualifiedRefs.push_back(std::move(dotted));
    }

    ExprPtr parse_postfix(TypeDecl& enclosing) {
        std::size_t beginTok = pos_;
        ExprPtr e = parse_primary(enclosing);
        while (true) {
            if (cur().is_punct(".")) {
                // method reference `a::b` never reaches here; `.` chains only
                if (!peek().is(Token::Kind::Ident)) {
                    advance();
                    break;
                }
                advance();
                std::string member = cur().text;
                advance();
                if (cur().is_punct("<")) skip_generics(); // explicit type args
                if (cur().is_punct("(")) {
                    auto call = std::make_shared<Expr>();
                    call->kind = Expr::Kind::MethodCall;
                    call->text = std::move(member);
                    if (looks_like_type_name(*e)) {
                        call->receiverName = e->text;
                    } else {
                        note_qualified_ref(*e);
                        call->receiver = e;
                    }
                    call->args = parse_args(enclosing);
                    call->span = span_from(beginTok);
                    e = std::move(call);
                } else {
                    auto fa = std::make_shared<Expr>();
                    fa->kind = Expr::Kind::FieldAccess;
                    fa->text = std::move(member);
                    fa->receiver = e;
                    fa->span = span_from(beginTok);
                    note_qualified_ref(*fa);
                    e = std::move(fa);
                }
                continue;
            }
            if (cur().is_punct("(") && e->kind == Expr::Kind::NameRef) {
                auto call = std::make_shared<Expr>();
                call->kind = Expr::Kind::MethodCall;
                call->text = e->text;
                call->args = parse_args(enclosing);
                call->span = span_from(beginTok);
                e = std::move(call);
                continue;
            }
            if (cur().is_punct("[")) {
                skip_balanced("[", "]");
                Span sp = span_from(beginTok);
                e = make_unknown(slice(sp), sp);
                continue;
            }
            if (cur().is_punct("++") || cur().is_punct("--")) {
                advance();
                Span sp = span_from(beginTok);
                e = make_unknown(slice(sp), sp);
                continue;
            }
            if (cur().is_punct("::")) {
                advance();
                if (cur().is(Token::Kind::Ident) || cur().is_ident("new")) advance();
                Span sp = span_from(beginTok);
                e = make_unknown(slice(sp), sp);
                continue;
            }
            break;
        }
        return e;
    }

    ExprPtr parse_primary(TypeDecl& enclosing) {
        const Token& t = cur();
        std::size_t beginTok = pos_;

        if (t.is(Token::Kind::String)) {
            advance();
            return make_string_lit(t.text, token_span(t));
        }
        if (t.is(Token::Kind::CharLit)) {
            // Chars participate in concatenation ('/' + seg); treat as text.
            advance();
            return make_string_lit(t.text, token_span(t));
        }
        if (t.is(Token::Kind::Number)) {
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NumberLit;
            e->text = t.text;
            e->numIsInt = t.isInt;
            e->span = token_span(t);
            return e;
        }
        if (t.is_ident("true") || t.is_ident("false")) {
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::BoolLit;
            e->boolValue = t.text == "true";
            e->span = token_span(t);
            return e;
        }
        if (t.is_ident("null")) {
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NullLit;
            e->span = token_span(t);
            return e;
        }
        if (t.is_ident("new")) {
            advance();
            std::string typeName = parse_dotted_name();
            skip_generics();
            if (cur().is_punct("[")) { // array creation
                while (cur().is_punct("[")) skip_balanced("[", "]");
                if (cur().is_punct("{")) skip_balanced("{", "}");
                Span sp = span_from(beginTok);
                return make_unknown(slice(sp), sp);
            }
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::New;
            e->text = std::move(typeName);
            e->args = parse_args(enclosing);
            if (cur().is_punct("{")) {
                // Anonymous class body: parse as a nested type so call sites
                // inside remain reachable.
                TypeDecl anon;
                anon.name = "<anonymous#" + std::to_string(++anonCounter_) + ">";
                advance();
                parse_type_body(anon);
                lower_type(anon, nullptr);
                enclosing.nested.push_back(std::move(anon));
            }
            e->span = span_from(beginTok);
            return e;
        }
        if (t.is_punct("(")) {
            // Lambda `(a, b) -> ...`, cast `(Type) expr`, or grouping.
            std::size_t save = pos_;
            advance();
            if (cur().is_punct(")") && peek().is_punct("->")) {
                advance();
                advance();
                skip_lambda_body(enclosing);
                Span sp = span_from(beginTok);
                return make_unknown(slice(sp), sp);
            }
            ExprPtr inner = parse_expression(enclosing);
            if (cur().is_punct(",")) { // lambda parameter list
                while (!at_end() && !cur().is_punct(")")) advance();
            }
            if (!eat_punct(")")) {
                pos_ = save;
                advance();
                Span sp = span_from(beginTok);
                return make_unknown(slice(sp), sp);
            }
            if (cur().is_punct("->")) {
                advance();
                skip_lambda_body(enclosing);
                Span sp = span_from(beginTok);
                return make_unknown(slice(sp), sp);
            }
            // Cast if the parenthesized expr is a bare (possibly dotted) name
            // and another primary follows immediately.
            bool castLike = inner->kind == Expr::Kind::NameRef ||
                            inner->kind == Expr::Kind::FieldAccess;
            bool primaryFollows = cur().is(Token::Kind::Ident) ||
                                  cur().is(Token::Kind::String) ||
                                  cur().is(Token::Kind::Number) ||
                                  cur().is(Token::Kind::CharLit) || cur().is_punct("(");
            if (castLike && primaryFollows && !is_other_binary_op(cur()) &&
                !cur().is_punct("+")) {
                return parse_unary(enclosing); // drop the cast
            }
            return inner;
        }
        if (t.is(Token::Kind::Ident)) {
            advance();
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::NameRef;
            e->text = t.text;
            e->span = token_span(t);
            return e;
        }
        advance();
        return make_unknown(t.text, token_span(t));
    }

    void skip_lambda_body(TypeDecl& enclosing) {
        if (cur().is_punct("{")) {
            // Statements inside lambdas still matter for extraction.
            std::vector<Stmt> stmts = parse_block(enclosing);
            MethodDecl lambda;
            lambda.name = "<lambda#" + std::to_string(++anonCounter_) + ">";
            lambda.body = std::move(stmts);
            TypeDecl anon;
            anon.name = lambda.name;
            anon.methods.push_back(std::move(lambda));
            enclosing.nested.push_back(std::move(anon));
        } else {
            parse_expression(enclosing);
        }
    }

    // --- '+' lowering ----------------------------------------------------
    //
    // Concat is kept only when at least one operand may be string-typed.
    // A '+' over two operands that are definitely numeric or boolean is
    // arithmetic: literal operands fold, everything else degrades to Unknown.

    using TypeEnv = std::map<std::string, DeclaredType>;

    static bool definitely_non_string(const Expr& e, const TypeEnv& env) {
        switch (e.kind) {
        case Expr::Kind::NumberLit:
        case Expr::Kind::BoolLit:
            return true;
        case Expr::Kind::NameRef: {
            auto it = env.find(e.text);
            if (it == env.end()) return false;
            return it->second == DeclaredType::NumberInt ||
                   it->second == DeclaredType::NumberFloat ||
                   it->second == DeclaredType::Boolean;
        }
        case Expr::Kind::FieldAccess: {
            auto it = env.find(e.text);
            if (it == env.end()) return false;
            return it->second == DeclaredType::NumberInt ||
                   it->second == DeclaredType::NumberFloat ||
                   it->second == DeclaredType::Boolean;
        }
        default:
            return false;
        }
    }

    ExprPtr lower_expr(const ExprPtr& e, const TypeEnv& env) {
        if (!e) return e;
        switch (e->kind) {
        case Expr::Kind::Concat: {
            ExprPtr l = lower_expr(e->lhs, env);
            ExprPtr r = lower_expr(e->rhs, env);
            if (definitely_non_string(*l, env) && definitely_non_string(*r, env)) {
                if (l->kind == Expr::Kind::NumberLit && r->kind == Expr::Kind::NumberLit &&
                    l->numIsInt && r->numIsInt) {
                    auto folded = std::make_shared<Expr>();
                    folded->kind = Expr::Kind::NumberLit;
                    folded->numIsInt = true;
                    folded->text = std::to_string(std::stoll(normalize_int(l->text)) +
                                                  std::stoll(normalize_int(r->text)));
                    folded->span = e->span;
                    return folded;
                }
                return make_unknown(slice(e->span), e->span);
            }
            auto out = std::make_shared<Expr>(*e);
            out->lhs = std::move(l);
            out->rhs = std::move(r);
            return out;
        }
        case Expr::Kind::MethodCall:
        case Expr::Kind::New: {
            auto out = std::make_shared<Expr>(*e);
            out->receiver = lower_expr(e->receiver, env);
            for (auto& a : out->args) a = lower_expr(a, env);
            return out;
        }
        case Expr::Kind::FieldAccess: {
            auto out = std::make_shared<Expr>(*e);
            out->receiver = lower_expr(e->receiver, env);
            return out;
        }
        default:
            return e;
        }
    }

    static std::string normalize_int(const std::string& s) {
        if (s.rfind("0x", 0) == 0 || s.rfind("0b", 0) == 0) return "0";
        return s.empty() ? "0" : s;
    }

    void lower_type(TypeDecl& t, const TypeEnv* outer) {
        TypeEnv fieldsEnv = outer ? *outer : TypeEnv{};
        for (const auto& f : t.fields) fieldsEnv[f.name] = f.declaredType.kind;
        for (auto& f : t.fields)
            if (f.initializer) f.initializer = lower_expr(f.initializer, fieldsEnv);
        for (auto& m : t.methods) {
            TypeEnv env = fieldsEnv;
            for (const auto& p : m.params) env[p.name] = p.type.kind;
            for (const auto& s : m.body)
                if (s.kind == Stmt::Kind::LocalDecl) env[s.name] = s.declType.kind;
            for (auto& s : m.body)
                if (s.value) s.value = lower_expr(s.value, env);
        }
        for (auto& n : t.nested) lower_type(n, &fieldsEnv);
    }
};

} // namespace

SourceUnit parse_unit(std::string_view text, std::string path) {
    SourceUnit unit;
    unit.path = std::move(path);
    try {
        std::string sanitized = detail::sanitize_utf8(text);
        std::vector<Token> toks = detail::lex(sanitized);
        Parser p(sanitized, std::move(toks), unit);
        p.run();
    } catch (const std::exception& e) {
        unit.parseErrors.push_back({Span{}, std::string("internal parser failure: ") + e.what()});
    } catch (...) {
        unit.parseErrors.push_back({Span{}, "internal parser failure"});
    }
    return unit;
}

// --- scopes --------------------------------------------------------------

const Declaration* Scope::lookup(const std::string& name) const {
    // Latest local declaration wins, then params, then fields.
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
        if (it->name == name) return &*it;
    for (const auto& p : params_)
        if (p.name == name) return &p;
    for (const auto& f : fields_)
        if (f.name == name) return &f;
    return nullptr;
}

Declaration* Scope::find(std::vector<Declaration>& v, const std::string& name) {
    for (auto it = v.rbegin(); it != v.rend(); ++it)
        if (it->name == name) return &*it;
    return nullptr;
}

void Scope::declare_field(Declaration d) {
    d.isField = true;
    fields_.push_back(std::move(d));
}

void Scope::declare_param(Declaration d) {
    d.isParam = true;
    params_.push_back(std::move(d));
}

void Scope::declare_local(Declaration d) { locals_.push_back(std::move(d)); }

void Scope::add_assignment(const std::string& name, std::size_t pos, ExprPtr value) {
    Declaration* d = find(locals_, name);
    if (!d) d = find(params_, name);
    if (!d) d = find(fields_, name);
    if (!d) {
        // Assignment to a name with no visible declaration (e.g. inherited or
        // decompiler-mangled); track it as an untyped local.
        Declaration fresh;
        fresh.name = name;
        fresh.declaredType = TypeRef{DeclaredType::Unknown, {}};
        locals_.push_back(std::move(fresh));
        d = &locals_.back();
    }
    d->assignments.emplace_back(pos, std::move(value));
}

Scope build_field_scope(const TypeDecl& enclosing) {
    Scope s;
    for (const auto& f : enclosing.fields) {
        Declaration d;
        d.name = f.name;
        d.declaredType = f.declaredType;
        if (f.initializer) d.assignments.emplace_back(f.span.begin, f.initializer);
        s.declare_field(std::move(d));
    }
    return s;
}

namespace {

void walk_expr_literals(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
    if (!e) return;
    if (e->kind == Expr::Kind::StringLit) fn(*e);
    walk_expr_literals(e->lhs, fn);
    walk_expr_literals(e->rhs, fn);
    walk_expr_literals(e->receiver, fn);
    for (const auto& a : e->args) walk_expr_literals(a, fn);
}

void walk_type_literals(const TypeDecl& t, const std::function<void(const Expr&)>& fn) {
    for (const auto& f : t.fields)
        if (f.initializer) walk_expr_literals(f.initializer, fn);
    for (const auto& m : t.methods)
        for (const auto& s : m.body)
            if (s.value) walk_expr_literals(s.value, fn);
    for (const auto& n : t.nested) walk_type_literals(n, fn);
}

} // namespace

void for_each_string_literal(const SourceUnit& unit,
                             const std::function<void(const Expr&)>& fn) {
    for (const auto& t : unit.types) walk_type_literals(t, fn);
}

Scope build_scope(const MethodDecl& method, const TypeDecl& enclosing) {
    Scope s = build_field_scope(enclosing);
    for (const auto& p : method.params) {
        Declaration d;
        d.name = p.name;
        d.declaredType = p.type;
        s.declare_param(std::move(d));
    }
    for (const auto& stmt : method.body) {
        switch (stmt.kind) {
        case Stmt::Kind::LocalDecl: {
            Declaration d;
            d.name = stmt.name;
            d.declaredType = stmt.declType;
            if (stmt.value) d.assignments.emplace_back(stmt.span.begin, stmt.value);
            s.declare_local(std::move(d));
            break;
        }
        case Stmt::Kind::Assign:
            if (!stmt.name.empty() && stmt.value)
                s.add_assignment(stmt.name, stmt.span.begin, stmt.value);
            break;
        default:
            break;
        }
    }
    return s;
}

} // namespace apimine
