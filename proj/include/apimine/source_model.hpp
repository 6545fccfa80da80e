#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apimine {

// Byte range within one source file, plus the 1-based line of `begin`.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 0;
};

enum class DeclaredType {
    String,
    NumberInt,
    NumberFloat,
    Boolean,
    Object,
    Unknown,
};

// Declared type of a field/local/param. `objectName` is set for Object only.
struct TypeRef {
    DeclaredType kind = DeclaredType::Unknown;
    std::string objectName;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression subset the downstream analysis understands. Anything else is
// carried as Unknown(rawText) so parsing never fails outright.
struct Expr {
    enum class Kind {
        StringLit,   // text = decoded literal
        NumberLit,   // text = lexeme without suffix, numIsInt set
        BoolLit,
        NullLit,
        NameRef,     // text = identifier
        Concat,      // lhs + rhs, at least one operand possibly string-typed
        MethodCall,  // receiver expr or receiverName (static), text = method name
        New,         // text = type name
        FieldAccess, // receiver.text
        Unknown,     // text = raw source slice
    };

    Kind kind = Kind::Unknown;
    Span span;

    std::string text;
    bool numIsInt = true;
    bool boolValue = false;

    ExprPtr lhs, rhs;             // Concat
    ExprPtr receiver;             // MethodCall / FieldAccess
    std::string receiverName;     // MethodCall on a type name, e.g. String.format
    std::vector<ExprPtr> args;    // MethodCall / New
};

ExprPtr make_string_lit(std::string text, Span span = {});
ExprPtr make_unknown(std::string raw, Span span = {});

// Annotation arguments are flattened to (key, value) string pairs; the single
// positional argument uses key "value", array elements repeat the key.
struct AnnotationArg {
    std::string key;
    std::string value;
    bool isString = false; // value came from a string literal
};

struct Annotation {
    std::string name;
    std::vector<AnnotationArg> args;
    Span span;

    std::optional<std::string> string_arg(std::string_view key = "value") const;
};

struct ParamDecl {
    TypeRef type;
    std::string name;
    std::vector<Annotation> annotations;
    bool isVarargs = false;
    Span span;
};

struct FieldDecl {
    std::string name;
    TypeRef declaredType;
    ExprPtr initializer; // may be null
    std::vector<Annotation> annotations;
    bool isStatic = false;
    bool isTransient = false;
    Span span;
};

struct Stmt {
    enum class Kind {
        LocalDecl, // declType name [= value]
        Assign,    // targetText = value (compound += already lowered to Concat)
        ExprStmt,  // value
        Return,    // value may be null
        Unparsed,  // region skipped after a parse error
    };

    Kind kind = Kind::Unparsed;
    Span span;
    TypeRef declType;
    std::string name;       // LocalDecl variable / Assign simple target
    std::string targetText; // Assign full target path, e.g. "this.base"
    ExprPtr value;
};

struct MethodDecl {
    std::string name;
    TypeRef returnType;
    std::vector<ParamDecl> params;
    std::vector<Annotation> annotations;
    std::vector<Stmt> body; // nested blocks flattened in source order
    bool isConstructor = false;
    bool bodyParsed = true;
    Span span;
};

struct TypeDecl {
    std::string name;
    bool isInterface = false;
    std::vector<Annotation> annotations;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    std::vector<TypeDecl> nested; // includes anonymous class bodies
    Span span;
};

struct ParseError {
    Span span;
    std::string message;
};

struct SourceUnit {
    std::string path;
    std::string packageName;
    std::vector<std::string> imports;
    std::vector<TypeDecl> types;
    std::vector<ParseError> parseErrors;
    // Dotted names seen as call receivers / qualified references; used by
    // library detection alongside imports.
    std::vector<std::string> qualifiedRefs;
};

// Total: any byte sequence yields a SourceUnit, malformed regions become
// Unknown exprs or parseErrors. Invalid UTF-8 bytes are replaced up front.
SourceUnit parse_unit(std::string_view text, std::string path);

// One visible declaration: type plus assignments ordered by source position.
// Field initializers count as assignment index 0 with position of the field.
struct Declaration {
    std::string name;
    TypeRef declaredType;
    std::vector<std::pair<std::size_t, ExprPtr>> assignments;
    bool isField = false;
    bool isParam = false;
};

class Scope {
public:
    // Innermost declaration wins: locals shadow params shadow fields.
    const Declaration* lookup(const std::string& name) const;

    void declare_field(Declaration d);
    void declare_param(Declaration d);
    void declare_local(Declaration d);
    void add_assignment(const std::string& name, std::size_t pos, ExprPtr value);

    const std::vector<Declaration>& fields() const { return fields_; }
    const std::vector<Declaration>& locals() const { return locals_; }

private:
    Declaration* find(std::vector<Declaration>& v, const std::string& name);
    std::vector<Declaration> fields_;
    std::vector<Declaration> params_;
    std::vector<Declaration> locals_;
};

Scope build_scope(const MethodDecl& method, const TypeDecl& enclosing);

// Scope over a type's fields only, for field-initializer resolution.
Scope build_field_scope(const TypeDecl& enclosing);

// Visits every string literal in the unit (field initializers, statements,
// nested and anonymous types), in source order per container.
void for_each_string_literal(const SourceUnit& unit,
                             const std::function<void(const Expr&)>& fn);

} // namespace apimine
