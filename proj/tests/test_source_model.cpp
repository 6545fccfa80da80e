#include "apimine/source_model.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace apimine;

TEST_CASE("single field with string initializer") {
    SourceUnit u = parse_unit(R"(class A { String u = "http://a.com"; })", "A.java");
    REQUIRE(u.types.size() == 1);
    const TypeDecl& a = u.types[0];
    CHECK(a.name == "A");
    REQUIRE(a.fields.size() == 1);
    CHECK(a.fields[0].name == "u");
    CHECK(a.fields[0].declaredType.kind == DeclaredType::String);
    REQUIRE(a.fields[0].initializer);
    CHECK(a.fields[0].initializer->kind == Expr::Kind::StringLit);
    CHECK(a.fields[0].initializer->text == "http://a.com");
}

TEST_CASE("empty file parses cleanly") {
    SourceUnit u = parse_unit("", "Empty.java");
    CHECK(u.types.empty());
    CHECK(u.parseErrors.empty());
}

TEST_CASE("package and imports") {
    SourceUnit u = parse_unit(
        "package com.example.app;\n"
        "import java.net.HttpURLConnection;\n"
        "import okhttp3.*;\n"
        "import static org.junit.Assert.assertTrue;\n"
        "class C {}\n",
        "C.java");
    CHECK(u.packageName == "com.example.app");
    REQUIRE(u.imports.size() == 3);
    CHECK(u.imports[0] == "java.net.HttpURLConnection");
    CHECK(u.imports[1] == "okhttp3.*");
    CHECK(u.imports[2] == "org.junit.Assert.assertTrue");
}

TEST_CASE("damaged method body yields parse error but siblings survive") {
    SourceUnit u = parse_unit(
        "class Broken {\n"
        "  String good() { return \"ok\"; }\n"
        "  void bad() { int x = ; %% ## !! }\n"
        "  String alsoGood() { return \"fine\"; }\n"
        "}\n",
        "Broken.java");
    REQUIRE(u.types.size() == 1);
    CHECK(u.types[0].methods.size() == 3);
    CHECK(!u.parseErrors.empty());
    // The undamaged methods still carry their statements.
    const MethodDecl& good = u.types[0].methods[0];
    REQUIRE(good.body.size() == 1);
    CHECK(good.body[0].kind == Stmt::Kind::Return);
    CHECK(good.body[0].value->text == "ok");
    const MethodDecl& alsoGood = u.types[0].methods[2];
    REQUIRE(alsoGood.body.size() == 1);
    CHECK(alsoGood.body[0].value->text == "fine");
}

TEST_CASE("string literal escapes decode exactly once") {
    SourceUnit u = parse_unit(
        "class E { String a = \"line\\nbreak\"; String b = \"quote\\\"q\"; "
        "String c = \"uni\\u00e9\"; String d = \"back\\\\slash\"; }",
        "E.java");
    REQUIRE(u.types.size() == 1);
    REQUIRE(u.types[0].fields.size() == 4);
    CHECK(u.types[0].fields[0].initializer->text == "line\nbreak");
    CHECK(u.types[0].fields[1].initializer->text == "quote\"q");
    CHECK(u.types[0].fields[2].initializer->text == "uni\xC3\xA9");
    CHECK(u.types[0].fields[3].initializer->text == "back\\slash");
}

TEST_CASE("decompiler comment markers are ordinary comments") {
    SourceUnit u = parse_unit(
        "class J {\n"
        "  /* JADX WARNING: inconsistent code */\n"
        "  void m() { String s = \"x\"; }\n"
        "}\n",
        "J.java");
    REQUIRE(u.types.size() == 1);
    REQUIRE(u.types[0].methods.size() == 1);
    CHECK(u.parseErrors.empty());
}

TEST_CASE("parsing is total on arbitrary bytes") {
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> len(0, 400);
    for (int round = 0; round < 200; ++round) {
        std::string garbage;
        int n = len(rng);
        for (int i = 0; i < n; ++i) garbage.push_back(static_cast<char>(byte(rng)));
        SourceUnit u = parse_unit(garbage, "garbage.java");
        CHECK(u.path == "garbage.java");
    }
}

TEST_CASE("concat only with a possibly-string operand") {
    SourceUnit u = parse_unit(
        "class C {\n"
        "  void m() {\n"
        "    int a = 1; int b = 2;\n"
        "    int n = a + b;\n"
        "    String s = \"x\" + a;\n"
        "    int folded = 1 + 2;\n"
        "  }\n"
        "}\n",
        "C.java");
    REQUIRE(u.types.size() == 1);
    const auto& body = u.types[0].methods[0].body;
    REQUIRE(body.size() == 5);
    // a + b over two ints is arithmetic, not concatenation.
    CHECK(body[2].value->kind == Expr::Kind::Unknown);
    CHECK(body[3].value->kind == Expr::Kind::Concat);
    // Literal int addition folds.
    CHECK(body[4].value->kind == Expr::Kind::NumberLit);
    CHECK(body[4].value->text == "3");
}

TEST_CASE("build_scope orders assignments and tracks declarations") {
    SourceUnit u = parse_unit(
        "class S {\n"
        "  void m() { String s = \"a\"; s = s + \"b\"; }\n"
        "}\n",
        "S.java");
    REQUIRE(u.types.size() == 1);
    Scope scope = build_scope(u.types[0].methods[0], u.types[0]);
    const Declaration* d = scope.lookup("s");
    REQUIRE(d != nullptr);
    REQUIRE(d->assignments.size() == 2);
    CHECK(d->assignments[0].first < d->assignments[1].first);
    CHECK(d->assignments[0].second->kind == Expr::Kind::StringLit);
    CHECK(d->assignments[1].second->kind == Expr::Kind::Concat);
}

TEST_CASE("unassigned local keeps declared type with no assignments") {
    SourceUnit u = parse_unit("class S { void m() { int n; } }", "S.java");
    Scope scope = build_scope(u.types[0].methods[0], u.types[0]);
    const Declaration* d = scope.lookup("n");
    REQUIRE(d != nullptr);
    CHECK(d->declaredType.kind == DeclaredType::NumberInt);
    CHECK(d->assignments.empty());
}

TEST_CASE("field is visible from method scope") {
    SourceUnit u = parse_unit(
        "class S { String base = \"http://a.com\"; void m() { String x = base; } }",
        "S.java");
    Scope scope = build_scope(u.types[0].methods[0], u.types[0]);
    const Declaration* d = scope.lookup("base");
    REQUIRE(d != nullptr);
    CHECK(d->isField);
    REQUIRE(d->assignments.size() == 1);
}

TEST_CASE("local shadows field of the same name") {
    SourceUnit u = parse_unit(
        "class S { String v = \"field\"; void m() { String v = \"local\"; } }",
        "S.java");
    Scope scope = build_scope(u.types[0].methods[0], u.types[0]);
    const Declaration* d = scope.lookup("v");
    REQUIRE(d != nullptr);
    CHECK(!d->isField);
    CHECK(d->assignments[0].second->text == "local");
}

TEST_CASE("annotations with string and named arguments") {
    SourceUnit u = parse_unit(
        "interface Api {\n"
        "  @GET(\"api/loadUsers\")\n"
        "  @Headers({\"Accept: application/json\", \"X-K: v\"})\n"
        "  void load(@Query(\"position\") String position);\n"
        "}\n",
        "Api.java");
    REQUIRE(u.types.size() == 1);
    CHECK(u.types[0].isInterface);
    REQUIRE(u.types[0].methods.size() == 1);
    const MethodDecl& m = u.types[0].methods[0];
    REQUIRE(m.annotations.size() == 2);
    CHECK(m.annotations[0].name == "GET");
    CHECK(m.annotations[0].string_arg() == "api/loadUsers");
    CHECK(m.annotations[1].args.size() == 2);
    REQUIRE(m.params.size() == 1);
    REQUIRE(m.params[0].annotations.size() == 1);
    CHECK(m.params[0].annotations[0].name == "Query");
    CHECK(m.params[0].annotations[0].string_arg() == "position");
}

TEST_CASE("method call chains and receivers") {
    SourceUnit u = parse_unit(
        "class C { void m() { String s = new StringBuilder(\"a\").append(\"b\").toString(); } }",
        "C.java");
    const auto& body = u.types[0].methods[0].body;
    REQUIRE(body.size() == 1);
    const ExprPtr& e = body[0].value;
    REQUIRE(e);
    CHECK(e->kind == Expr::Kind::MethodCall);
    CHECK(e->text == "toString");
    REQUIRE(e->receiver);
    CHECK(e->receiver->text == "append");
    REQUIRE(e->receiver->receiver);
    CHECK(e->receiver->receiver->kind == Expr::Kind::New);
    CHECK(e->receiver->receiver->text == "StringBuilder");
}

TEST_CASE("statements inside control flow are collected in order") {
    SourceUnit u = parse_unit(
        "class C { void m(boolean f) {\n"
        "  String s = \"a\";\n"
        "  if (f) { s = \"b\"; } else { s = \"c\"; }\n"
        "  for (int i = 0; i < 3; i++) { s = s + i; }\n"
        "} }",
        "C.java");
    Scope scope = build_scope(u.types[0].methods[0], u.types[0]);
    const Declaration* d = scope.lookup("s");
    REQUIRE(d != nullptr);
    CHECK(d->assignments.size() == 4);
}

TEST_CASE("anonymous class bodies stay reachable") {
    SourceUnit u = parse_unit(
        "class C { void m() {\n"
        "  Runnable r = new Runnable() { public void run() { String q = \"inner\"; } };\n"
        "} }",
        "C.java");
    REQUIRE(u.types.size() == 1);
    REQUIRE(u.types[0].nested.size() == 1);
    CHECK(u.types[0].nested[0].methods.size() == 1);
}

TEST_CASE("statement spans are in-bounds and non-overlapping in order") {
    const std::string src =
        "class S {\n"
        "  String f = \"x\";\n"
        "  void m(boolean c) {\n"
        "    String a = \"1\";\n"
        "    if (c) { a = \"2\"; } else { a = \"3\"; }\n"
        "    for (int i = 0; i < 2; i++) { a = a + i; }\n"
        "    do { a = a + \"t\"; } while (c);\n"
        "    try { a = \"4\"; } catch (Exception e) { a = \"5\"; } finally { a = \"6\"; }\n"
        "  }\n"
        "}\n";
    SourceUnit u = parse_unit(src, "S.java");
    REQUIRE(u.types.size() == 1);
    for (const auto& m : u.types[0].methods) {
        std::size_t last = 0;
        for (const auto& s : m.body) {
            CHECK(s.span.begin <= s.span.end);
            CHECK(s.span.end <= src.size());
            CHECK(s.span.begin >= last);
            last = s.span.begin;
        }
    }
}

TEST_CASE("string literal collection covers nested containers") {
    SourceUnit u = parse_unit(
        "class C {\n"
        "  String f = \"one\";\n"
        "  void m() {\n"
        "    String a = \"two\";\n"
        "    Runnable r = new Runnable() { public void run() { String b = \"three\"; } };\n"
        "  }\n"
        "}\n",
        "C.java");
    std::vector<std::string> seen;
    for_each_string_literal(u, [&](const Expr& e) { seen.push_back(e.text); });
    CHECK(seen == std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("qualified call receivers are recorded for library detection") {
    SourceUnit u = parse_unit(
        "class C { void m() { java.net.HttpURLConnection c = null; okhttp3.OkHttpClient k = null; } }",
        "C.java");
    // Declarations with qualified types are enough; also check call receivers.
    SourceUnit v = parse_unit(
        "class D { void m(Object ctx) { com.bumptech.glide.Glide.with(ctx); } }",
        "D.java");
    bool found = false;
    for (const auto& q : v.qualifiedRefs)
        if (q.find("com.bumptech.glide") != std::string::npos) found = true;
    CHECK(found);
}
