#include "apimine/reconstruction.hpp"

#include "oracle_jaro.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace apimine;

namespace {

// Parses `class C { void m(...) { <body> } }` and reconstructs the value of
// `var` as seen at the end of the method.
StringValue value_at_end(const std::string& body, const std::string& var,
                         const std::string& fields = "", int maxIterations = 15,
                         bool withGuessing = false) {
    std::string src = "class C { " + fields + " void m() { " + body + " } }";
    SourceUnit unit = parse_unit(src, "C.java");
    REQUIRE(unit.types.size() == 1);
    REQUIRE(!unit.types[0].methods.empty());
    const MethodDecl& m = unit.types[0].methods.back();
    Scope scope = build_scope(m, unit.types[0]);

    auto use = std::make_shared<Expr>();
    use->kind = Expr::Kind::NameRef;
    use->text = var;
    use->span = Span{src.size(), src.size(), 0};

    ResolutionBudget budget{maxIterations, 0};
    ReconstructionContext ctx;
    std::map<std::string, StringValue> pool;
    if (withGuessing) {
        pool = collect_guess_candidates(unit);
        ctx.guessCandidates = &pool;
    }
    return reconstruct(use, scope, budget, ctx);
}

} // namespace

TEST_CASE("string literal resolves to itself") {
    StringValue v = value_at_end("String u = \"api/loadUsers\";", "u");
    CHECK(v.resolved());
    CHECK(v.render_url() == "api/loadUsers");
}

TEST_CASE("concat with assigned variable resolves fully") {
    StringValue v = value_at_end(
        "String host = \"x.com\"; String u = \"http://\" + host;", "u");
    CHECK(v.resolved());
    CHECK(v.render_url() == "http://x.com");
    REQUIRE(v.parts.size() == 1); // adjacent literals coalesce
}

TEST_CASE("builder chain with unassigned int defaults to 0") {
    StringValue v = value_at_end(
        "int n; String u = new StringBuilder(\"a\").append(\"b\").append(n).toString();",
        "u");
    CHECK(v.resolved());
    CHECK(v.render_url() == "ab0");
}

TEST_CASE("unassigned boolean defaults to true") {
    StringValue v = value_at_end("boolean f; String u = \"flag=\" + f;", "u");
    CHECK(v.resolved());
    CHECK(v.render_url() == "flag=true");
}

TEST_CASE("unresolvable string becomes a named placeholder") {
    StringValue v = value_at_end("String apiKey; String u = \"key=\" + apiKey;", "u");
    CHECK(!v.resolved());
    REQUIRE(v.parts.size() == 2);
    CHECK(v.parts[0].literal == "key=");
    CHECK(v.parts[1].isPlaceholder);
    CHECK(v.parts[1].kind == PlaceholderKind::String);
    CHECK(v.parts[1].sourceName == "apiKey");
    CHECK(v.render_url() == "key=<String>");
    CHECK(v.render_json() == "key=<STRING>");
}

TEST_CASE("last assignment before use wins") {
    StringValue v = value_at_end(
        "String s = \"a\"; s = \"b\"; String u = s; s = \"c\";", "u");
    CHECK(v.render_url() == "b");
}

TEST_CASE("self-referential append resolves through prior value") {
    StringValue v = value_at_end("String s = \"a\"; s = s + \"b\";", "s");
    CHECK(v.resolved());
    CHECK(v.render_url() == "ab");
}

TEST_CASE("cyclic field definitions terminate with a placeholder") {
    std::string fields = "String a = b + \"x\"; String b = a + \"y\";";
    StringValue v = value_at_end("String u = a;", "u", fields);
    CHECK(!v.resolved());
}

TEST_CASE("budget exhaustion halts with placeholders") {
    // A long dependency chain burns one step per hop.
    std::string body;
    body += "String v0 = \"deep\";";
    for (int i = 1; i <= 30; ++i)
        body += "String v" + std::to_string(i) + " = v" + std::to_string(i - 1) + ";";
    StringValue full = value_at_end(body, "v30", "", 64);
    CHECK(full.resolved());
    StringValue cut = value_at_end(body, "v30", "", 15);
    CHECK(!cut.resolved());
}

TEST_CASE("budget property: any cyclic definition terminates within 15 steps") {
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        int n = 2 + static_cast<int>(rng() % 5);
        // Ring of fields, each defined in terms of the next.
        std::string fields;
        for (int i = 0; i < n; ++i)
            fields += "String f" + std::to_string(i) + " = f" + std::to_string((i + 1) % n) +
                      " + \"s\";";
        std::string src = "class C { " + fields + " void m() {} }";
        SourceUnit unit = parse_unit(src, "C.java");
        Scope scope = build_scope(unit.types[0].methods[0], unit.types[0]);
        auto use = std::make_shared<Expr>();
        use->kind = Expr::Kind::NameRef;
        use->text = "f0";
        ResolutionBudget budget; // 15
        StringValue v = reconstruct(use, scope, budget);
        CHECK(budget.iterationsUsed <= budget.maxIterations);
        CHECK(!v.resolved()); // cycle ends in a placeholder
    }
}

TEST_CASE("formatting calls yield a single string placeholder") {
    StringValue v = value_at_end(
        "String u = String.format(\"%s/%d\", \"a\", 3);", "u");
    CHECK(!v.resolved());
    REQUIRE(v.parts.size() == 1);
    CHECK(v.parts[0].isPlaceholder);
}

TEST_CASE("concat associativity after coalescing") {
    StringValue left =
        value_at_end("String u = (\"a\" + \"b\") + \"c\";", "u");
    StringValue right =
        value_at_end("String u = \"a\" + (\"b\" + \"c\");", "u");
    CHECK(left == right);
    CHECK(left.render_url() == "abc");

    // With a placeholder in the middle the parts must still line up.
    StringValue pl = value_at_end(
        "String x; String u = (\"a\" + x) + \"c\";", "u");
    StringValue pr = value_at_end(
        "String x; String u = \"a\" + (x + \"c\");", "u");
    CHECK(pl == pr);
}

// --- jaro_winkler ----------------------------------------------------------

TEST_CASE("identity and disjoint strings") {
    CHECK(jaro_winkler("abc", "abc") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(jaro_winkler("abc", "xyz") == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(jaro_winkler("", "") == doctest::Approx(1.0));
    CHECK(jaro_winkler("a", "") == doctest::Approx(0.0));
}

TEST_CASE("MARTHA/MARHTA matches the published value") {
    double score = jaro_winkler("MARTHA", "MARHTA");
    CHECK(std::abs(score - 0.9611) < 1e-4);
    CHECK(score == doctest::Approx(oracle::jaro_winkler_bruteforce("MARTHA", "MARHTA"))
                       .epsilon(1e-12));
}

TEST_CASE("similarity properties over random strings") {
    std::mt19937 rng(20240901);
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<int> ch(0, 25);
    auto randstr = [&] {
        std::string s;
        int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + ch(rng)));
        return s;
    };
    for (int round = 0; round < 3000; ++round) {
        std::string a = randstr(), b = randstr();
        double ab = jaro_winkler(a, b);
        double ba = jaro_winkler(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));      // symmetry
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(jaro_winkler(a, a) == doctest::Approx(1.0));    // reflexivity
        double expected = oracle::jaro_winkler_bruteforce(a, b);
        CHECK(std::abs(ab - expected) < 1e-12);               // oracle agreement
    }
}

TEST_CASE("winkler bonus never exceeds 1") {
    SimilarityConfig cfg;
    cfg.prefixScale = 0.25; // maximum sensible prefix scale
    CHECK(jaro_winkler("prefix", "prefixxxxx", cfg) <= 1.0);
    CHECK(jaro_winkler("aaaa", "aaaa", cfg) == doctest::Approx(1.0));
}

// --- guess_value -------------------------------------------------------------

TEST_CASE("close variable name is accepted") {
    std::map<std::string, StringValue> candidates;
    candidates.emplace("baseURL", StringValue::literal("http://a.com"));
    auto got = guess_value("baseUrl", candidates);
    REQUIRE(got.has_value());
    CHECK(got->render_url() == "http://a.com");
}

TEST_CASE("empty candidate pool yields nothing") {
    std::map<std::string, StringValue> candidates;
    CHECK(!guess_value("anything", candidates).has_value());
}

TEST_CASE("distant name is rejected") {
    std::map<std::string, StringValue> candidates;
    candidates.emplace("baseURL", StringValue::literal("http://a.com"));
    CHECK(!guess_value("counter", candidates).has_value());
}

TEST_CASE("ties break toward the lexicographically smaller key") {
    std::map<std::string, StringValue> candidates;
    candidates.emplace("urlB", StringValue::literal("b"));
    candidates.emplace("urlA", StringValue::literal("a"));
    auto got = guess_value("urlX", candidates);
    REQUIRE(got.has_value());
    CHECK(got->render_url() == "a");
}

TEST_CASE("reconstruction uses guessing for unresolved strings") {
    StringValue v = value_at_end(
        "String u = \"x=\" + baseUrl;", "u",
        "String baseURL = \"http://a.com\";", 15, /*withGuessing=*/true);
    CHECK(v.resolved());
    CHECK(v.render_url() == "x=http://a.com");
}

TEST_CASE("placeholder soundness: resolved values render without markers") {
    std::mt19937 rng(99);
    for (int round = 0; round < 200; ++round) {
        StringValue v;
        int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) v.append_literal("seg" + std::to_string(rng() % 10));
        CHECK(v.resolved());
        CHECK(v.render_url().find("<String>") == std::string::npos);
    }
}
