#include "apimine/api_model.hpp"

#include <doctest.h>

#include <random>

using namespace apimine;

namespace {

StringValue lit(std::string_view s) { return StringValue::literal(s); }

} // namespace

TEST_CASE("full URL with query, placeholder value, and fragment") {
    StringValue v;
    v.append_literal("http://retrofiturl.com/api/loadUsers?position=");
    v.append_placeholder(PlaceholderKind::String, "position");
    v.append_literal("#top");
    UrlParseResult r = parse_url(v);
    REQUIRE(r.url.has_value());
    const WebApiUrl& u = *r.url;
    CHECK(u.scheme == UrlScheme::Http);
    CHECK(u.authority.render_url() == "retrofiturl.com");
    CHECK(u.base_url() == "http://retrofiturl.com");
    REQUIRE(u.endpoints.size() == 1);
    const Endpoint& ep = u.endpoints[0];
    REQUIRE(ep.pathSegments.size() == 2);
    CHECK(ep.pathSegments[0].render_url() == "api");
    CHECK(ep.pathSegments[1].render_url() == "loadUsers");
    REQUIRE(ep.queries.size() == 1);
    CHECK(ep.queries[0].first.render_url() == "position");
    CHECK(ep.queries[0].second.render_url() == "<String>");
    REQUIRE(ep.fragments.size() == 1);
    CHECK(ep.fragments[0].render_url() == "top");
    CHECK(!u.incomplete);
}

TEST_CASE("bare authority yields zero components") {
    UrlParseResult r = parse_url(lit("https://a.b"));
    REQUIRE(r.url.has_value());
    CHECK(r.url->scheme == UrlScheme::Https);
    CHECK(r.url->endpoints[0].pathSegments.empty());
    CHECK(r.url->endpoints[0].queries.empty());
    CHECK(r.url->endpoints[0].fragments.empty());
}

TEST_CASE("non-web scheme is rejected") {
    UrlParseResult r = parse_url(lit("ftp://x.y/z"));
    CHECK(!r.url.has_value());
    CHECK(r.error == UrlError::NotWebScheme);
    CHECK(r.rejectedScheme == "ftp");

    CHECK(parse_url(lit("file:///etc/passwd")).error == UrlError::NotWebScheme);
    CHECK(parse_url(lit("content://media/x")).error == UrlError::NotWebScheme);
}

TEST_CASE("all-placeholder value is empty") {
    StringValue v = StringValue::placeholder(PlaceholderKind::String, "u");
    CHECK(parse_url(v).error == UrlError::Empty);
    CHECK(parse_url(StringValue{}).error == UrlError::Empty);
}

TEST_CASE("missing scheme is assumed http and flagged") {
    UrlParseResult r = parse_url(lit("example.org/api"));
    REQUIRE(r.url.has_value());
    CHECK(r.url->scheme == UrlScheme::Http);
    CHECK(r.url->schemeAssumed);
    CHECK(r.url->incomplete);
}

TEST_CASE("empty path segments from double slashes are dropped") {
    UrlParseResult r = parse_url(lit("http://h//a//b/"));
    REQUIRE(r.url.has_value());
    REQUIRE(r.url->endpoints[0].pathSegments.size() == 2);
    CHECK(r.url->endpoints[0].render_path() == "a/b");
}

TEST_CASE("multiple fragments split on every hash") {
    UrlParseResult r = parse_url(lit("http://h/p#a#b#c"));
    REQUIRE(r.url.has_value());
    REQUIRE(r.url->endpoints[0].fragments.size() == 3);
    CHECK(r.url->endpoints[0].fragments[2].render_url() == "c");
}

TEST_CASE("query key without value and empty value") {
    UrlParseResult r = parse_url(lit("http://h/p?flag&k=v"));
    REQUIRE(r.url.has_value());
    const auto& q = r.url->endpoints[0].queries;
    REQUIRE(q.size() == 2);
    CHECK(q[0].first.render_url() == "flag");
    CHECK(q[0].second.parts.empty());
    CHECK(q[1].second.render_url() == "v");
}

TEST_CASE("port stays inside the authority") {
    UrlParseResult r = parse_url(lit("http://h.example:8080/x"));
    REQUIRE(r.url.has_value());
    CHECK(r.url->authority.render_url() == "h.example:8080");
    CHECK(r.url->base_url() == "http://h.example:8080");
}

TEST_CASE("placeholder authority marks the URL incomplete") {
    StringValue v;
    v.append_literal("https://");
    v.append_placeholder(PlaceholderKind::String, "host");
    v.append_literal("/api");
    UrlParseResult r = parse_url(v);
    REQUIRE(r.url.has_value());
    CHECK(r.url->incomplete);
    CHECK(!r.url->authority.resolved());
}

TEST_CASE("delimiters inside placeholders do not split") {
    // A placeholder standing for "a/b?c" must stay one path segment.
    StringValue v;
    v.append_literal("http://h/");
    v.append_placeholder(PlaceholderKind::String, "rest");
    UrlParseResult r = parse_url(v);
    REQUIRE(r.url.has_value());
    REQUIRE(r.url->endpoints[0].pathSegments.size() == 1);
    CHECK(!r.url->endpoints[0].pathSegments[0].resolved());
    CHECK(r.url->endpoints[0].queries.empty());
}

TEST_CASE("static-content paths are tagged") {
    CHECK(parse_url(lit("http://h/index.html")).url->endpoints[0].likelyStatic);
    CHECK(parse_url(lit("http://h/img/pic.PNG")).url->endpoints[0].likelyStatic);
    CHECK(!parse_url(lit("http://h/api/items")).url->endpoints[0].likelyStatic);
}

// --- round-trip property ------------------------------------------------------

namespace {

std::string rand_token(std::mt19937& rng, int minLen = 1, int maxLen = 8) {
    static const char alphabet[] =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.~";
    std::uniform_int_distribution<int> len(minLen, maxLen);
    std::uniform_int_distribution<int> pick(0, sizeof(alphabet) - 2);
    int n = len(rng);
    std::string s;
    for (int i = 0; i < n; ++i) s.push_back(alphabet[pick(rng)]);
    return s;
}

WebApiUrl random_url(std::mt19937& rng) {
    WebApiUrl u;
    std::uniform_int_distribution<int> schemePick(0, 3);
    u.scheme = static_cast<UrlScheme>(schemePick(rng));
    std::string host = rand_token(rng) + "." + rand_token(rng, 2, 3);
    if (rng() % 4 == 0) host += ":" + std::to_string(1 + rng() % 65000);
    u.authority = StringValue::literal(host);
    Endpoint ep;
    std::uniform_int_distribution<int> count(0, 4);
    int segments = count(rng);
    for (int i = 0; i < segments; ++i)
        ep.pathSegments.push_back(StringValue::literal(rand_token(rng)));
    int queries = count(rng);
    for (int i = 0; i < queries; ++i) {
        StringValue value; // sometimes a key with no value at all
        if (rng() % 3 != 0) value = StringValue::literal(rand_token(rng));
        ep.queries.emplace_back(StringValue::literal(rand_token(rng)), std::move(value));
    }
    int fragments = count(rng) / 2;
    for (int i = 0; i < fragments; ++i)
        ep.fragments.push_back(StringValue::literal(rand_token(rng)));
    u.endpoints.push_back(std::move(ep));
    return u;
}

bool equivalent(const WebApiUrl& a, const WebApiUrl& b) {
    if (a.scheme != b.scheme) return false;
    if (a.authority.render_url() != b.authority.render_url()) return false;
    const Endpoint& ea = a.endpoints[0];
    const Endpoint& eb = b.endpoints[0];
    if (ea.pathSegments.size() != eb.pathSegments.size()) return false;
    for (std::size_t i = 0; i < ea.pathSegments.size(); ++i)
        if (ea.pathSegments[i].render_url() != eb.pathSegments[i].render_url()) return false;
    if (ea.queries.size() != eb.queries.size()) return false;
    for (std::size_t i = 0; i < ea.queries.size(); ++i) {
        if (ea.queries[i].first.render_url() != eb.queries[i].first.render_url())
            return false;
        if (ea.queries[i].second.render_url() != eb.queries[i].second.render_url())
            return false;
    }
    if (ea.fragments.size() != eb.fragments.size()) return false;
    for (std::size_t i = 0; i < ea.fragments.size(); ++i)
        if (ea.fragments[i].render_url() != eb.fragments[i].render_url()) return false;
    return true;
}

} // namespace

TEST_CASE("parse/render round-trip for generated placeholder-free URLs") {
    std::mt19937 rng(20241103);
    for (int round = 0; round < 2000; ++round) {
        WebApiUrl u = random_url(rng);
        std::string rendered = render_url(u, u.endpoints[0]);
        UrlParseResult r = parse_url(StringValue::literal(rendered));
        REQUIRE(r.url.has_value());
        CHECK(equivalent(u, *r.url));
        CHECK(render_url(*r.url, r.url->endpoints[0]) == rendered);
    }
}

TEST_CASE("dedup merges provenances and methods") {
    auto make = [](std::string unit, HttpMethod m) {
        WebApiUrl u = *parse_url(lit("https://api.example/v1/users?limit=10")).url;
        u.endpoints[0].httpMethods.insert(m);
        Provenance p;
        p.unitPath = std::move(unit);
        p.library = "com.squareup.retrofit";
        u.provenances.push_back(std::move(p));
        return u;
    };
    std::vector<WebApiUrl> urls = {make("A.java", HttpMethod::Get),
                                   make("B.java", HttpMethod::Post)};
    std::vector<WebApiUrl> distinct = dedup(urls);
    REQUIRE(distinct.size() == 1);
    CHECK(distinct[0].provenances.size() == 2);
    CHECK(distinct[0].endpoints[0].httpMethods.size() == 2);
}

TEST_CASE("different paths stay distinct") {
    std::vector<WebApiUrl> urls = {*parse_url(lit("https://a.b/x")).url,
                                   *parse_url(lit("https://a.b/y")).url};
    CHECK(dedup(urls).size() == 2);
}

TEST_CASE("placeholder values differing only by name are one URL") {
    auto make = [](const std::string& name) {
        StringValue v;
        v.append_literal("https://a.b/p?k=");
        v.append_placeholder(PlaceholderKind::String, name);
        return *parse_url(v).url;
    };
    std::vector<WebApiUrl> urls = {make("alpha"), make("beta")};
    CHECK(dedup(urls).size() == 1);

    // In the query KEY, placeholder names do participate in the key.
    auto makeKey = [](const std::string& name) {
        StringValue v;
        v.append_literal("https://a.b/p?");
        v.append_placeholder(PlaceholderKind::String, name);
        v.append_literal("=1");
        return *parse_url(v).url;
    };
    std::vector<WebApiUrl> urls2 = {makeKey("alpha"), makeKey("beta")};
    CHECK(dedup(urls2).size() == 2);
}

TEST_CASE("dedup is idempotent and shrinking") {
    std::mt19937 rng(555);
    std::vector<WebApiUrl> urls;
    for (int i = 0; i < 200; ++i) {
        WebApiUrl u = random_url(rng);
        urls.push_back(u);
        if (rng() % 2) urls.push_back(u); // deliberate duplicates
    }
    auto once = dedup(urls);
    auto twice = dedup(once);
    CHECK(once.size() <= urls.size());
    REQUIRE(once.size() == twice.size());
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(dedup_key(once[i], once[i].endpoints[0]) ==
              dedup_key(twice[i], twice[i].endpoints[0]));
}

TEST_CASE("stats on simple fixtures") {
    std::vector<WebApiUrl> urls = {*parse_url(lit("http://h/a/b?k=v")).url};
    AggregateStats s = stats(urls);
    CHECK(s.totalUrls == 1);
    CHECK(s.distinctUrls == 1);
    CHECK(s.meanSegments == doctest::Approx(2.0));
    CHECK(s.meanQueryPairs == doctest::Approx(1.0));

    std::vector<WebApiUrl> three = {*parse_url(lit("http://h/a")).url,
                                    *parse_url(lit("http://h/a/b")).url,
                                    *parse_url(lit("http://h/a/b/c")).url};
    AggregateStats s3 = stats(three);
    CHECK(s3.meanSegments == doctest::Approx(2.0));
    CHECK(s3.segmentHistogram.at(1) == 1);
    CHECK(s3.segmentHistogram.at(2) == 1);
    CHECK(s3.segmentHistogram.at(3) == 1);
}

TEST_CASE("stats invariants: histograms and scheme counts sum to total") {
    std::mt19937 rng(808);
    std::vector<WebApiUrl> urls;
    for (int i = 0; i < 300; ++i) urls.push_back(random_url(rng));
    AggregateStats s = stats(urls);
    CHECK(s.totalUrls == 300);
    CHECK(s.distinctUrls <= s.totalUrls);
    std::size_t schemeSum = 0, segSum = 0, querySum = 0, fragSum = 0;
    for (auto& [k, v] : s.schemeCounts) schemeSum += v;
    for (auto& [k, v] : s.segmentHistogram) segSum += v;
    for (auto& [k, v] : s.queryHistogram) querySum += v;
    for (auto& [k, v] : s.fragmentHistogram) fragSum += v;
    CHECK(schemeSum == s.totalUrls);
    CHECK(segSum == s.totalUrls);
    CHECK(querySum == s.totalUrls);
    CHECK(fragSum == s.totalUrls);
}

TEST_CASE("stats merge is associative across partitions") {
    std::mt19937 rng(909);
    std::vector<WebApiUrl> urls;
    for (int i = 0; i < 100; ++i) urls.push_back(random_url(rng));
    AggregateStats whole = stats(urls);
    std::vector<WebApiUrl> left(urls.begin(), urls.begin() + 40);
    std::vector<WebApiUrl> right(urls.begin() + 40, urls.end());
    AggregateStats merged = stats(left);
    merged.merge(stats(right));
    CHECK(merged.totalUrls == whole.totalUrls);
    CHECK(merged.segmentHistogram == whole.segmentHistogram);
    CHECK(merged.meanSegments == doctest::Approx(whole.meanSegments));
    // distinct is not additive across partitions; merge only sums it.
}

TEST_CASE("empty input yields zeroed stats") {
    AggregateStats s = stats({});
    CHECK(s.totalUrls == 0);
    CHECK(s.distinctUrls == 0);
    CHECK(s.meanSegments == 0.0);
    CHECK(s.schemeCounts.empty());
}

TEST_CASE("json node rendering with placeholders") {
    JsonNode root = JsonNode::object();
    JsonNode address = JsonNode::object();
    address.members.emplace_back("street", JsonNode::make_placeholder(PlaceholderKind::String));
    address.members.emplace_back("number",
                                 JsonNode::make_placeholder(PlaceholderKind::NumberInt));
    root.members.emplace_back("address", std::move(address));
    root.members.emplace_back("name", JsonNode::string("Bob"));
    CHECK(render_json_node(root) ==
          R"({"address":{"street":"<STRING>","number":<NUMBER_INT>},"name":"Bob"})");

    JsonNode arr = JsonNode::array();
    arr.elements.push_back(JsonNode::number("3"));
    arr.elements.push_back(JsonNode::boolean(true));
    arr.elements.push_back(JsonNode::null());
    arr.elements.push_back(JsonNode::make_placeholder(PlaceholderKind::Number));
    CHECK(render_json_node(arr) == R"([3,true,null,<NUMBER>])");

    JsonNode esc = JsonNode::object();
    esc.members.emplace_back("q", JsonNode::string("say \"hi\"\n"));
    CHECK(render_json_node(esc) == "{\"q\":\"say \\\"hi\\\"\\n\"}");
}
