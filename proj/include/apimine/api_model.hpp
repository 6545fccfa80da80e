#pragma once

#include "apimine/reconstruction.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace apimine {

enum class UrlScheme { Http, Https, Ws, Wss };

std::string_view scheme_name(UrlScheme s);
std::optional<UrlScheme> scheme_from(std::string_view name);

enum class HttpMethod { Get, Post, Put, Delete, Patch, Head };

std::string_view http_method_name(HttpMethod m);
std::optional<HttpMethod> http_method_from(std::string_view name);

// Where a record came from: file, enclosing code, and reporting library name.
struct Provenance {
    std::string unitPath;
    std::string library;      // canonical report name, e.g. com.squareup.retrofit
    std::string enclosingType;
    std::string enclosingMethod;
    std::size_t position = 0;

    auto operator<=>(const Provenance&) const = default;
};

// One path + query + fragment + method combination under a base URL.
struct Endpoint {
    std::vector<StringValue> pathSegments;
    std::vector<std::pair<StringValue, StringValue>> queries;
    std::vector<StringValue> fragments;
    std::set<HttpMethod> httpMethods;
    bool parameterized = false; // contains a {name} path template
    bool likelyStatic = false;  // path points at static content (.html, .png, ...)

    std::string render_path() const; // segments joined with '/'
};

struct WebApiUrl {
    UrlScheme scheme = UrlScheme::Http;
    StringValue authority; // host[:port], may contain placeholder parts
    std::vector<Endpoint> endpoints;
    std::vector<Provenance> provenances;
    // Request headers captured at the extraction site (builder .addHeader,
    // setRequestProperty, @Header parameters).
    std::vector<std::pair<StringValue, StringValue>> headers;
    bool incomplete = false;    // some component is unresolved
    bool schemeAssumed = false; // input had no scheme, http assumed

    std::string base_url() const; // scheme + "://" + authority, exactly
};

enum class UrlError { None, NotWebScheme, Empty };

struct UrlParseResult {
    std::optional<WebApiUrl> url;
    UrlError error = UrlError::None;
    std::string rejectedScheme; // set for NotWebScheme
};

// Splits a reconstructed string at ://  /  ?  &  =  # boundaries. Delimiters
// are only recognized inside literal parts; a placeholder never spans one.
UrlParseResult parse_url(const StringValue& value);

// Full text of one base+endpoint combination, placeholders in URL style.
std::string render_url(const WebApiUrl& url, const Endpoint& ep);

// Key used for distinctness: scheme, authority, path, sorted query keys.
// Placeholders compare by kind and source name.
std::string dedup_key(const WebApiUrl& url, const Endpoint& ep);

// Collapses equal URLs (one endpoint each after flattening); representatives
// keep the union of HTTP methods and all provenances. Order is by key.
std::vector<WebApiUrl> dedup(const std::vector<WebApiUrl>& urls);

struct AggregateStats {
    std::size_t totalUrls = 0;
    std::size_t distinctUrls = 0;
    std::map<UrlScheme, std::size_t> schemeCounts;
    std::map<std::size_t, std::size_t> segmentHistogram;
    std::map<std::size_t, std::size_t> queryHistogram;
    std::map<std::size_t, std::size_t> fragmentHistogram;
    double meanSegments = 0.0;
    double meanQueryPairs = 0.0;

    // Partial aggregation support: merge is associative and commutative.
    void merge(const AggregateStats& other);
};

AggregateStats stats(const std::vector<WebApiUrl>& urls);

// --- JSON schemas ----------------------------------------------------------

struct JsonNode {
    enum class Kind { Object, Array, String, Number, Bool, Null, Placeholder };

    Kind kind = Kind::Null;
    std::vector<std::pair<std::string, JsonNode>> members; // Object, ordered
    std::vector<JsonNode> elements;                        // Array
    std::string text;       // String value or Number lexeme
    bool boolValue = false;
    PlaceholderKind placeholder = PlaceholderKind::Null;

    static JsonNode object();
    static JsonNode array();
    static JsonNode string(std::string v);
    static JsonNode number(std::string lexeme);
    static JsonNode boolean(bool v);
    static JsonNode null();
    static JsonNode make_placeholder(PlaceholderKind k);
};

struct JsonSchema {
    JsonNode root;
    Provenance provenance;

    // Compact rendering: string placeholders stay quoted ("<STRING>"), all
    // other placeholder kinds are emitted bare (<NUMBER_INT>).
    std::string render() const;
};

std::string render_json_node(const JsonNode& n);

} // namespace apimine
