#include "apimine/api_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace apimine {

std::string_view scheme_name(UrlScheme s) {
    switch (s) {
    case UrlScheme::Http: return "http";
    case UrlScheme::Https: return "https";
    case UrlScheme::Ws: return "ws";
    case UrlScheme::Wss: return "wss";
    }
    return "http";
}

std::optional<UrlScheme> scheme_from(std::string_view name) {
    if (name == "http") return UrlScheme::Http;
    if (name == "https") return UrlScheme::Https;
    if (name == "ws") return UrlScheme::Ws;
    if (name == "wss") return UrlScheme::Wss;
    return std::nullopt;
}

std::string_view http_method_name(HttpMethod m) {
    switch (m) {
    case HttpMethod::Get: return "GET";
    case HttpMethod::Post: return "POST";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Delete: return "DELETE";
    case HttpMethod::Patch: return "PATCH";
    case HttpMethod::Head: return "HEAD";
    }
    return "GET";
}

std::optional<HttpMethod> http_method_from(std::string_view name) {
    if (name == "GET") return HttpMethod::Get;
    if (name == "POST") return HttpMethod::Post;
    if (name == "PUT") return HttpMethod::Put;
    if (name == "DELETE") return HttpMethod::Delete;
    if (name == "PATCH") return HttpMethod::Patch;
    if (name == "HEAD") return HttpMethod::Head;
    return std::nullopt;
}

std::string Endpoint::render_path() const {
    std::string out;
    for (std::size_t i = 0; i < pathSegments.size(); ++i) {
        if (i) out += '/';
        out += pathSegments[i].render_url();
    }
    return out;
}

std::string WebApiUrl::base_url() const {
    return std::string(scheme_name(scheme)) + "://" + authority.render_url();
}

// --- parse_url ---------------------------------------------------------------

namespace {

// A StringValue flattened to single-character literals and atomic
// placeholders, so delimiter scanning can never split a placeholder.
struct Atom {
    bool isPlaceholder = false;
    char c = 0;
    const Part* part = nullptr;
};

std::vector<Atom> atomize(const StringValue& v) {
    std::vector<Atom> atoms;
    for (const Part& p : v.parts) {
        if (p.isPlaceholder) {
            atoms.push_back({true, 0, &p});
        } else {
            for (char c : p.literal) atoms.push_back({false, c, &p});
        }
    }
    return atoms;
}

struct Cursor {
    const std::vector<Atom>& atoms;
    std::size_t i = 0;

    bool done() const { return i >= atoms.size(); }

    // Accumulates until one of `delims` appears in a literal atom; the
    // delimiter is consumed and returned (0 at end of input).
    std::pair<StringValue, char> take_until(std::string_view delims) {
        StringValue out;
        while (i < atoms.size()) {
            const Atom& a = atoms[i];
            if (!a.isPlaceholder && delims.find(a.c) != std::string_view::npos) {
                ++i;
                return {std::move(out), a.c};
            }
            if (a.isPlaceholder) out.parts.push_back(*a.part);
            else out.append_literal(std::string_view(&a.c, 1));
            ++i;
        }
        return {std::move(out), 0};
    }
};

// Splits "key[=value]" at the first literal '='.
std::pair<StringValue, StringValue> split_query_pair(const StringValue& piece) {
    std::vector<Atom> atoms = atomize(piece);
    Cursor c{atoms};
    auto [key, delim] = c.take_until("=");
    StringValue value;
    if (delim == '=') {
        while (!c.done()) {
            const Atom& a = atoms[c.i];
            if (a.isPlaceholder) value.parts.push_back(*a.part);
            else value.append_literal(std::string_view(&a.c, 1));
            ++c.i;
        }
    }
    return {std::move(key), std::move(value)};
}

bool has_placeholder(const StringValue& v) { return !v.resolved(); }

const std::array<std::string_view, 6> kStaticSuffixes = {
    ".html", ".htm", ".jpg", ".png", ".css", ".js",
};

bool static_looking_path(const Endpoint& ep) {
    if (ep.pathSegments.empty()) return false;
    std::string last = ep.pathSegments.back().render_url();
    std::transform(last.begin(), last.end(), last.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (std::string_view suf : kStaticSuffixes) {
        if (last.size() >= suf.size() &&
            last.compare(last.size() - suf.size(), suf.size(), suf) == 0)
            return true;
    }
    return false;
}

} // namespace

UrlParseResult parse_url(const StringValue& value) {
    UrlParseResult result;
    if (value.parts.empty() || value.all_placeholders()) {
        result.error = UrlError::Empty;
        return result;
    }

    std::vector<Atom> atoms = atomize(value);

    WebApiUrl url;
    Endpoint ep;

    // Locate "://" among literal atoms.
    std::size_t schemeEnd = atoms.size();
    for (std::size_t k = 0; k + 2 < atoms.size(); ++k) {
        if (!atoms[k].isPlaceholder && atoms[k].c == ':' && !atoms[k + 1].isPlaceholder &&
            atoms[k + 1].c == '/' && !atoms[k + 2].isPlaceholder && atoms[k + 2].c == '/') {
            schemeEnd = k;
            break;
        }
    }

    Cursor cur{atoms};
    if (schemeEnd != atoms.size()) {
        bool allLiteral = true;
        std::string schemeText;
        for (std::size_t k = 0; k < schemeEnd; ++k) {
            if (atoms[k].isPlaceholder) allLiteral = false;
            else schemeText.push_back(static_cast<char>(std::tolower(
                     static_cast<unsigned char>(atoms[k].c))));
        }
        if (allLiteral && !schemeText.empty()) {
            auto s = scheme_from(schemeText);
            if (!s) {
                result.error = UrlError::NotWebScheme;
                result.rejectedScheme = schemeText;
                return result;
            }
            url.scheme = *s;
        } else {
            url.scheme = UrlScheme::Http;
            url.schemeAssumed = true;
            url.incomplete = true;
        }
        cur.i = schemeEnd + 3;
    } else {
        url.scheme = UrlScheme::Http;
        url.schemeAssumed = true;
        url.incomplete = true;
    }

    auto [authority, delim] = cur.take_until("/?#");
    if (authority.parts.empty()) {
        result.error = UrlError::Empty;
        return result;
    }
    url.authority = std::move(authority);
    if (has_placeholder(url.authority)) url.incomplete = true;

    if (delim == '/') {
        while (true) {
            auto [segment, d] = cur.take_until("/?#");
            if (!segment.parts.empty()) ep.pathSegments.push_back(std::move(segment));
            if (d == '/') continue;
            delim = d;
            break;
        }
    }
    if (delim == '?') {
        while (true) {
            auto [pair, d] = cur.take_until("&#");
            if (!pair.parts.empty()) {
                auto [key, val] = split_query_pair(pair);
                if (!key.parts.empty() || !val.parts.empty())
                    ep.queries.emplace_back(std::move(key), std::move(val));
            }
            if (d == '&') continue;
            delim = d;
            break;
        }
    }
    if (delim == '#') {
        while (true) {
            auto [fragment, d] = cur.take_until("#");
            if (!fragment.parts.empty()) ep.fragments.push_back(std::move(fragment));
            if (d != '#') break;
        }
    }

    ep.likelyStatic = static_looking_path(ep);
    url.endpoints.push_back(std::move(ep));
    result.url = std::move(url);
    return result;
}

// --- rendering / dedup -------------------------------------------------------

std::string render_url(const WebApiUrl& url, const Endpoint& ep) {
    std::string out = url.base_url();
    for (const auto& seg : ep.pathSegments) {
        out += '/';
        out += seg.render_url();
    }
    if (!ep.queries.empty()) {
        out += '?';
        for (std::size_t i = 0; i < ep.queries.size(); ++i) {
            if (i) out += '&';
            out += ep.queries[i].first.render_url();
            if (!ep.queries[i].second.parts.empty()) {
                out += '=';
                out += ep.queries[i].second.render_url();
            }
        }
    }
    for (const auto& frag : ep.fragments) {
        out += '#';
        out += frag.render_url();
    }
    return out;
}

namespace {

// Placeholder-aware rendering for equality keys: kind and source name both
// participate, literal text is verbatim. \x01/\x02 guards prevent literal
// text from colliding with placeholder markers.
std::string key_render(const StringValue& v) {
    std::string out;
    for (const Part& p : v.parts) {
        if (p.isPlaceholder) {
            out += '\x01';
            out += static_cast<char>('0' + static_cast<int>(p.kind));
            out += p.sourceName;
            out += '\x02';
        } else {
            out += p.literal;
        }
    }
    return out;
}

} // namespace

std::string dedup_key(const WebApiUrl& url, const Endpoint& ep) {
    std::string key(scheme_name(url.scheme));
    key += '\n';
    key += key_render(url.authority);
    key += '\n';
    for (const auto& seg : ep.pathSegments) {
        key += key_render(seg);
        key += '/';
    }
    key += '\n';
    std::vector<std::string> queryKeys;
    queryKeys.reserve(ep.queries.size());
    for (const auto& q : ep.queries) queryKeys.push_back(key_render(q.first));
    std::sort(queryKeys.begin(), queryKeys.end());
    for (const auto& qk : queryKeys) {
        key += qk;
        key += '&';
    }
    return key;
}

std::vector<WebApiUrl> dedup(const std::vector<WebApiUrl>& urls) {
    std::map<std::string, WebApiUrl> byKey;
    for (const WebApiUrl& u : urls) {
        for (const Endpoint& ep : u.endpoints) {
            std::string key = dedup_key(u, ep);
            auto it = byKey.find(key);
            if (it == byKey.end()) {
                WebApiUrl rep = u;
                rep.endpoints = {ep};
                byKey.emplace(std::move(key), std::move(rep));
            } else {
                WebApiUrl& rep = it->second;
                rep.endpoints[0].httpMethods.insert(ep.httpMethods.begin(),
                                                    ep.httpMethods.end());
                rep.endpoints[0].parameterized |= ep.parameterized;
                rep.endpoints[0].likelyStatic |= ep.likelyStatic;
                rep.incomplete |= u.incomplete;
                rep.provenances.insert(rep.provenances.end(), u.provenances.begin(),
                                       u.provenances.end());
            }
        }
    }
    std::vector<WebApiUrl> out;
    out.reserve(byKey.size());
    for (auto& [key, u] : byKey) {
        std::sort(u.provenances.begin(), u.provenances.end());
        u.provenances.erase(std::unique(u.provenances.begin(), u.provenances.end()),
                            u.provenances.end());
        out.push_back(std::move(u));
    }
    return out;
}

// --- stats -------------------------------------------------------------------

void AggregateStats::merge(const AggregateStats& other) {
    totalUrls += other.totalUrls;
    distinctUrls += other.distinctUrls;
    for (const auto& [k, v] : other.schemeCounts) schemeCounts[k] += v;
    for (const auto& [k, v] : other.segmentHistogram) segmentHistogram[k] += v;
    for (const auto& [k, v] : other.queryHistogram) queryHistogram[k] += v;
    for (const auto& [k, v] : other.fragmentHistogram) fragmentHistogram[k] += v;
    // Means are recomputed from histograms after merging.
    std::size_t segments = 0, queries = 0;
    for (const auto& [count, freq] : segmentHistogram) segments += count * freq;
    for (const auto& [count, freq] : queryHistogram) queries += count * freq;
    meanSegments = totalUrls ? static_cast<double>(segments) / totalUrls : 0.0;
    meanQueryPairs = totalUrls ? static_cast<double>(queries) / totalUrls : 0.0;
}

AggregateStats stats(const std::vector<WebApiUrl>& urls) {
    AggregateStats s;
    std::size_t segments = 0, queries = 0;
    for (const WebApiUrl& u : urls) {
        for (const Endpoint& ep : u.endpoints) {
            ++s.totalUrls;
            ++s.schemeCounts[u.scheme];
            ++s.segmentHistogram[ep.pathSegments.size()];
            ++s.queryHistogram[ep.queries.size()];
            ++s.fragmentHistogram[ep.fragments.size()];
            segments += ep.pathSegments.size();
            queries += ep.queries.size();
        }
    }
    s.distinctUrls = dedup(urls).size();
    s.meanSegments = s.totalUrls ? static_cast<double>(segments) / s.totalUrls : 0.0;
    s.meanQueryPairs = s.totalUrls ? static_cast<double>(queries) / s.totalUrls : 0.0;
    return s;
}

// --- JSON nodes --------------------------------------------------------------

JsonNode JsonNode::object() {
    JsonNode n;
    n.kind = Kind::Object;
    return n;
}

JsonNode JsonNode::array() {
    JsonNode n;
    n.kind = Kind::Array;
    return n;
}

JsonNode JsonNode::string(std::string v) {
    JsonNode n;
    n.kind = Kind::String;
    n.text = std::move(v);
    return n;
}

JsonNode JsonNode::number(std::string lexeme) {
    JsonNode n;
    n.kind = Kind::Number;
    n.text = std::move(lexeme);
    return n;
}

JsonNode JsonNode::boolean(bool v) {
    JsonNode n;
    n.kind = Kind::Bool;
    n.boolValue = v;
    return n;
}

JsonNode JsonNode::null() {
    JsonNode n;
    n.kind = Kind::Null;
    return n;
}

JsonNode JsonNode::make_placeholder(PlaceholderKind k) {
    JsonNode n;
    n.kind = Kind::Placeholder;
    n.placeholder = k;
    return n;
}

namespace {

void escape_json_into(std::string& out, std::string_view s) {
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
}

void render_node_into(std::string& out, const JsonNode& n) {
    switch (n.kind) {
    case JsonNode::Kind::Object: {
        out += '{';
        bool first = true;
        for (const auto& [key, child] : n.members) {
            if (!first) out += ',';
            first = false;
            out += '"';
            escape_json_into(out, key);
            out += "\":";
            render_node_into(out, child);
        }
        out += '}';
        break;
    }
    case JsonNode::Kind::Array: {
        out += '[';
        for (std::size_t i = 0; i < n.elements.size(); ++i) {
            if (i) out += ',';
            render_node_into(out, n.elements[i]);
        }
        out += ']';
        break;
    }
    case JsonNode::Kind::String:
        out += '"';
        escape_json_into(out, n.text);
        out += '"';
        break;
    case JsonNode::Kind::Number:
        out += n.text.empty() ? "0" : n.text;
        break;
    case JsonNode::Kind::Bool:
        out += n.boolValue ? "true" : "false";
        break;
    case JsonNode::Kind::Null:
        out += "null";
        break;
    case JsonNode::Kind::Placeholder:
        if (n.placeholder == PlaceholderKind::String) {
            out += '"';
            out += placeholder_json_token(n.placeholder);
            out += '"';
        } else {
            out += placeholder_json_token(n.placeholder);
        }
        break;
    }
}

} // namespace

std::string render_json_node(const JsonNode& n) {
    std::string out;
    render_node_into(out, n);
    return out;
}

std::string JsonSchema::render() const { return render_json_node(root); }

} // namespace apimine
