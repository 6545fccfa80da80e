#include "apimine/smell_scan.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>

namespace apimine {

std::string_view embedded_language_name(EmbeddedLanguage lang) {
    switch (lang) {
    case EmbeddedLanguage::Bash: return "bash";
    case EmbeddedLanguage::Html: return "html";
    case EmbeddedLanguage::Javascript: return "javascript";
    case EmbeddedLanguage::Php: return "php";
    case EmbeddedLanguage::Python: return "python";
    case EmbeddedLanguage::Ruby: return "ruby";
    case EmbeddedLanguage::Sql: return "sql";
    }
    return "sql";
}

std::string_view smell_kind_name(SmellKind kind) {
    switch (kind) {
    case SmellKind::CredentialLeak: return "credential_leak";
    case SmellKind::EmbeddedLanguage: return "embedded_language";
    case SmellKind::InsecureTransport: return "insecure_transport";
    }
    return "credential_leak";
}

const std::vector<RegexRule>& default_rules() {
    static const std::vector<RegexRule> rules = {
        {EmbeddedLanguage::Bash, R"(sh[ ]+)"},
        {EmbeddedLanguage::Bash, R"(\.sh)"},
        {EmbeddedLanguage::Html, R"(\<[ ]*html[ ]*\>)"},
        {EmbeddedLanguage::Javascript, R"(function[^\(]*\([^\)]*\))"},
        {EmbeddedLanguage::Javascript, R"(\<[ ]*script)"},
        {EmbeddedLanguage::Javascript, R"(js[ ]*=)"},
        {EmbeddedLanguage::Php, R"(\<\?)"},
        {EmbeddedLanguage::Python, R"(import[ ]+\(.*\))"},
        {EmbeddedLanguage::Ruby, R"(require[ ]*\(.*\))"},
        {EmbeddedLanguage::Sql, R"(alter[ ]+table)"},
        {EmbeddedLanguage::Sql, R"(create[ ]+.*index)"},
        {EmbeddedLanguage::Sql, R"(create[ ]+.*table)"},
        {EmbeddedLanguage::Sql, R"(create[ ]+.*trigger)"},
        {EmbeddedLanguage::Sql, R"(create[ ]+.*view)"},
        {EmbeddedLanguage::Sql, R"(delete[ ]+from)"},
        {EmbeddedLanguage::Sql, R"(drop[ ]+index)"},
        {EmbeddedLanguage::Sql, R"(drop[ ]+table)"},
        {EmbeddedLanguage::Sql, R"(drop[ ]+trigger)"},
        {EmbeddedLanguage::Sql, R"(drop[ ]+view)"},
        {EmbeddedLanguage::Sql, R"(insert[ ]+.*into)"},
        {EmbeddedLanguage::Sql, R"(replace[ ]+into)"},
        {EmbeddedLanguage::Sql, R"(select[ ]+.*[ ]+from)"},
        {EmbeddedLanguage::Sql, R"(update[ ]+.+[ ]+set)"},
    };
    return rules;
}

namespace {

std::optional<EmbeddedLanguage> language_from(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "bash") return EmbeddedLanguage::Bash;
    if (lower == "html") return EmbeddedLanguage::Html;
    if (lower == "javascript") return EmbeddedLanguage::Javascript;
    if (lower == "php") return EmbeddedLanguage::Php;
    if (lower == "python") return EmbeddedLanguage::Python;
    if (lower == "ruby") return EmbeddedLanguage::Ruby;
    if (lower == "sql") return EmbeddedLanguage::Sql;
    return std::nullopt;
}

std::string truncate_evidence(std::string text) {
    if (text.size() > 200) text.resize(200);
    return text;
}

} // namespace

std::vector<RegexRule> load_rules_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rules file: " + path);
    std::vector<RegexRule> rules;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        auto lang = language_from(line.substr(0, tab));
        if (!lang) continue;
        std::string pattern = line.substr(tab + 1);
        if (pattern.empty()) continue;
        rules.push_back({*lang, std::move(pattern)});
    }
    return rules;
}

std::string render_rules(const std::vector<RegexRule>& rules) {
    std::string out;
    for (const auto& r : rules) {
        out += embedded_language_name(r.language);
        out += '\t';
        out += r.pattern;
        out += '\n';
    }
    return out;
}

std::vector<LanguageMatch> scan_embedded_languages(std::string_view text) {
    return scan_embedded_languages(text, default_rules());
}

namespace {

// Compiled patterns are cached per thread; rule sets are small and stable
// across a run while the scanner is called once per string.
const std::regex* compiled_rule(const RegexRule& rule) {
    thread_local std::map<std::string, std::optional<std::regex>> cache;
    std::string key = rule.caseInsensitive ? "i\x01" + rule.pattern : "s\x01" + rule.pattern;
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto flags = std::regex::ECMAScript;
        if (rule.caseInsensitive) flags |= std::regex::icase;
        std::optional<std::regex> compiled;
        try {
            compiled.emplace(rule.pattern, flags);
        } catch (const std::regex_error&) {
            // user-supplied rule that does not compile
        }
        it = cache.emplace(std::move(key), std::move(compiled)).first;
    }
    return it->second ? &*it->second : nullptr;
}

} // namespace

std::vector<LanguageMatch> scan_embedded_languages(std::string_view text,
                                                   const std::vector<RegexRule>& rules) {
    std::vector<LanguageMatch> out;
    const std::string subject(text);
    for (const auto& rule : rules) {
        const std::regex* re = compiled_rule(rule);
        if (!re) continue;
        for (auto it = std::sregex_iterator(subject.begin(), subject.end(), *re);
             it != std::sregex_iterator(); ++it) {
            LanguageMatch m;
            m.language = rule.language;
            m.begin = static_cast<std::size_t>(it->position());
            m.end = m.begin + static_cast<std::size_t>(it->length());
            m.text = it->str();
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end(), [](const LanguageMatch& a, const LanguageMatch& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        if (a.language != b.language) return a.language < b.language;
        return a.end < b.end;
    });
    return out;
}

// --- credential leaks ---------------------------------------------------------

const std::vector<std::string>& sensitive_keys_paper() {
    static const std::vector<std::string> keys = {
        "key", "token", "user", "username", "password", "pw",
    };
    return keys;
}

const std::vector<std::string>& sensitive_keys_extended() {
    static const std::vector<std::string> keys = {"apikey", "api_key", "secret"};
    return keys;
}

namespace {

bool is_sensitive_key(std::string_view key) {
    std::string lower(key);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& k : sensitive_keys_paper())
        if (lower == k) return true;
    for (const auto& k : sensitive_keys_extended())
        if (lower == k) return true;
    return false;
}

constexpr std::string_view kCredentialNote =
    "statically stored credential value; anyone with the app binary can read it";
constexpr std::string_view kTransportNoteHttp =
    "plaintext transport; request and response content can be read or altered in transit";
constexpr std::string_view kTransportNoteWs =
    "unprotected full-duplex channel; exchanged frames can be read or altered in transit";

void scan_schema_node(const JsonNode& node, const JsonSchema& schema,
                      std::vector<SmellFinding>& out) {
    if (node.kind != JsonNode::Kind::Object) {
        for (const auto& el : node.elements) scan_schema_node(el, schema, out);
        return;
    }
    for (const auto& [key, child] : node.members) {
        bool concrete = child.kind == JsonNode::Kind::String ||
                        child.kind == JsonNode::Kind::Number ||
                        child.kind == JsonNode::Kind::Bool;
        bool nonEmpty = child.kind != JsonNode::Kind::String || !child.text.empty();
        if (is_sensitive_key(key) && concrete && nonEmpty) {
            SmellFinding f;
            f.kind = SmellKind::CredentialLeak;
            f.evidence = truncate_evidence("\"" + key + "\":" + render_json_node(child));
            f.location = schema.provenance.unitPath;
            f.note = std::string(kCredentialNote);
            out.push_back(std::move(f));
        }
        scan_schema_node(child, schema, out);
    }
}

} // namespace

std::vector<SmellFinding> scan_credentials(const std::vector<WebApiUrl>& urls,
                                           const std::vector<JsonSchema>& schemas) {
    std::vector<SmellFinding> out;
    for (const WebApiUrl& u : urls) {
        for (const Endpoint& ep : u.endpoints) {
            for (const auto& [key, value] : ep.queries) {
                if (!key.resolved()) continue;
                if (!is_sensitive_key(key.render_url())) continue;
                if (!value.resolved() || value.parts.empty()) continue;
                std::string rendered = value.render_url();
                if (rendered.empty()) continue;
                SmellFinding f;
                f.kind = SmellKind::CredentialLeak;
                f.evidence = truncate_evidence(key.render_url() + "=" + rendered);
                f.location = render_url(u, ep);
                f.note = std::string(kCredentialNote);
                out.push_back(std::move(f));
            }
        }
    }
    for (const JsonSchema& s : schemas) scan_schema_node(s.root, s, out);
    std::sort(out.begin(), out.end(), [](const SmellFinding& a, const SmellFinding& b) {
        if (a.location != b.location) return a.location < b.location;
        return a.evidence < b.evidence;
    });
    return out;
}

std::vector<SmellFinding> scan_transport(const std::vector<WebApiUrl>& urls) {
    std::vector<SmellFinding> out;
    for (const WebApiUrl& u : urls) {
        if (u.scheme != UrlScheme::Http && u.scheme != UrlScheme::Ws) continue;
        if (u.schemeAssumed) continue; // assumed schemes are not evidence
        for (const Endpoint& ep : u.endpoints) {
            SmellFinding f;
            f.kind = SmellKind::InsecureTransport;
            f.evidence = truncate_evidence(render_url(u, ep));
            f.location = f.evidence;
            f.note = std::string(u.scheme == UrlScheme::Ws ? kTransportNoteWs
                                                           : kTransportNoteHttp);
            out.push_back(std::move(f));
        }
    }
    std::sort(out.begin(), out.end(), [](const SmellFinding& a, const SmellFinding& b) {
        return a.location < b.location;
    });
    return out;
}

// --- embedded languages over the report surface --------------------------------

namespace {

void scan_text_into(std::string_view text, const std::string& location,
                    const std::vector<RegexRule>& rules, std::vector<SmellFinding>& out) {
    for (const LanguageMatch& m : scan_embedded_languages(text, rules)) {
        SmellFinding f;
        f.kind = SmellKind::EmbeddedLanguage;
        f.language = m.language;
        f.evidence = truncate_evidence(m.text);
        f.location = location;
        f.note = "program text of another language assembled into the request; "
                 "injection becomes possible wherever it is interpreted";
        out.push_back(std::move(f));
    }
}

void collect_schema_strings(const JsonNode& node, std::vector<std::string>& out) {
    if (node.kind == JsonNode::Kind::String) out.push_back(node.text);
    for (const auto& [key, child] : node.members) collect_schema_strings(child, out);
    for (const auto& el : node.elements) collect_schema_strings(el, out);
}

} // namespace

std::vector<SmellFinding> scan_report_surface(const std::vector<WebApiUrl>& urls,
                                              const std::vector<JsonSchema>& schemas,
                                              const std::vector<RegexRule>& rules) {
    std::vector<SmellFinding> out;
    for (const WebApiUrl& u : urls) {
        for (const Endpoint& ep : u.endpoints) {
            std::string location = render_url(u, ep);
            scan_text_into(location, location, rules, out);
            for (const auto& [key, value] : ep.queries)
                if (value.resolved()) scan_text_into(value.render_url(), location, rules, out);
        }
    }
    for (const JsonSchema& s : schemas) {
        std::vector<std::string> strings;
        collect_schema_strings(s.root, strings);
        for (const auto& str : strings)
            scan_text_into(str, s.provenance.unitPath, rules, out);
    }
    std::sort(out.begin(), out.end(), [](const SmellFinding& a, const SmellFinding& b) {
        if (a.location != b.location) return a.location < b.location;
        if (a.language != b.language) return a.language < b.language;
        return a.evidence < b.evidence;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SmellFinding& a, const SmellFinding& b) {
                              return a.location == b.location && a.language == b.language &&
                                     a.evidence == b.evidence;
                          }),
              out.end());
    return out;
}

} // namespace apimine
