#pragma once

#include "apimine/api_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace apimine {

enum class EmbeddedLanguage { Bash, Html, Javascript, Php, Python, Ruby, Sql };

std::string_view embedded_language_name(EmbeddedLanguage lang);

struct RegexRule {
    EmbeddedLanguage language;
    std::string pattern;
    bool caseInsensitive = true;

    bool operator==(const RegexRule&) const = default;
};

// The shipped rule set. Patterns were published with LaTeX escaping where
// "%x" reads as "\x" ("%.sh" is "\.sh"); they are stored here already
// transliterated into plain regular expressions.
const std::vector<RegexRule>& default_rules();

// One `language<TAB>pattern` per line; '#' starts a comment line.
std::vector<RegexRule> load_rules_file(const std::string& path);
std::string render_rules(const std::vector<RegexRule>& rules);

struct LanguageMatch {
    EmbeddedLanguage language;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
};

// Case-insensitive scan with every rule; matches from different languages
// may overlap and are all reported. Order: by position, then language.
std::vector<LanguageMatch> scan_embedded_languages(std::string_view text);
std::vector<LanguageMatch> scan_embedded_languages(std::string_view text,
                                                   const std::vector<RegexRule>& rules);

enum class SmellKind { CredentialLeak, EmbeddedLanguage, InsecureTransport };

std::string_view smell_kind_name(SmellKind kind);

struct SmellFinding {
    SmellKind kind = SmellKind::CredentialLeak;
    EmbeddedLanguage language = EmbeddedLanguage::Sql; // EmbeddedLanguage only
    std::string evidence; // matched text, truncated to 200 chars
    std::string location; // unitPath or rendered URL
    std::string note;     // one-line consequence description
};

// Query keys straight from the published symptom list.
const std::vector<std::string>& sensitive_keys_paper();
// Common synonyms shipped as an extension to the published list.
const std::vector<std::string>& sensitive_keys_extended();

// Credential leak: a query key or JSON object key from the sensitive list
// whose value is a concrete literal. Placeholders never produce findings.
std::vector<SmellFinding> scan_credentials(const std::vector<WebApiUrl>& urls,
                                           const std::vector<JsonSchema>& schemas);

// Insecure transport: http and ws schemes.
std::vector<SmellFinding> scan_transport(const std::vector<WebApiUrl>& urls);

// Embedded-language findings over the report surface of one app: rendered
// URL strings, query values, and JSON concrete strings.
std::vector<SmellFinding> scan_report_surface(const std::vector<WebApiUrl>& urls,
                                              const std::vector<JsonSchema>& schemas,
                                              const std::vector<RegexRule>& rules);

} // namespace apimine
