#pragma once

#include "apimine/source_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apimine {

enum class PlaceholderKind { String, Number, NumberInt, Boolean, Null };

// URL reports use <String>, JSON reports use <STRING> (the two listing
// styles differ in case and both must be reproduced exactly).
std::string placeholder_url_token(PlaceholderKind k);
std::string placeholder_json_token(PlaceholderKind k);

struct Part {
    bool isPlaceholder = false;
    std::string literal;                              // literal text
    PlaceholderKind kind = PlaceholderKind::String;   // placeholder kind
    std::string sourceName;                           // identifier it came from

    bool operator==(const Part&) const = default;
};

// Sequence of literal fragments and typed placeholders. Adjacent literals
// are always coalesced on append.
struct StringValue {
    std::vector<Part> parts;

    bool resolved() const;
    bool empty() const { return parts.empty(); }
    bool all_placeholders() const;

    void append_literal(std::string_view text);
    void append_placeholder(PlaceholderKind kind, std::string sourceName = {});
    void append(const StringValue& other);

    std::string render_url() const;  // placeholders as <String>
    std::string render_json() const; // placeholders as <STRING>

    static StringValue literal(std::string_view text);
    static StringValue placeholder(PlaceholderKind kind, std::string sourceName = {});

    bool operator==(const StringValue&) const = default;
};

struct ResolutionBudget {
    int maxIterations = 15;
    int iterationsUsed = 0;

    bool exhausted() const { return iterationsUsed >= maxIterations; }
    // Consumes one resolution step; false when the budget ran out.
    bool step() {
        if (exhausted()) return false;
        ++iterationsUsed;
        return true;
    }
};

struct SimilarityConfig {
    double prefixScale = 0.1;    // Winkler p, standard constant
    int maxPrefix = 4;           // Winkler l_max, standard constant
    double acceptThreshold = 0.85;
};

// Jaro similarity with the Winkler common-prefix bonus. Symmetric, in [0,1],
// exact 1.0 for equal strings, 0.0 when no characters match.
double jaro_winkler(std::string_view a, std::string_view b, const SimilarityConfig& cfg = {});

// Picks the candidate whose key is most similar to `name`, if the best score
// reaches cfg.acceptThreshold. Ties break toward the lexicographically
// smaller key. Candidates must hold fully resolved values.
std::optional<StringValue> guess_value(const std::string& name,
                                       const std::map<std::string, StringValue>& candidates,
                                       const SimilarityConfig& cfg = {});

struct ReconstructionContext {
    SimilarityConfig similarity;
    // Resolved string declarations eligible for name-similarity guessing;
    // null disables guessing.
    const std::map<std::string, StringValue>* guessCandidates = nullptr;
};

// Recursively resolves an expression to its most-concrete string value.
// Unresolved numeric leaves become "0", booleans "true"; unresolved strings
// try guess_value and fall back to a placeholder. Terminates on cycles and
// when the budget is exhausted.
StringValue reconstruct(const ExprPtr& expr, const Scope& scope, ResolutionBudget& budget,
                        const ReconstructionContext& ctx = {});

// Collects the guessing candidate pool for one unit: every string-typed
// declaration whose value resolves fully without guessing.
std::map<std::string, StringValue> collect_guess_candidates(const SourceUnit& unit);

} // namespace apimine
