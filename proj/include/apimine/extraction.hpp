#pragma once

#include "apimine/api_model.hpp"
#include "apimine/source_model.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace apimine {

enum class LibraryId {
    JavaNetUrlConnection,
    JavaNetHttpUrlConnection,
    JavaNetHttpsUrlConnection,
    JavaNetSocket,
    OkHttp,
    Retrofit,
    Volley,
    Glide,
    Ion,
    ApacheHttpClient,
    Loopj,
    // JSON libraries
    OrgJson,
    Gson,
    Moshi,
};

// Canonical name used in report output, e.g. "com.squareup.retrofit".
std::string_view library_report_name(LibraryId id);
bool is_json_library(LibraryId id);

// Detection relies only on import statements and fully qualified call
// receivers recorded during parsing.
std::set<LibraryId> detect_libraries(const SourceUnit& unit);

// App-wide context assembled in a first pass over all units, consumed by the
// per-unit extraction pass. Pointees must outlive extraction.
struct CorpusScope {
    // Resolved .baseUrl(...) arguments seen anywhere in the app.
    std::vector<StringValue> retrofitBaseUrls;
    // Class declarations by simple name, app-wide (for nested schema lookup).
    std::map<std::string, const TypeDecl*> classesByName;
    // Model classes referenced by Gson/Moshi serialization calls, with the
    // library that referenced them.
    std::map<std::string, LibraryId> serializedTypes;
    // Corpus-wide guessing pool; per-unit pools are used when disabled.
    std::map<std::string, StringValue> corpusGuessCandidates;
    bool corpusWideGuessing = false;
    int resolutionLimit = 15;
};

// Scans one unit and folds its contributions into the scope.
void scan_into_corpus_scope(const SourceUnit& unit, CorpusScope& scope);

// A call site that could not become a URL record, kept for the report.
struct SkippedSite {
    std::string unitPath;
    std::string reason; // e.g. "scheme ftp outside the web set"
    std::string detail;
    std::size_t position = 0;
};

struct EndpointExtraction {
    std::vector<WebApiUrl> urls;
    std::vector<SkippedSite> skipped;
};

// Runs every per-library strategy over one unit. Sites whose URL value is
// all placeholders still produce a record, flagged incomplete.
EndpointExtraction extract_endpoints(const SourceUnit& unit, const CorpusScope& scope);

// org.json put-chain folding plus Gson/Moshi model-class conversion.
std::vector<JsonSchema> extract_json_schemas(const SourceUnit& unit,
                                             const CorpusScope& scope);

} // namespace apimine
