#pragma once

#include "apimine/extraction.hpp"
#include "apimine/server_probe.hpp"
#include "apimine/smell_scan.hpp"

#include <string>
#include <vector>

namespace apimine {

struct AppReport {
    std::string appId;
    std::vector<std::string> libraries; // sorted canonical names
    // group:artifact:version coordinates found in build files, logged as-is.
    std::vector<std::string> declaredDependencies;
    std::vector<WebApiUrl> urls;        // per-app, local duplicates visible
    std::vector<JsonSchema> schemas;
    std::vector<SmellFinding> clientFindings;
    std::vector<ServerSmellFinding> probeFindings;
    std::vector<ProbeResult> probeResults;
    std::vector<SkippedSite> skipped;
    std::size_t parseErrorCount = 0;
    std::size_t filesAnalyzed = 0;
    std::size_t filesTotal = 0;
    bool partial = false;
    double analysisSeconds = 0.0;
    AggregateStats urlStats;
};

// Canonical text format: one record per (file, library, base URL) with its
// endpoints, then one record per JSON schema. Indentation is four spaces per
// level and labels match the published output byte for byte.
std::string render_text(const AppReport& report);

// Machine-readable single document per app, "reportVersion": 1. Keys are
// emitted sorted so output is reproducible.
std::string render_structured(const AppReport& report);

std::string stats_csv_header();
std::string stats_csv_row(const AppReport& report);

// Fixed two-decimal rendering used for means everywhere.
std::string format_mean(double v);

} // namespace apimine
