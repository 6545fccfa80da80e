#pragma once

#include "apimine/report.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <set>

namespace apimine {

enum class OutputFormat { Text, Structured, Csv };

struct RunConfig {
    std::filesystem::path inputRoot;
    std::filesystem::path outputDir;
    std::chrono::milliseconds perAppTimeBudget{std::chrono::minutes(30)};
    int resolutionLimit = 15;
    std::set<OutputFormat> formats = {OutputFormat::Text, OutputFormat::Structured,
                                      OutputFormat::Csv};
    ProbeConfig probe;
    // 1 selects the serial reference path; 0 uses all hardware threads.
    int parallelism = 0;
    // Widen Jaro-Winkler guessing candidates from the declaring file to the app.
    bool corpusWideGuessing = false;
    // Run the embedded-language rules over every source string literal in
    // addition to the report surface.
    bool scanSourceLiterals = false;
    std::string rulesFile; // empty: shipped rule set
};

// Runs fn(0..n-1). jobs == 1 is the plain serial loop kept as the reference
// implementation; anything else is an OpenMP parallel-for over the range.
void parallel_for_indices(std::size_t n, int jobs,
                          const std::function<void(std::size_t)>& fn);

// Analyzes one app directory (all .java files below it). Parsing and
// extraction are the data-parallel kernels: results land in per-index slots
// and merge in file order, so serial and parallel runs render identically.
AppReport analyze_app(const std::filesystem::path& appDir, const RunConfig& cfg,
                      HttpTransport* transport = nullptr);

struct RunResult {
    int exitCode = 0;
    std::vector<AppReport> reports;
    AggregateStats corpusStats; // cross-app dedup happens only here
};

// Corpus entry point: one app per immediate subdirectory, duplicate package
// ids keep only the most recent version. Writes the requested report files
// plus stats.csv. Exit code: 0 complete, 2 any partial, 1 configuration error.
RunResult run(const RunConfig& cfg, HttpTransport* transport = nullptr);

// Version-string comparison used for duplicate-app resolution ("1.10" beats
// "1.9"). Exposed for tests.
bool version_less(const std::string& a, const std::string& b);

} // namespace apimine
