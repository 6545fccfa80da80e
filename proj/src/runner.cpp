#include "apimine/runner.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace apimine {

namespace fs = std::filesystem;

void parallel_for_indices(std::size_t n, int jobs,
                          const std::function<void(std::size_t)>& fn) {
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    int threads = jobs > 0 ? jobs : omp_get_max_threads();
    std::atomic<bool> failed{false};
    std::string firstError;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (const std::exception& e) {
            bool expected = false;
            if (failed.compare_exchange_strong(expected, true)) {
#pragma omp critical
                firstError = e.what();
            }
        } catch (...) {
            failed = true;
        }
    }
    if (failed) throw std::runtime_error(firstError.empty() ? "worker failed" : firstError);
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

// --- per-app analysis -------------------------------------------------------------

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<fs::path> collect_java_files(const fs::path& root) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(root, ec), end; it != end && !ec;
         it.increment(ec)) {
        if (it->is_regular_file(ec) && it->path().extension() == ".java")
            files.push_back(it->path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct UnitResults {
    EndpointExtraction endpoints;
    std::vector<JsonSchema> schemas;
    std::set<LibraryId> libraries;
    std::vector<SmellFinding> literalFindings;
    bool analyzed = false;
};

// Declared dependency coordinates from Gradle/Maven build files; versions are
// logged verbatim, nothing is resolved.
std::vector<std::string> collect_declared_dependencies(const fs::path& appDir) {
    static const std::regex kGradleCoordinate(
        R"re(["']([A-Za-z_][\w.\-]*:[\w.\-]+:[\w.\-+]+)["'])re");
    static const std::regex kPomDependency(
        R"re(<groupId>([^<]+)</groupId>\s*<artifactId>([^<]+)</artifactId>\s*<version>([^<]+)</version>)re");
    std::set<std::string> coords;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(appDir, ec), end; it != end && !ec;
         it.increment(ec)) {
        if (!it->is_regular_file(ec)) continue;
        const std::string name = it->path().filename().string();
        bool gradle = name == "build.gradle" || name == "build.gradle.kts";
        bool pom = name == "pom.xml";
        if (!gradle && !pom) continue;
        std::string text = read_file(it->path());
        if (gradle) {
            for (auto m = std::sregex_iterator(text.begin(), text.end(), kGradleCoordinate);
                 m != std::sregex_iterator(); ++m)
                coords.insert((*m)[1]);
        } else {
            for (auto m = std::sregex_iterator(text.begin(), text.end(), kPomDependency);
                 m != std::sregex_iterator(); ++m)
                coords.insert((*m)[1].str() + ":" + (*m)[2].str() + ":" + (*m)[3].str());
        }
    }
    return {coords.begin(), coords.end()};
}

} // namespace

AppReport analyze_app(const fs::path& appDir, const RunConfig& cfg,
                      HttpTransport* transport) {
    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + cfg.perAppTimeBudget;
    std::atomic<bool> expired{false};
    auto check_deadline = [&] {
        if (expired.load(std::memory_order_relaxed)) return true;
        if (std::chrono::steady_clock::now() >= deadline) {
            expired.store(true, std::memory_order_relaxed);
            return true;
        }
        return false;
    };

    AppReport report;
    report.appId = appDir.filename().string();

    std::vector<fs::path> files = collect_java_files(appDir);
    report.filesTotal = files.size();

    // Kernel 1: parse every file. Units land in per-index slots.
    std::vector<SourceUnit> units(files.size());
    std::vector<char> parsed(files.size(), 0);
    parallel_for_indices(files.size(), cfg.parallelism, [&](std::size_t i) {
        if (check_deadline()) return;
        std::string text = read_file(files[i]);
        std::string display = fs::relative(files[i], appDir.parent_path()).generic_string();
        units[i] = parse_unit(text, display);
        parsed[i] = 1;
    });

    // App-wide context is a serial fold over parsed units, in file order.
    CorpusScope scope;
    scope.resolutionLimit = cfg.resolutionLimit;
    scope.corpusWideGuessing = cfg.corpusWideGuessing;
    for (std::size_t i = 0; i < units.size(); ++i)
        if (parsed[i]) scan_into_corpus_scope(units[i], scope);

    // Kernel 2: per-unit extraction.
    std::vector<RegexRule> rules =
        cfg.rulesFile.empty() ? default_rules() : load_rules_file(cfg.rulesFile);
    std::vector<UnitResults> results(units.size());
    parallel_for_indices(units.size(), cfg.parallelism, [&](std::size_t i) {
        if (!parsed[i] || check_deadline()) return;
        results[i].endpoints = extract_endpoints(units[i], scope);
        results[i].schemas = extract_json_schemas(units[i], scope);
        results[i].libraries = detect_libraries(units[i]);
        if (cfg.scanSourceLiterals) {
            for_each_string_literal(units[i], [&](const Expr& lit) {
                for (const LanguageMatch& m : scan_embedded_languages(lit.text, rules)) {
                    SmellFinding f;
                    f.kind = SmellKind::EmbeddedLanguage;
                    f.language = m.language;
                    f.evidence = m.text.substr(0, 200);
                    f.location = units[i].path;
                    f.note = "string literal in source assembles program text of "
                             "another language";
                    results[i].literalFindings.push_back(std::move(f));
                }
            });
        }
        results[i].analyzed = true;
    });

    std::set<std::string> libraryNames;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (parsed[i]) {
            report.parseErrorCount += units[i].parseErrors.size();
        }
        if (!results[i].analyzed) continue;
        ++report.filesAnalyzed;
        auto& ex = results[i].endpoints;
        report.urls.insert(report.urls.end(), std::make_move_iterator(ex.urls.begin()),
                           std::make_move_iterator(ex.urls.end()));
        report.skipped.insert(report.skipped.end(),
                              std::make_move_iterator(ex.skipped.begin()),
                              std::make_move_iterator(ex.skipped.end()));
        report.schemas.insert(report.schemas.end(),
                              std::make_move_iterator(results[i].schemas.begin()),
                              std::make_move_iterator(results[i].schemas.end()));
        for (LibraryId id : results[i].libraries)
            libraryNames.insert(std::string(library_report_name(id)));
    }
    report.libraries.assign(libraryNames.begin(), libraryNames.end());
    report.declaredDependencies = collect_declared_dependencies(appDir);
    report.partial = expired.load();

    // Smell scan over the report surface.
    auto transportFindings = scan_transport(report.urls);
    auto credentialFindings = scan_credentials(report.urls, report.schemas);
    auto languageFindings = scan_report_surface(report.urls, report.schemas, rules);
    report.clientFindings.reserve(transportFindings.size() + credentialFindings.size() +
                                  languageFindings.size());
    auto append = [&](std::vector<SmellFinding>& v) {
        report.clientFindings.insert(report.clientFindings.end(),
                                     std::make_move_iterator(v.begin()),
                                     std::make_move_iterator(v.end()));
    };
    append(credentialFindings);
    append(languageFindings);
    for (auto& r : results) append(r.literalFindings);
    append(transportFindings);

    report.urlStats = stats(report.urls);

    // Opt-in probing: distinct resolved URLs only, serial per host by design.
    if (cfg.probe.enabled && transport) {
        Prober prober(cfg.probe, *transport);
        std::vector<WebApiUrl> distinct = dedup(report.urls);
        for (const WebApiUrl& u : distinct) {
            if (check_deadline()) break;
            for (const Endpoint& ep : u.endpoints) {
                ProbeOutcome outcome = prober.probe(u, ep);
                if (outcome.result) report.probeResults.push_back(std::move(*outcome.result));
            }
        }
        // Pair each http probe with an https probe of the same host for
        // evidence enrichment, then evaluate.
        std::map<std::string, const ProbeResult*> httpsByHost;
        for (const auto& r : report.probeResults)
            if (r.scheme == UrlScheme::Https && !r.error) httpsByHost.emplace(r.host, &r);
        for (const auto& r : report.probeResults) {
            const ProbeResult* paired = nullptr;
            if (r.scheme == UrlScheme::Http) {
                auto it = httpsByHost.find(r.host);
                if (it != httpsByHost.end()) paired = it->second;
            }
            auto findings = evaluate(r, paired);
            report.probeFindings.insert(report.probeFindings.end(), findings.begin(),
                                        findings.end());
        }
    }

    report.analysisSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// --- corpus run --------------------------------------------------------------------

namespace {

struct AppCandidate {
    fs::path dir;
    std::string packageId;
    std::string version;
};

// Pulls package id and version from the first AndroidManifest.xml below the
// app directory. Falls back to the directory name with no version.
AppCandidate inspect_app(const fs::path& dir) {
    AppCandidate c;
    c.dir = dir;
    c.packageId = dir.filename().string();
    std::vector<fs::path> manifests;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(dir, ec), end; it != end && !ec;
         it.increment(ec)) {
        if (it->is_regular_file(ec) && it->path().filename() == "AndroidManifest.xml")
            manifests.push_back(it->path());
    }
    if (manifests.empty()) return c;
    std::sort(manifests.begin(), manifests.end());
    std::string text = read_file(manifests.front());
    std::smatch m;
    static const std::regex kPackage(R"re(package\s*=\s*"([^"]+)")re");
    static const std::regex kVersionName(R"re(android:versionName\s*=\s*"([^"]+)")re");
    static const std::regex kVersionCode(R"re(android:versionCode\s*=\s*"([^"]+)")re");
    if (std::regex_search(text, m, kPackage)) c.packageId = m[1];
    if (std::regex_search(text, m, kVersionName)) c.version = m[1];
    else if (std::regex_search(text, m, kVersionCode)) c.version = m[1];
    return c;
}

std::vector<std::string> version_segments(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == '.' || c == '-' || c == '_') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
    });
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

bool version_less(const std::string& a, const std::string& b) {
    auto sa = version_segments(a);
    auto sb = version_segments(b);
    for (std::size_t i = 0; i < std::max(sa.size(), sb.size()); ++i) {
        if (i >= sa.size()) return true;  // shorter and equal so far: older
        if (i >= sb.size()) return false;
        bool na = all_digits(sa[i]), nb = all_digits(sb[i]);
        if (na && nb) {
            long va = std::stol(sa[i]), vb = std::stol(sb[i]);
            if (va != vb) return va < vb;
        } else if (sa[i] != sb[i]) {
            return sa[i] < sb[i];
        }
    }
    return false;
}

RunResult run(const RunConfig& cfg, HttpTransport* transport) {
    RunResult result;
    std::error_code ec;
    if (cfg.inputRoot.empty() || !fs::is_directory(cfg.inputRoot, ec)) {
        std::cerr << "error: input root '" << cfg.inputRoot.string()
                  << "' does not exist or is not a directory\n";
        result.exitCode = 1;
        return result;
    }
    if (!cfg.outputDir.empty()) {
        fs::create_directories(cfg.outputDir, ec);
        if (ec) {
            std::cerr << "error: cannot create output directory '"
                      << cfg.outputDir.string() << "': " << ec.message() << "\n";
            result.exitCode = 1;
            return result;
        }
    }
    if (!cfg.rulesFile.empty()) {
        try {
            load_rules_file(cfg.rulesFile);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            result.exitCode = 1;
            return result;
        }
    }

    // One app per immediate subdirectory; duplicates (same package id) keep
    // only the most recent version.
    std::vector<AppCandidate> candidates;
    for (fs::directory_iterator it(cfg.inputRoot, ec), end; it != end && !ec;
         it.increment(ec)) {
        if (it->is_directory(ec)) candidates.push_back(inspect_app(it->path()));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const AppCandidate& a, const AppCandidate& b) { return a.dir < b.dir; });
    std::map<std::string, const AppCandidate*> byPackage;
    for (const AppCandidate& c : candidates) {
        auto it = byPackage.find(c.packageId);
        if (it == byPackage.end()) {
            byPackage.emplace(c.packageId, &c);
        } else if (version_less(it->second->version, c.version)) {
            std::cerr << "note: dropping " << it->second->dir.filename().string()
                      << " in favor of newer " << c.dir.filename().string() << "\n";
            it->second = &c;
        } else {
            std::cerr << "note: dropping " << c.dir.filename().string()
                      << " in favor of newer " << it->second->dir.filename().string()
                      << "\n";
        }
    }
    std::vector<const AppCandidate*> apps;
    apps.reserve(byPackage.size());
    for (const auto& [id, c] : byPackage) apps.push_back(c);
    std::sort(apps.begin(), apps.end(),
              [](const AppCandidate* a, const AppCandidate* b) { return a->dir < b->dir; });

    result.reports.resize(apps.size());
    parallel_for_indices(apps.size(), cfg.parallelism, [&](std::size_t i) {
        result.reports[i] = analyze_app(apps[i]->dir, cfg, transport);
    });

    // Corpus-level statistics over all apps with cross-app dedup.
    std::vector<WebApiUrl> allUrls;
    for (const auto& r : result.reports)
        allUrls.insert(allUrls.end(), r.urls.begin(), r.urls.end());
    result.corpusStats = stats(allUrls);

    bool anyPartial = false;
    for (const auto& r : result.reports) anyPartial |= r.partial;

    if (!cfg.outputDir.empty()) {
        for (const auto& r : result.reports) {
            if (cfg.formats.count(OutputFormat::Text))
                write_text_file(cfg.outputDir / (r.appId + ".txt"), render_text(r));
            if (cfg.formats.count(OutputFormat::Structured))
                write_text_file(cfg.outputDir / (r.appId + ".json"), render_structured(r));
        }
        if (cfg.formats.count(OutputFormat::Csv)) {
            std::string csv = stats_csv_header() + "\n";
            for (const auto& r : result.reports) csv += stats_csv_row(r) + "\n";
            // Corpus totals: distinct is deduplicated across apps.
            AppReport corpus;
            corpus.appId = "TOTAL";
            corpus.urls = std::move(allUrls);
            corpus.urlStats = result.corpusStats;
            corpus.partial = anyPartial;
            for (const auto& r : result.reports)
                corpus.clientFindings.insert(corpus.clientFindings.end(),
                                             r.clientFindings.begin(),
                                             r.clientFindings.end());
            csv += stats_csv_row(corpus) + "\n";
            write_text_file(cfg.outputDir / "stats.csv", csv);
        }
    }

    result.exitCode = anyPartial ? 2 : 0;
    return result;
}

} // namespace apimine
