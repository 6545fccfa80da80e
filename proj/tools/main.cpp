#include "apimine/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace apimine;

int main(int argc, char** argv) {
    CLI::App app{
        "apimine - mines web API URLs and JSON request schemas from Java source\n"
        "corpora, scans them for security smells, and optionally probes the\n"
        "extracted endpoints (opt-in, allowlisted hosts only)."};

    std::string input, output;
    std::vector<std::string> formats;
    double timeBudgetMinutes = 30.0;
    int resolutionLimit = 15;
    bool probe = false;
    std::vector<std::string> allowHosts;
    int jobs = 0;
    std::string rulesFile;
    bool corpusGuessing = false;
    std::string caCert;
    double probeDelaySeconds = 1.0;

    app.add_option("--input", input, "Corpus root; each subdirectory is one app")
        ->envname("APIMINE_INPUT");
    app.add_option("--output", output, "Directory for report files")
        ->envname("APIMINE_OUTPUT");
    app.add_option("--format", formats,
                   "Report formats to write: text, structured, csv (repeatable; "
                   "default: all)")
        ->envname("APIMINE_FORMAT");
    app.add_option("--time-budget", timeBudgetMinutes,
                   "Per-app analysis budget in minutes (default 30)")
        ->envname("APIMINE_TIME_BUDGET");
    app.add_option("--resolution-limit", resolutionLimit,
                   "Node resolution budget per reconstruction (default 15)")
        ->envname("APIMINE_RESOLUTION_LIMIT");
    app.add_flag("--probe", probe, "Enable the server prober (off by default)")
        ->envname("APIMINE_PROBE");
    app.add_option("--allow-host", allowHosts,
                   "Host pattern the prober may contact (repeatable); loopback "
                   "is always permitted")
        ->envname("APIMINE_ALLOW_HOST");
    app.add_option("--jobs", jobs, "Worker threads; 1 forces the serial path")
        ->envname("APIMINE_JOBS");
    app.add_option("--rules", rulesFile,
                   "Embedded-language rules file (language<TAB>pattern per line)")
        ->envname("APIMINE_RULES");
    app.add_flag("--corpus-guessing", corpusGuessing,
                 "Widen name-similarity guessing from per-file to per-app")
        ->envname("APIMINE_CORPUS_GUESSING");
    bool scanSourceStrings = false;
    app.add_flag("--scan-source-strings", scanSourceStrings,
                 "Also run the embedded-language rules over every source "
                 "string literal")
        ->envname("APIMINE_SCAN_SOURCE_STRINGS");
    bool dumpRules = false;
    app.add_flag("--dump-rules", dumpRules,
                 "Print the active rule set (language<TAB>pattern) and exit");
    app.add_option("--probe-ca-cert", caCert,
                   "Extra trust anchor (PEM) for the prober; validation stays on")
        ->envname("APIMINE_PROBE_CA_CERT");
    app.add_option("--probe-delay", probeDelaySeconds,
                   "Minimum seconds between requests to one host (default 1)")
        ->envname("APIMINE_PROBE_DELAY");

    CLI11_PARSE(app, argc, argv);

    if (dumpRules) {
        try {
            auto rules = rulesFile.empty() ? default_rules() : load_rules_file(rulesFile);
            std::cout << render_rules(rules);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
        return 0;
    }
    if (input.empty() || output.empty()) {
        std::cerr << "error: --input and --output are required\n";
        return 1;
    }

    RunConfig cfg;
    cfg.inputRoot = input;
    cfg.outputDir = output;
    if (timeBudgetMinutes <= 0) {
        std::cerr << "error: --time-budget must be positive\n";
        return 1;
    }
    cfg.perAppTimeBudget =
        std::chrono::milliseconds(static_cast<long long>(timeBudgetMinutes * 60'000.0));
    cfg.resolutionLimit = resolutionLimit;
    cfg.parallelism = jobs;
    cfg.rulesFile = rulesFile;
    cfg.corpusWideGuessing = corpusGuessing;
    cfg.scanSourceLiterals = scanSourceStrings;

    if (!formats.empty()) {
        cfg.formats.clear();
        for (const auto& f : formats) {
            if (f == "text") cfg.formats.insert(OutputFormat::Text);
            else if (f == "structured") cfg.formats.insert(OutputFormat::Structured);
            else if (f == "csv") cfg.formats.insert(OutputFormat::Csv);
            else {
                std::cerr << "error: unknown format '" << f << "'\n";
                return 1;
            }
        }
    }

    cfg.probe.enabled = probe;
    cfg.probe.allowlist = allowHosts;
    cfg.probe.caCertFile = caCert;
    cfg.probe.perHostDelay =
        std::chrono::milliseconds(static_cast<long long>(probeDelaySeconds * 1000.0));

    std::unique_ptr<HttpTransport> transport;
    if (probe) transport = make_socket_transport();

    RunResult result = run(cfg, transport.get());
    if (result.exitCode == 0 || result.exitCode == 2) {
        std::cerr << "analyzed " << result.reports.size() << " app(s), "
                  << result.corpusStats.totalUrls << " URL(s), "
                  << result.corpusStats.distinctUrls << " distinct\n";
    }
    return result.exitCode;
}
