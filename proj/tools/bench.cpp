// Benchmark: serial reference vs OpenMP-parallel corpus analysis over a
// generated synthetic corpus. Verifies both paths render identical reports
// before timing them.

#include "apimine/runner.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace apimine;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string synth_unit(int app, int file, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::string host = "host" + std::to_string(app) + ".example.org";
    std::string cls = "C" + std::to_string(file);
    std::string src = "package app" + std::to_string(app) + ";\n";
    switch (pick(rng)) {
    case 0:
        src += "import java.net.HttpURLConnection;\nimport java.net.URL;\n";
        src += "class " + cls + " {\n";
        src += "  String base = \"https://" + host + "\";\n";
        for (int k = 0; k < 6; ++k) {
            src += "  void m" + std::to_string(k) + "() throws Exception {\n";
            src += "    String path = \"/api/v" + std::to_string(k) + "/items\";\n";
            src += "    URL u = new URL(base + path + \"?page=\" + " +
                   std::to_string(k) + ");\n";
            src += "    HttpURLConnection c = (HttpURLConnection) u.openConnection();\n";
            src += "    c.setRequestMethod(\"GET\");\n  }\n";
        }
        src += "}\n";
        break;
    case 1:
        src += "import okhttp3.OkHttpClient;\nimport okhttp3.Request;\n";
        src += "class " + cls + " {\n";
        for (int k = 0; k < 6; ++k) {
            src += "  void m" + std::to_string(k) + "() {\n";
            src += "    String q = \"sort\";\n";
            src += "    Request r = new Request.Builder().url(\"https://" + host +
                   "/ok/" + std::to_string(k) + "?\" + q + \"=asc\").build();\n  }\n";
        }
        src += "}\n";
        break;
    default:
        src += "import org.json.JSONObject;\n";
        src += "class " + cls + " {\n";
        src += "  void m() {\n    JSONObject o = new JSONObject();\n";
        for (int k = 0; k < 8; ++k)
            src += "    o.put(\"k" + std::to_string(k) + "\", " + std::to_string(k) +
                   ");\n";
        src += "  }\n}\n";
        break;
    }
    return src;
}

fs::path generate_corpus(int apps, int filesPerApp) {
    fs::path root = fs::temp_directory_path() / "apimine_bench_corpus";
    fs::remove_all(root);
    std::mt19937 rng(42);
    for (int a = 0; a < apps; ++a) {
        fs::path appDir = root / ("app" + std::to_string(a));
        for (int f = 0; f < filesPerApp; ++f)
            write_file(appDir / ("C" + std::to_string(f) + ".java"),
                       synth_unit(a, f, rng));
    }
    return root;
}

double run_once(const fs::path& corpus, int jobs, std::string* digest) {
    RunConfig cfg;
    cfg.inputRoot = corpus;
    cfg.parallelism = jobs;
    auto t0 = std::chrono::steady_clock::now();
    RunResult result = run(cfg, nullptr);
    auto t1 = std::chrono::steady_clock::now();
    if (digest) {
        digest->clear();
        for (const auto& r : result.reports) {
            *digest += render_text(r);
            *digest += stats_csv_row(r);
            *digest += '\n';
        }
    }
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int apps = argc > 1 ? std::atoi(argv[1]) : 24;
    int filesPerApp = argc > 2 ? std::atoi(argv[2]) : 40;
    int reps = argc > 3 ? std::atoi(argv[3]) : 3;

    fs::path corpus = generate_corpus(apps, filesPerApp);
    std::printf("corpus: %d apps x %d files\n", apps, filesPerApp);

    std::string serialDigest, parallelDigest;
    run_once(corpus, 1, &serialDigest); // warm-up + digest
    run_once(corpus, 0, &parallelDigest);
    if (serialDigest != parallelDigest) {
        std::fprintf(stderr, "FAIL: serial and parallel reports differ\n");
        return 1;
    }
    std::printf("serial and parallel reports identical (%zu bytes)\n",
                serialDigest.size());

    double serialBest = 1e18, parallelBest = 1e18;
    for (int r = 0; r < reps; ++r)
        serialBest = std::min(serialBest, run_once(corpus, 1, nullptr));
    for (int r = 0; r < reps; ++r)
        parallelBest = std::min(parallelBest, run_once(corpus, 0, nullptr));

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("serial   : %8.2f ms\n", serialBest);
    std::printf("parallel : %8.2f ms  (%d threads)\n", parallelBest, threads);
    std::printf("speedup  : %8.2fx\n", serialBest / parallelBest);

    fs::remove_all(corpus);
    return 0;
}
