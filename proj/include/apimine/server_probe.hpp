#pragma once

#include "apimine/api_model.hpp"

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace apimine {

struct ProbeConfig {
    bool enabled = false;
    // Host patterns ("api.example.org", "*.example.org"). When enabled with
    // an empty allowlist, only loopback targets are permitted.
    std::vector<std::string> allowlist;
    std::chrono::milliseconds timeout{10'000};
    int maxRedirects = 5;
    std::chrono::milliseconds perHostDelay{1'000};
    std::string userAgent = "apimine-probe/0.1";
    std::size_t bodyCap = 64 * 1024;
    // Extra trust anchor (PEM) for test servers; certificate validation
    // stays on either way.
    std::string caCertFile;
};

enum class ProbeErrorKind { Timeout, Dns, Tls, Refused };

std::string_view probe_error_name(ProbeErrorKind k);

struct RedirectHop {
    int status = 0;
    std::string location;
};

struct ProbeResult {
    std::string url;
    UrlScheme scheme = UrlScheme::Http; // scheme of the original request
    std::string host;
    std::string path;   // request target, query included
    std::string transport; // scheme that served the final response
    int status = 0;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string bodySnippet;
    std::vector<RedirectHop> redirectChain;
    std::optional<ProbeErrorKind> error;
    // Query keys sent with the request, for the access-control check.
    std::vector<std::string> requestQueryKeys;
};

// --- transport ---------------------------------------------------------------

struct TransportRequest {
    bool tls = false;
    std::string host;
    int port = 0;
    std::string target;
    std::vector<std::pair<std::string, std::string>> headers;
    std::chrono::milliseconds timeout{10'000};
    std::string caCertFile;
};

struct TransportResponse {
    bool ok = false;
    int status = 0;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
    std::optional<ProbeErrorKind> error;
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual TransportResponse get(const TransportRequest& req) = 0;
};

// Real client: HTTP/1.1 over sockets, TLS with certificate validation on.
std::unique_ptr<HttpTransport> make_socket_transport();

// Records calls without touching the network; used to assert that disabled
// probing sends nothing.
class CountingStubTransport : public HttpTransport {
public:
    TransportResponse get(const TransportRequest&) override {
        ++calls_;
        TransportResponse r;
        r.error = ProbeErrorKind::Refused;
        return r;
    }
    int calls() const { return calls_.load(); }

private:
    std::atomic<int> calls_{0};
};

// --- prober --------------------------------------------------------------------

struct ProbeOutcome {
    std::optional<ProbeResult> result;
    // Non-empty when a precondition failed; in that case no packet was sent.
    std::string policyViolation;
};

class Prober {
public:
    Prober(ProbeConfig cfg, HttpTransport& transport);

    // One GET with redirects followed (chain recorded) and per-host pacing.
    // Placeholder query values travel literally (position=<String>).
    ProbeOutcome probe(const WebApiUrl& url, const Endpoint& ep);

    const ProbeConfig& config() const { return cfg_; }

private:
    bool host_permitted(const std::string& host) const;
    void pace(const std::string& host);

    ProbeConfig cfg_;
    HttpTransport& transport_;
    std::map<std::string, std::chrono::steady_clock::time_point> lastRequest_;
};

// --- server-side smells ---------------------------------------------------------

enum class ServerSmell {
    ImplementationDisclosure,
    VersionDisclosure,
    LackOfAccessControlCandidate,
    MissingHttpsRedirect,
    MissingHsts,
};

std::string_view server_smell_name(ServerSmell s);

struct ServerSmellConfig {
    // Body patterns that look like leaked implementation detail.
    std::vector<std::string> implementationPatterns = {
        R"(at [A-Za-z_$][\w$]*(\.[\w$]+)+\()",
        R"(Exception)",
        R"(Traceback \(most recent call last\))",
        R"(Fatal error:.*on line)",
    };
    // Path tokens that mark an endpoint as a manual-review candidate.
    std::vector<std::string> sensitivePathTokens = {
        "user", "account", "admin", "transaction", "location", "sql",
    };
};

struct ServerSmellFinding {
    ServerSmell smell;
    std::string url;
    std::string evidence;
};

// Pure function of the probe result; the optional paired https result only
// enriches evidence for the redirect check.
std::vector<ServerSmellFinding> evaluate(const ProbeResult& result,
                                         const ProbeResult* pairedHttpsResult = nullptr,
                                         const ServerSmellConfig& cfg = {});

} // namespace apimine
