#include "apimine/server_probe.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <netdb.h>

#include <algorithm>
#include <cctype>
#include <regex>
#include <thread>

namespace apimine {

std::string_view probe_error_name(ProbeErrorKind k) {
    switch (k) {
    case ProbeErrorKind::Timeout: return "timeout";
    case ProbeErrorKind::Dns: return "dns";
    case ProbeErrorKind::Tls: return "tls";
    case ProbeErrorKind::Refused: return "refused";
    }
    return "refused";
}

std::string_view server_smell_name(ServerSmell s) {
    switch (s) {
    case ServerSmell::ImplementationDisclosure: return "implementation_disclosure";
    case ServerSmell::VersionDisclosure: return "version_disclosure";
    case ServerSmell::LackOfAccessControlCandidate: return "lack_of_access_control_candidate";
    case ServerSmell::MissingHttpsRedirect: return "missing_https_redirect";
    case ServerSmell::MissingHsts: return "missing_hsts";
    }
    return "missing_hsts";
}

// --- socket transport -----------------------------------------------------------

namespace {

bool host_resolves(const std::string& host) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    int rc = getaddrinfo(host.c_str(), nullptr, &hints, &res);
    if (res) freeaddrinfo(res);
    return rc == 0;
}

ProbeErrorKind classify(httplib::Error err) {
    switch (err) {
    case httplib::Error::ConnectionTimeout:
    case httplib::Error::Read:
    case httplib::Error::Write:
        return ProbeErrorKind::Timeout;
    case httplib::Error::SSLConnection:
    case httplib::Error::SSLLoadingCerts:
    case httplib::Error::SSLServerVerification:
        return ProbeErrorKind::Tls;
    case httplib::Error::Connection:
    default:
        return ProbeErrorKind::Refused;
    }
}

class SocketTransport : public HttpTransport {
public:
    TransportResponse get(const TransportRequest& req) override {
        TransportResponse out;
        if (!host_resolves(req.host)) {
            out.error = ProbeErrorKind::Dns;
            return out;
        }

        httplib::Headers headers;
        for (const auto& [k, v] : req.headers) headers.emplace(k, v);

        auto fill = [&](const httplib::Result& res) {
            if (!res) {
                out.error = classify(res.error());
                return;
            }
            out.ok = true;
            out.status = res->status;
            for (const auto& [k, v] : res->headers) out.headers.emplace_back(k, v);
            out.body = res->body;
        };

        if (req.tls) {
            httplib::SSLClient cli(req.host, req.port);
            cli.enable_server_certificate_verification(true);
            if (!req.caCertFile.empty()) cli.set_ca_cert_path(req.caCertFile);
            cli.set_connection_timeout(req.timeout);
            cli.set_read_timeout(req.timeout);
            cli.set_follow_location(false);
            fill(cli.Get(req.target, headers));
        } else {
            httplib::Client cli(req.host, req.port);
            cli.set_connection_timeout(req.timeout);
            cli.set_read_timeout(req.timeout);
            cli.set_follow_location(false);
            fill(cli.Get(req.target, headers));
        }
        return out;
    }
};

} // namespace

std::unique_ptr<HttpTransport> make_socket_transport() {
    return std::make_unique<SocketTransport>();
}

// --- prober ----------------------------------------------------------------------

namespace {

bool is_loopback(const std::string& host) {
    if (host == "localhost" || host == "::1") return true;
    return host.rfind("127.", 0) == 0;
}

// host[:port] -> (host, port); port 0 means scheme default.
std::pair<std::string, int> split_host_port(const std::string& authority) {
    auto colon = authority.rfind(':');
    if (colon == std::string::npos || authority.find(':') != colon)
        return {authority, 0}; // no port (or IPv6 literal without bracket care)
    std::string portText = authority.substr(colon + 1);
    if (portText.empty() ||
        !std::all_of(portText.begin(), portText.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
        return {authority, 0};
    return {authority.substr(0, colon), std::stoi(portText)};
}

bool pattern_matches_host(const std::string& pattern, const std::string& host) {
    if (pattern == host) return true;
    if (pattern.rfind("*.", 0) == 0) {
        std::string suffix = pattern.substr(1); // ".example.org"
        return host.size() > suffix.size() &&
               host.compare(host.size() - suffix.size(), suffix.size(), suffix) == 0;
    }
    return false;
}

struct ParsedLocation {
    bool https = false;
    std::string host;
    int port = 0;
    std::string target = "/";
    bool absolute = false;
};

std::optional<ParsedLocation> parse_location(const std::string& loc) {
    ParsedLocation p;
    std::string rest;
    if (loc.rfind("https://", 0) == 0) {
        p.https = true;
        p.absolute = true;
        rest = loc.substr(8);
    } else if (loc.rfind("http://", 0) == 0) {
        p.absolute = true;
        rest = loc.substr(7);
    } else if (!loc.empty() && loc[0] == '/') {
        p.target = loc;
        return p;
    } else {
        return std::nullopt;
    }
    auto slash = rest.find('/');
    std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
    p.target = slash == std::string::npos ? "/" : rest.substr(slash);
    auto [host, port] = split_host_port(authority);
    if (host.empty()) return std::nullopt;
    p.host = host;
    p.port = port;
    return p;
}

} // namespace

Prober::Prober(ProbeConfig cfg, HttpTransport& transport)
    : cfg_(std::move(cfg)), transport_(transport) {}

bool Prober::host_permitted(const std::string& host) const {
    if (is_loopback(host)) return true;
    for (const auto& pattern : cfg_.allowlist)
        if (pattern_matches_host(pattern, host)) return true;
    return false;
}

void Prober::pace(const std::string& host) {
    auto now = std::chrono::steady_clock::now();
    auto it = lastRequest_.find(host);
    if (it != lastRequest_.end()) {
        auto readyAt = it->second + cfg_.perHostDelay;
        if (readyAt > now) {
            std::this_thread::sleep_for(readyAt - now);
            now = std::chrono::steady_clock::now();
        }
    }
    lastRequest_[host] = now;
}

ProbeOutcome Prober::probe(const WebApiUrl& url, const Endpoint& ep) {
    ProbeOutcome outcome;
    if (!cfg_.enabled) {
        outcome.policyViolation = "probing is disabled";
        return outcome;
    }
    if (!url.authority.resolved() || url.schemeAssumed || url.incomplete) {
        outcome.policyViolation = "scheme or authority is not fully resolved";
        return outcome;
    }
    auto [host, explicitPort] = split_host_port(url.authority.render_url());
    if (host.empty()) {
        outcome.policyViolation = "empty host";
        return outcome;
    }
    if (!host_permitted(host)) {
        outcome.policyViolation = "host '" + host + "' is not allowlisted";
        return outcome;
    }

    const bool startTls = url.scheme == UrlScheme::Https || url.scheme == UrlScheme::Wss;

    std::string target = "/";
    target += ep.render_path();
    if (!ep.queries.empty()) {
        target += '?';
        for (std::size_t i = 0; i < ep.queries.size(); ++i) {
            if (i) target += '&';
            target += ep.queries[i].first.render_url();
            if (!ep.queries[i].second.parts.empty()) {
                target += '=';
                target += ep.queries[i].second.render_url(); // placeholders go literally
            }
        }
    }

    ProbeResult result;
    result.url = render_url(url, ep);
    result.scheme = url.scheme;
    result.host = host;
    result.path = target;
    for (const auto& q : ep.queries) result.requestQueryKeys.push_back(q.first.render_url());

    TransportRequest req;
    req.tls = startTls;
    req.host = host;
    req.port = explicitPort ? explicitPort : (startTls ? 443 : 80);
    req.target = target;
    req.headers = {{"User-Agent", cfg_.userAgent}, {"Accept", "*/*"}};
    req.timeout = cfg_.timeout;
    req.caCertFile = cfg_.caCertFile;

    for (int hop = 0;; ++hop) {
        pace(req.host);
        TransportResponse res = transport_.get(req);
        if (!res.ok) {
            result.error = res.error;
            result.transport = req.tls ? "https" : "http";
            break;
        }
        bool redirect = res.status >= 300 && res.status < 400;
        std::string location;
        for (const auto& [k, v] : res.headers) {
            std::string lower(k);
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (lower == "location") location = v;
        }
        if (redirect && !location.empty() &&
            static_cast<int>(result.redirectChain.size()) < cfg_.maxRedirects) {
            result.redirectChain.push_back({res.status, location});
            auto next = parse_location(location);
            if (!next) break;
            if (next->absolute) {
                req.tls = next->https;
                req.host = next->host;
                req.port = next->port ? next->port : (next->https ? 443 : 80);
            }
            req.target = next->target;
            continue;
        }
        result.status = res.status;
        result.transport = req.tls ? "https" : "http";
        result.headers = res.headers;
        result.bodySnippet = res.body.substr(0, cfg_.bodyCap);
        break;
    }
    outcome.result = std::move(result);
    return outcome;
}

// --- evaluation -------------------------------------------------------------------

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool version_token(const std::string& value) {
    // A digit directly after '/' or space marks a version, e.g. "PHP/5.5.23".
    for (std::size_t i = 1; i < value.size(); ++i)
        if ((value[i - 1] == '/' || value[i - 1] == ' ') &&
            std::isdigit(static_cast<unsigned char>(value[i])))
            return true;
    return false;
}

std::optional<long> hsts_max_age(const std::string& value) {
    std::string lower = lower_copy(value);
    auto pos = lower.find("max-age=");
    if (pos == std::string::npos) return std::nullopt;
    pos += 8;
    long age = 0;
    bool any = false;
    while (pos < lower.size() && std::isdigit(static_cast<unsigned char>(lower[pos]))) {
        age = age * 10 + (lower[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any) return std::nullopt;
    return age;
}

bool same_host(const std::string& location, const std::string& host) {
    auto parsed = parse_location(location);
    return parsed && parsed->absolute && parsed->host == host;
}

} // namespace

std::vector<ServerSmellFinding> evaluate(const ProbeResult& result,
                                         const ProbeResult* pairedHttpsResult,
                                         const ServerSmellConfig& cfg) {
    std::vector<ServerSmellFinding> findings;
    if (result.error) return findings; // nothing observable came back

    auto add = [&](ServerSmell smell, std::string evidence) {
        findings.push_back({smell, result.url, std::move(evidence)});
    };

    static const std::vector<std::string> kVersionHeaders = {
        "engine", "server", "x-aspnet-version", "x-powered-by",
    };
    for (const auto& [name, value] : result.headers) {
        std::string lower = lower_copy(name);
        for (const auto& h : kVersionHeaders) {
            if (lower == h && version_token(value)) {
                add(ServerSmell::VersionDisclosure, name + ": " + value);
            }
        }
    }

    // Body checks run regardless of status; some servers report errors
    // behind a 200.
    for (const auto& pattern : cfg.implementationPatterns) {
        std::regex re;
        try {
            re = std::regex(pattern);
        } catch (const std::regex_error&) {
            continue;
        }
        std::smatch m;
        if (std::regex_search(result.bodySnippet, m, re)) {
            std::string evidence = m.str();
            if (evidence.size() > 200) evidence.resize(200);
            add(ServerSmell::ImplementationDisclosure, evidence);
            break; // one finding per response is enough
        }
    }

    if (result.scheme == UrlScheme::Http || result.scheme == UrlScheme::Ws) {
        bool redirected = false;
        for (const auto& hop : result.redirectChain) {
            if (hop.location.rfind("https://", 0) == 0 && same_host(hop.location, result.host))
                redirected = true;
        }
        if (!redirected) {
            std::string evidence = "no https redirect observed";
            if (pairedHttpsResult && !pairedHttpsResult->error)
                evidence += " although the https variant answers";
            add(ServerSmell::MissingHttpsRedirect, std::move(evidence));
        }
    }

    if (result.scheme == UrlScheme::Https || result.scheme == UrlScheme::Wss) {
        bool hstsOk = false;
        for (const auto& [name, value] : result.headers) {
            if (lower_copy(name) == "strict-transport-security") {
                auto age = hsts_max_age(value);
                if (age && *age >= 1) hstsOk = true;
            }
        }
        if (!hstsOk)
            add(ServerSmell::MissingHsts, "no Strict-Transport-Security with max-age >= 1");
    }

    if (result.status == 200) {
        bool challenged = false;
        for (const auto& [name, value] : result.headers)
            if (lower_copy(name) == "www-authenticate") challenged = true;
        bool authQuery = false;
        static const std::vector<std::string> kAuthKeys = {
            "key", "token", "user", "username", "password", "pw",
            "apikey", "api_key", "secret",
        };
        for (const auto& key : result.requestQueryKeys) {
            std::string lower = lower_copy(key);
            for (const auto& k : kAuthKeys)
                if (lower == k) authQuery = true;
        }
        if (!challenged && !authQuery) {
            std::string pathLower = lower_copy(result.path);
            for (const auto& token : cfg.sensitivePathTokens) {
                if (pathLower.find(token) != std::string::npos) {
                    add(ServerSmell::LackOfAccessControlCandidate,
                        "path contains '" + token + "', 200 without authentication challenge"
                        "; requires manual review");
                    break;
                }
            }
        }
    }

    return findings;
}

} // namespace apimine
