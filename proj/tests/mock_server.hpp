#pragma once

// Loopback mock harness: serves scripted (status, headers, body) triples
// from a declarative fixture file. Plain HTTP is the primary listener; an
// optional TLS listener (self-signed fixture certificate) serves entries
// whose path carries the "@tls" suffix, falling back to the plain entry.
//
// Body/header templates: {HTTPS_BASE} expands to the TLS listener base URL,
// {HTTP_BASE} to the plain one, {QUERY} to the raw query string received.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

namespace mock {

struct Scripted {
    int status = 200;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
};

class MockServer {
public:
    explicit MockServer(const std::string& fixtureFile, const std::string& certFile = {},
                        const std::string& keyFile = {}) {
        load(fixtureFile);
        http_ = std::make_unique<httplib::Server>();
        httpPort_ = http_->bind_to_any_port("127.0.0.1");
        if (httpPort_ <= 0) throw std::runtime_error("mock: cannot bind http port");
        if (!certFile.empty()) {
            https_ = std::make_unique<httplib::SSLServer>(certFile.c_str(), keyFile.c_str());
            if (!https_->is_valid()) throw std::runtime_error("mock: bad certificate");
            httpsPort_ = https_->bind_to_any_port("127.0.0.1");
            if (httpsPort_ <= 0) throw std::runtime_error("mock: cannot bind https port");
        }
        install(*http_, /*tls=*/false);
        httpThread_ = std::thread([this] { http_->listen_after_bind(); });
        if (https_) {
            install(*https_, /*tls=*/true);
            httpsThread_ = std::thread([this] { https_->listen_after_bind(); });
        }
        http_->wait_until_ready();
        if (https_) https_->wait_until_ready();
    }

    ~MockServer() {
        if (http_) http_->stop();
        if (https_) https_->stop();
        if (httpThread_.joinable()) httpThread_.join();
        if (httpsThread_.joinable()) httpsThread_.join();
    }

    int http_port() const { return httpPort_; }
    int https_port() const { return httpsPort_; }
    std::string http_base() const {
        return "http://127.0.0.1:" + std::to_string(httpPort_);
    }
    std::string https_base() const {
        return "https://127.0.0.1:" + std::to_string(httpsPort_);
    }
    int requests_served() const { return served_.load(); }

private:
    void load(const std::string& fixtureFile) {
        std::ifstream in(fixtureFile);
        if (!in) throw std::runtime_error("mock: cannot open fixture " + fixtureFile);
        nlohmann::json doc = nlohmann::json::parse(in);
        for (const auto& e : doc.at("endpoints")) {
            Scripted s;
            s.status = e.at("status").get<int>();
            if (e.contains("headers"))
                for (const auto& [k, v] : e.at("headers").items())
                    s.headers.emplace_back(k, v.get<std::string>());
            s.body = e.value("body", "");
            scripted_[e.at("path").get<std::string>()] = std::move(s);
        }
    }

    std::string expand(std::string text, const httplib::Request& req) const {
        auto replace_all = [&text](const std::string& from, const std::string& to) {
            for (std::size_t pos = text.find(from); pos != std::string::npos;
                 pos = text.find(from, pos + to.size()))
                text.replace(pos, from.size(), to);
        };
        replace_all("{HTTPS_BASE}", https_base());
        replace_all("{HTTP_BASE}", http_base());
        std::string rawQuery;
        if (!req.params.empty()) {
            for (const auto& [k, v] : req.params) {
                if (!rawQuery.empty()) rawQuery += '&';
                rawQuery += k;
                if (!v.empty()) rawQuery += "=" + v;
            }
        }
        replace_all("{QUERY}", rawQuery);
        return text;
    }

    void install(httplib::Server& server, bool tls) {
        server.Get(".*", [this, tls](const httplib::Request& req, httplib::Response& res) {
            ++served_;
            const Scripted* entry = nullptr;
            if (tls) {
                auto it = scripted_.find(req.path + "@tls");
                if (it != scripted_.end()) entry = &it->second;
            }
            if (!entry) {
                auto it = scripted_.find(req.path);
                if (it != scripted_.end()) entry = &it->second;
            }
            if (!entry) {
                res.status = 404;
                res.set_content("unscripted path", "text/plain");
                return;
            }
            res.status = entry->status;
            for (const auto& [k, v] : entry->headers) res.set_header(k, expand(v, req));
            res.set_content(expand(entry->body, req), "text/plain");
        });
    }

    std::map<std::string, Scripted> scripted_;
    std::unique_ptr<httplib::Server> http_;
    std::unique_ptr<httplib::SSLServer> https_;
    std::thread httpThread_;
    std::thread httpsThread_;
    int httpPort_ = 0;
    int httpsPort_ = 0;
    std::atomic<int> served_{0};
};

} // namespace mock
