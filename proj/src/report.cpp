#include "apimine/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>

namespace apimine {

std::string format_mean(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// --- text format ---------------------------------------------------------------

namespace {

struct UrlGroup {
    std::string unitPath;
    std::string library;
    std::string baseUrl;
    const WebApiUrl* first = nullptr;
    std::vector<const Endpoint*> endpoints;
};

void render_endpoint(std::string& out, const Endpoint& ep) {
    out += "    Path: " + ep.render_path() + "\n";
    out += "    Queries: \n";
    for (const auto& [key, value] : ep.queries) {
        out += "        Query key: " + key.render_url() +
               ", query value: " + value.render_url() + "\n";
    }
    out += "    Fragments: \n";
    for (const auto& frag : ep.fragments) {
        out += "        Fragment: " + frag.render_url() + "\n";
    }
    out += "    HTTP Methods: \n";
    for (HttpMethod m : ep.httpMethods) {
        out += "        HTTP Method: ";
        out += http_method_name(m);
        out += "\n";
    }
}

std::string render_url_group(const UrlGroup& g) {
    std::string out;
    out += "Path: \n" + g.unitPath + "\n";
    out += "Library: \n" + g.library + "\n";
    out += "Scheme: \n";
    out += scheme_name(g.first->scheme);
    out += "://\n";
    out += "Authority: \n" + g.first->authority.render_url() + "\n";
    out += "Base URL: \n" + g.baseUrl + "\n";
    out += "Endpoints: \n";
    for (const Endpoint* ep : g.endpoints) render_endpoint(out, *ep);
    return out;
}

std::string render_schema_record(const JsonSchema& s) {
    std::string out;
    out += "Path: \n" + s.provenance.unitPath + "\n";
    out += "Library: \n" + s.provenance.library + "\n";
    out += "JSON Object: \n" + s.render() + "\n";
    return out;
}

} // namespace

std::string render_text(const AppReport& report) {
    // Group records per (file, library, base URL), in first-seen order; the
    // inputs are already sorted by (unitPath, position).
    std::vector<UrlGroup> groups;
    std::map<std::string, std::size_t> groupIndex;
    for (const WebApiUrl& u : report.urls) {
        const Provenance& prov = u.provenances.front();
        std::string key = prov.unitPath + "\x01" + prov.library + "\x01" + u.base_url();
        auto [it, inserted] = groupIndex.emplace(std::move(key), groups.size());
        if (inserted) {
            UrlGroup g;
            g.unitPath = prov.unitPath;
            g.library = prov.library;
            g.baseUrl = u.base_url();
            g.first = &u;
            groups.push_back(std::move(g));
        }
        UrlGroup& g = groups[it->second];
        for (const Endpoint& ep : u.endpoints) g.endpoints.push_back(&ep);
    }

    std::vector<std::string> records;
    records.reserve(groups.size() + report.schemas.size());
    for (const UrlGroup& g : groups) records.push_back(render_url_group(g));
    for (const JsonSchema& s : report.schemas) records.push_back(render_schema_record(s));

    std::string out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i) out += "\n";
        out += records[i];
    }
    return out;
}

// --- structured format -----------------------------------------------------------

namespace {

using nlohmann::json;

json sv_json(const StringValue& v) { return v.render_url(); }

json endpoint_json(const Endpoint& ep) {
    json j;
    j["path"] = ep.render_path();
    json segments = json::array();
    for (const auto& s : ep.pathSegments) segments.push_back(sv_json(s));
    j["pathSegments"] = std::move(segments);
    json queries = json::array();
    for (const auto& [k, v] : ep.queries)
        queries.push_back(json{{"key", sv_json(k)}, {"value", sv_json(v)}});
    j["queries"] = std::move(queries);
    json fragments = json::array();
    for (const auto& f : ep.fragments) fragments.push_back(sv_json(f));
    j["fragments"] = std::move(fragments);
    json methods = json::array();
    for (HttpMethod m : ep.httpMethods) methods.push_back(std::string(http_method_name(m)));
    j["httpMethods"] = std::move(methods);
    j["parameterized"] = ep.parameterized;
    j["likelyStatic"] = ep.likelyStatic;
    return j;
}

json url_json(const WebApiUrl& u) {
    json j;
    j["scheme"] = std::string(scheme_name(u.scheme));
    j["authority"] = sv_json(u.authority);
    j["baseUrl"] = u.base_url();
    j["incomplete"] = u.incomplete;
    j["schemeAssumed"] = u.schemeAssumed;
    json endpoints = json::array();
    for (const auto& ep : u.endpoints) endpoints.push_back(endpoint_json(ep));
    j["endpoints"] = std::move(endpoints);
    json headers = json::array();
    for (const auto& [k, v] : u.headers)
        headers.push_back(json{{"key", sv_json(k)}, {"value", sv_json(v)}});
    j["headers"] = std::move(headers);
    json provenances = json::array();
    for (const auto& p : u.provenances) {
        provenances.push_back(json{{"unit", p.unitPath},
                                   {"library", p.library},
                                   {"type", p.enclosingType},
                                   {"method", p.enclosingMethod},
                                   {"position", p.position}});
    }
    j["provenances"] = std::move(provenances);
    return j;
}

json stats_json(const AggregateStats& s) {
    json j;
    j["totalUrls"] = s.totalUrls;
    j["distinctUrls"] = s.distinctUrls;
    json schemes;
    for (const auto& [scheme, count] : s.schemeCounts)
        schemes[std::string(scheme_name(scheme))] = count;
    j["schemeCounts"] = std::move(schemes);
    auto histogram = [](const std::map<std::size_t, std::size_t>& h) {
        json out;
        for (const auto& [k, v] : h) out[std::to_string(k)] = v;
        return out;
    };
    j["segmentHistogram"] = histogram(s.segmentHistogram);
    j["queryHistogram"] = histogram(s.queryHistogram);
    j["fragmentHistogram"] = histogram(s.fragmentHistogram);
    j["meanSegments"] = format_mean(s.meanSegments);
    j["meanQueryPairs"] = format_mean(s.meanQueryPairs);
    return j;
}

} // namespace

std::string render_structured(const AppReport& report) {
    json j;
    j["reportVersion"] = 1;
    j["appId"] = report.appId;
    j["partial"] = report.partial;
    j["libraries"] = report.libraries;
    j["declaredDependencies"] = report.declaredDependencies;

    json urls = json::array();
    for (const auto& u : report.urls) urls.push_back(url_json(u));
    j["urls"] = std::move(urls);

    json schemas = json::array();
    for (const auto& s : report.schemas) {
        schemas.push_back(json{{"unit", s.provenance.unitPath},
                               {"library", s.provenance.library},
                               {"json", s.render()}});
    }
    j["schemas"] = std::move(schemas);

    json client = json::array();
    for (const auto& f : report.clientFindings) {
        json e;
        e["kind"] = std::string(smell_kind_name(f.kind));
        if (f.kind == SmellKind::EmbeddedLanguage)
            e["language"] = std::string(embedded_language_name(f.language));
        e["evidence"] = f.evidence;
        e["location"] = f.location;
        e["note"] = f.note;
        client.push_back(std::move(e));
    }
    j["clientFindings"] = std::move(client);

    json server = json::array();
    for (const auto& f : report.probeFindings) {
        server.push_back(json{{"smell", std::string(server_smell_name(f.smell))},
                              {"url", f.url},
                              {"evidence", f.evidence}});
    }
    j["serverFindings"] = std::move(server);

    json probes = json::array();
    for (const auto& r : report.probeResults) {
        json e;
        e["url"] = r.url;
        e["status"] = r.status;
        e["transport"] = r.transport;
        if (r.error) e["error"] = std::string(probe_error_name(*r.error));
        json chain = json::array();
        for (const auto& hop : r.redirectChain)
            chain.push_back(json{{"status", hop.status}, {"location", hop.location}});
        e["redirectChain"] = std::move(chain);
        probes.push_back(std::move(e));
    }
    j["probeResults"] = std::move(probes);

    json skipped = json::array();
    for (const auto& s : report.skipped) {
        skipped.push_back(json{{"unit", s.unitPath},
                               {"reason", s.reason},
                               {"detail", s.detail},
                               {"position", s.position}});
    }
    j["skippedSites"] = std::move(skipped);

    j["parseErrors"] = report.parseErrorCount;
    j["filesAnalyzed"] = report.filesAnalyzed;
    j["filesTotal"] = report.filesTotal;
    j["stats"] = stats_json(report.urlStats);
    return j.dump(2) + "\n";
}

// --- CSV -------------------------------------------------------------------------

std::string stats_csv_header() {
    return "appId,totalUrls,distinctUrls,http,https,ws,wss,meanSegments,meanQueryPairs,"
           "fragmentsUsed,sqlHits,jsHits,htmlHits,bashHits,phpHits,pythonHits,rubyHits,"
           "credentialLeaks,partial";
}

std::string stats_csv_row(const AppReport& report) {
    const AggregateStats& s = report.urlStats;
    auto schemeCount = [&](UrlScheme scheme) -> std::size_t {
        auto it = s.schemeCounts.find(scheme);
        return it == s.schemeCounts.end() ? 0 : it->second;
    };
    std::size_t fragmentsUsed = 0;
    for (const auto& u : report.urls)
        for (const auto& ep : u.endpoints)
            if (!ep.fragments.empty()) ++fragmentsUsed;

    std::map<EmbeddedLanguage, std::size_t> langHits;
    std::size_t credentialLeaks = 0;
    for (const auto& f : report.clientFindings) {
        if (f.kind == SmellKind::EmbeddedLanguage) ++langHits[f.language];
        if (f.kind == SmellKind::CredentialLeak) ++credentialLeaks;
    }
    auto lang = [&](EmbeddedLanguage l) -> std::size_t {
        auto it = langHits.find(l);
        return it == langHits.end() ? 0 : it->second;
    };

    std::string row = report.appId;
    auto add = [&row](const std::string& cell) { row += "," + cell; };
    add(std::to_string(s.totalUrls));
    add(std::to_string(s.distinctUrls));
    add(std::to_string(schemeCount(UrlScheme::Http)));
    add(std::to_string(schemeCount(UrlScheme::Https)));
    add(std::to_string(schemeCount(UrlScheme::Ws)));
    add(std::to_string(schemeCount(UrlScheme::Wss)));
    add(format_mean(s.meanSegments));
    add(format_mean(s.meanQueryPairs));
    add(std::to_string(fragmentsUsed));
    add(std::to_string(lang(EmbeddedLanguage::Sql)));
    add(std::to_string(lang(EmbeddedLanguage::Javascript)));
    add(std::to_string(lang(EmbeddedLanguage::Html)));
    add(std::to_string(lang(EmbeddedLanguage::Bash)));
    add(std::to_string(lang(EmbeddedLanguage::Php)));
    add(std::to_string(lang(EmbeddedLanguage::Python)));
    add(std::to_string(lang(EmbeddedLanguage::Ruby)));
    add(std::to_string(credentialLeaks));
    add(report.partial ? "1" : "0");
    return row;
}

} // namespace apimine
