#include "apimine/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace apimine {

std::string_view library_report_name(LibraryId id) {
    switch (id) {
    case LibraryId::JavaNetUrlConnection: return "java.net.URLConnection";
    case LibraryId::JavaNetHttpUrlConnection: return "java.net.HttpURLConnection";
    case LibraryId::JavaNetHttpsUrlConnection: return "javax.net.ssl.HttpsURLConnection";
    case LibraryId::JavaNetSocket: return "java.net.Socket";
    case LibraryId::OkHttp: return "com.squareup.okhttp3";
    case LibraryId::Retrofit: return "com.squareup.retrofit";
    case LibraryId::Volley: return "com.android.volley";
    case LibraryId::Glide: return "com.bumptech.glide";
    case LibraryId::Ion: return "com.koushikdutta.ion";
    case LibraryId::ApacheHttpClient: return "org.apache.httpcomponents";
    case LibraryId::Loopj: return "com.loopj.android";
    case LibraryId::OrgJson: return "org.json";
    case LibraryId::Gson: return "com.google.gson";
    case LibraryId::Moshi: return "com.squareup.moshi";
    }
    return "unknown";
}

bool is_json_library(LibraryId id) {
    return id == LibraryId::OrgJson || id == LibraryId::Gson || id == LibraryId::Moshi;
}

// --- library detection -------------------------------------------------------

namespace {

struct LibraryPrefix {
    LibraryId id;
    std::string_view prefix;
};

// Import prefixes / fully qualified receiver prefixes per library.
constexpr LibraryPrefix kLibraryPrefixes[] = {
    {LibraryId::JavaNetUrlConnection, "java.net.URLConnection"},
    {LibraryId::JavaNetHttpUrlConnection, "java.net.HttpURLConnection"},
    {LibraryId::JavaNetHttpsUrlConnection, "javax.net.ssl.HttpsURLConnection"},
    {LibraryId::JavaNetHttpsUrlConnection, "java.net.HttpsURLConnection"},
    {LibraryId::JavaNetSocket, "java.net.Socket"},
    {LibraryId::OkHttp, "okhttp3."},
    {LibraryId::OkHttp, "com.squareup.okhttp"},
    {LibraryId::Retrofit, "retrofit2."},
    {LibraryId::Retrofit, "retrofit."},
    {LibraryId::Volley, "com.android.volley."},
    {LibraryId::Glide, "com.bumptech.glide."},
    {LibraryId::Ion, "com.koushikdutta.ion."},
    {LibraryId::ApacheHttpClient, "org.apache.http."},
    {LibraryId::Loopj, "com.loopj.android."},
    {LibraryId::OrgJson, "org.json."},
    {LibraryId::Gson, "com.google.gson."},
    {LibraryId::Moshi, "com.squareup.moshi."},
};

bool name_matches(std::string_view name, std::string_view prefix) {
    if (name.size() < prefix.size()) {
        // An import of a package prefix ("okhttp3.*") still counts.
        return prefix.size() == name.size() + 1 && prefix.back() == '.' &&
               prefix.substr(0, name.size()) == name;
    }
    return name.substr(0, prefix.size()) == prefix;
}

// Bare class names that imply a java.net library when the import was a
// wildcard; resolved against New/declared type usages.
LibraryId java_net_class(std::string_view simpleName, bool* found) {
    *found = true;
    if (simpleName == "URLConnection" || simpleName == "URL") return LibraryId::JavaNetUrlConnection;
    if (simpleName == "HttpURLConnection") return LibraryId::JavaNetHttpUrlConnection;
    if (simpleName == "HttpsURLConnection") return LibraryId::JavaNetHttpsUrlConnection;
    if (simpleName == "Socket") return LibraryId::JavaNetSocket;
    *found = false;
    return LibraryId::JavaNetSocket;
}

void walk_expr(const ExprPtr& e, const std::function<void(const Expr&)>& fn) {
    if (!e) return;
    fn(*e);
    walk_expr(e->lhs, fn);
    walk_expr(e->rhs, fn);
    walk_expr(e->receiver, fn);
    for (const auto& a : e->args) walk_expr(a, fn);
}

void walk_type_exprs(const TypeDecl& t, const std::function<void(const Expr&)>& fn) {
    for (const auto& f : t.fields)
        if (f.initializer) walk_expr(f.initializer, fn);
    for (const auto& m : t.methods)
        for (const auto& s : m.body)
            if (s.value) walk_expr(s.value, fn);
    for (const auto& n : t.nested) walk_type_exprs(n, fn);
}

void collect_used_type_names(const TypeDecl& t, std::set<std::string>& out) {
    for (const auto& f : t.fields)
        if (f.declaredType.kind == DeclaredType::Object) out.insert(f.declaredType.objectName);
    for (const auto& m : t.methods) {
        for (const auto& p : m.params)
            if (p.type.kind == DeclaredType::Object) out.insert(p.type.objectName);
        for (const auto& s : m.body)
            if (s.kind == Stmt::Kind::LocalDecl && s.declType.kind == DeclaredType::Object)
                out.insert(s.declType.objectName);
    }
    for (const auto& n : t.nested) collect_used_type_names(n, out);
}

} // namespace

std::set<LibraryId> detect_libraries(const SourceUnit& unit) {
    std::set<LibraryId> found;
    auto check = [&](std::string_view name) {
        for (const auto& lp : kLibraryPrefixes)
            if (name_matches(name, lp.prefix)) found.insert(lp.id);
    };
    for (const auto& imp : unit.imports) {
        std::string_view name = imp;
        if (name.size() > 2 && name.substr(name.size() - 2) == ".*")
            name = name.substr(0, name.size() - 1); // keep the trailing dot
        check(name);
    }
    for (const auto& q : unit.qualifiedRefs) check(q);

    // Wildcard java.net import: resolve through used class names.
    bool javaNetWildcard = false;
    for (const auto& imp : unit.imports)
        if (imp == "java.net.*" || imp == "javax.net.ssl.*") javaNetWildcard = true;
    if (javaNetWildcard) {
        std::set<std::string> used;
        for (const auto& t : unit.types) {
            collect_used_type_names(t, used);
            walk_type_exprs(t, [&](const Expr& e) {
                if (e.kind == Expr::Kind::New) used.insert(e.text);
            });
        }
        for (const auto& name : used) {
            bool ok = false;
            LibraryId id = java_net_class(name, &ok);
            if (ok) found.insert(id);
        }
    }
    return found;
}

// --- corpus scope ------------------------------------------------------------

namespace {

void register_classes(const TypeDecl& t, CorpusScope& scope) {
    if (!t.name.empty() && t.name[0] != '<')
        scope.classesByName.emplace(t.name, &t); // first declaration wins
    for (const auto& n : t.nested) register_classes(n, scope);
}

// True when `expr` is `X.class`; extracts X.
bool class_literal(const Expr& e, std::string* name) {
    if (e.kind == Expr::Kind::FieldAccess && e.text == "class" && e.receiver &&
        e.receiver->kind == Expr::Kind::NameRef) {
        *name = e.receiver->text;
        return true;
    }
    return false;
}

std::string declared_object_type(const Scope& scope, const Expr& e) {
    if (e.kind != Expr::Kind::NameRef) return {};
    const Declaration* d = scope.lookup(e.text);
    if (d && d->declaredType.kind == DeclaredType::Object) return d->declaredType.objectName;
    return {};
}

struct MethodContext {
    const SourceUnit& unit;
    const TypeDecl& type;
    const MethodDecl& method;
    Scope scope;
    const CorpusScope& corpus;
    const std::map<std::string, StringValue>& guessPool;

    StringValue reconstruct_expr(const ExprPtr& e) const {
        ResolutionBudget budget{corpus.resolutionLimit, 0};
        ReconstructionContext ctx;
        ctx.guessCandidates = &guessPool;
        return reconstruct(e, scope, budget, ctx);
    }
};

void for_each_method(const SourceUnit& unit, const CorpusScope& corpus,
                     const std::map<std::string, StringValue>& pool,
                     const std::function<void(MethodContext&)>& fn) {
    struct Rec {
        const SourceUnit& unit;
        const CorpusScope& corpus;
        const std::map<std::string, StringValue>& pool;
        const std::function<void(MethodContext&)>& fn;
        void walk(const TypeDecl& t) {
            for (const auto& m : t.methods) {
                MethodContext ctx{unit, t, m, build_scope(m, t), corpus, pool};
                fn(ctx);
            }
            for (const auto& n : t.nested) walk(n);
        }
    } rec{unit, corpus, pool, fn};
    for (const auto& t : unit.types) rec.walk(t);
}

} // namespace

void scan_into_corpus_scope(const SourceUnit& unit, CorpusScope& scope) {
    for (const auto& t : unit.types) register_classes(t, scope);

    auto pool = collect_guess_candidates(unit);
    for (const auto& [name, value] : pool)
        scope.corpusGuessCandidates.emplace(name, value); // existing keys win

    std::set<std::string> seenBases;
    for (const auto& existing : scope.retrofitBaseUrls)
        seenBases.insert(existing.render_url());

    for_each_method(unit, scope, pool, [&](MethodContext& ctx) {
        for (const auto& stmt : ctx.method.body) {
            if (!stmt.value) continue;
            walk_expr(stmt.value, [&](const Expr& e) {
                if (e.kind != Expr::Kind::MethodCall) return;
                if (e.text == "baseUrl" && e.args.size() == 1) {
                    StringValue v = ctx.reconstruct_expr(e.args[0]);
                    if (!v.parts.empty() && seenBases.insert(v.render_url()).second)
                        scope.retrofitBaseUrls.push_back(std::move(v));
                    return;
                }
                std::string cls;
                if (e.text == "adapter" && e.args.size() == 1 &&
                    class_literal(*e.args[0], &cls)) {
                    scope.serializedTypes.emplace(cls, LibraryId::Moshi);
                    return;
                }
                if (e.text == "fromJson" && e.args.size() == 2 &&
                    class_literal(*e.args[1], &cls)) {
                    scope.serializedTypes.emplace(cls, LibraryId::Gson);
                    return;
                }
                if (e.text == "toJson" && e.args.size() >= 1) {
                    std::string obj = declared_object_type(ctx.scope, *e.args[0]);
                    if (!obj.empty()) scope.serializedTypes.emplace(obj, LibraryId::Gson);
                }
            });
        }
    });

    // Classes whose fields carry Gson/Moshi field annotations are models too.
    struct AnnoScan {
        CorpusScope& scope;
        void walk(const TypeDecl& t) {
            for (const auto& f : t.fields) {
                for (const auto& a : f.annotations) {
                    if (a.name == "SerializedName")
                        scope.serializedTypes.emplace(t.name, LibraryId::Gson);
                    if (a.name == "Json")
                        scope.serializedTypes.emplace(t.name, LibraryId::Moshi);
                }
            }
            for (const auto& n : t.nested) walk(n);
        }
    } annoScan{scope};
    for (const auto& t : unit.types) annoScan.walk(t);
}

// --- endpoint extraction -------------------------------------------------------

namespace {

struct Extractor {
    const SourceUnit& unit;
    const CorpusScope& corpus;
    std::set<LibraryId> libraries{};
    std::map<std::string, StringValue> unitPool{};
    EndpointExtraction out{};

    const std::map<std::string, StringValue>& pool() const {
        return corpus.corpusWideGuessing ? corpus.corpusGuessCandidates : unitPool;
    }

    // One URL record (or a skip note) from a reconstructed value.
    void emit(const StringValue& value, LibraryId library, const MethodContext& ctx,
              std::size_t position, std::optional<HttpMethod> method,
              std::vector<std::pair<StringValue, StringValue>> headers = {}) {
        Provenance prov;
        prov.unitPath = unit.path;
        prov.library = std::string(library_report_name(library));
        prov.enclosingType = ctx.type.name;
        prov.enclosingMethod = ctx.method.name;
        prov.position = position;

        UrlParseResult parsed = parse_url(value);
        if (!parsed.url) {
            if (parsed.error == UrlError::Empty) {
                // Unresolvable site: keep it, flagged incomplete, with the
                // placeholder (or its absence) as authority.
                WebApiUrl url;
                url.scheme = UrlScheme::Http;
                url.schemeAssumed = true;
                url.incomplete = true;
                url.authority = value.parts.empty()
                                    ? StringValue::placeholder(PlaceholderKind::String)
                                    : value;
                Endpoint ep;
                if (method) ep.httpMethods.insert(*method);
                url.endpoints.push_back(std::move(ep));
                url.headers = std::move(headers);
                url.provenances.push_back(std::move(prov));
                out.urls.push_back(std::move(url));
            } else {
                out.skipped.push_back({unit.path,
                                       "scheme " + parsed.rejectedScheme +
                                           " outside the web set",
                                       value.render_url(), position});
            }
            return;
        }
        WebApiUrl url = std::move(*parsed.url);
        if (method)
            for (auto& ep : url.endpoints) ep.httpMethods.insert(*method);
        url.headers = std::move(headers);
        url.provenances.push_back(std::move(prov));
        out.urls.push_back(std::move(url));
    }

    // --- strategies ---

    bool has(LibraryId id) const { return libraries.count(id) > 0; }

    LibraryId java_net_attribution() const {
        if (has(LibraryId::JavaNetHttpsUrlConnection)) return LibraryId::JavaNetHttpsUrlConnection;
        if (has(LibraryId::JavaNetHttpUrlConnection)) return LibraryId::JavaNetHttpUrlConnection;
        return LibraryId::JavaNetUrlConnection;
    }

    bool any_java_net() const {
        return has(LibraryId::JavaNetUrlConnection) || has(LibraryId::JavaNetHttpUrlConnection) ||
               has(LibraryId::JavaNetHttpsUrlConnection);
    }

    // Per-method state for java.net: setRequestMethod/setRequestProperty
    // attach when the method contains exactly one URL construction.
    struct JavaNetSites {
        std::vector<std::pair<const Expr*, StringValue>> urls;
        std::optional<HttpMethod> requestMethod;
        std::vector<std::pair<StringValue, StringValue>> headers;
    };

    void handle_method(MethodContext& ctx) {
        JavaNetSites javaNet;

        for (const auto& stmt : ctx.method.body) {
            if (!stmt.value) continue;
            process_tree(stmt.value, ctx, javaNet);
        }

        const bool single = javaNet.urls.size() == 1;
        for (auto& [site, value] : javaNet.urls) {
            emit(value, java_net_attribution(), ctx, site->span.begin,
                 single ? javaNet.requestMethod : std::nullopt,
                 single ? javaNet.headers : std::vector<std::pair<StringValue, StringValue>>{});
        }
    }

    void process_tree(const ExprPtr& e, MethodContext& ctx, JavaNetSites& javaNet) {
        if (!e) return;
        if (e->kind == Expr::Kind::MethodCall) {
            // Flatten the receiver chain, innermost first.
            std::vector<const Expr*> chain;
            const Expr* cur = e.get();
            while (cur && cur->kind == Expr::Kind::MethodCall) {
                chain.push_back(cur);
                cur = cur->receiver.get();
            }
            std::reverse(chain.begin(), chain.end());
            handle_chain(chain, cur, ctx, javaNet);
            if (cur) {
                ExprPtr root = chain.front()->receiver;
                process_tree(root, ctx, javaNet);
            }
            for (const Expr* call : chain)
                for (const auto& a : call->args) process_tree(a, ctx, javaNet);
            return;
        }
        if (e->kind == Expr::Kind::New) {
            handle_new(*e, ctx, javaNet);
            for (const auto& a : e->args) process_tree(a, ctx, javaNet);
            return;
        }
        process_tree(e->lhs, ctx, javaNet);
        process_tree(e->rhs, ctx, javaNet);
        process_tree(e->receiver, ctx, javaNet);
        for (const auto& a : e->args) process_tree(a, ctx, javaNet);
    }

    static std::optional<HttpMethod> method_from_chain_name(const std::string& name) {
        if (name == "get") return HttpMethod::Get;
        if (name == "post") return HttpMethod::Post;
        if (name == "put") return HttpMethod::Put;
        if (name == "delete") return HttpMethod::Delete;
        if (name == "patch") return HttpMethod::Patch;
        if (name == "head") return HttpMethod::Head;
        return std::nullopt;
    }

    void handle_chain(const std::vector<const Expr*>& chain, const Expr* root,
                      MethodContext& ctx, JavaNetSites& javaNet) {
        // OkHttp builder: .url(x) with optional .addHeader/.header and verbs.
        if (has(LibraryId::OkHttp)) {
            const Expr* urlCall = nullptr;
            std::optional<HttpMethod> verb;
            std::vector<std::pair<StringValue, StringValue>> headers;
            for (const Expr* call : chain) {
                if (call->text == "url" && call->args.size() == 1) urlCall = call;
                if ((call->text == "addHeader" || call->text == "header") &&
                    call->args.size() == 2)
                    headers.emplace_back(ctx.reconstruct_expr(call->args[0]),
                                         ctx.reconstruct_expr(call->args[1]));
                if (auto m = method_from_chain_name(call->text)) verb = m;
            }
            if (urlCall) {
                emit(ctx.reconstruct_expr(urlCall->args[0]), LibraryId::OkHttp, ctx,
                     urlCall->span.begin, verb, std::move(headers));
                return;
            }
        }
        // Glide / Ion image loads: .load(x), Ion also .load(verb, x).
        if (has(LibraryId::Glide) || has(LibraryId::Ion)) {
            for (const Expr* call : chain) {
                if (call->text != "load" || call->args.empty()) continue;
                LibraryId lib = chain_library(chain, root);
                std::optional<HttpMethod> verb;
                const ExprPtr* urlArg = &call->args[0];
                if (call->args.size() == 2 && lib == LibraryId::Ion) {
                    StringValue v = ctx.reconstruct_expr(call->args[0]);
                    if (auto m = http_method_from(v.render_url())) {
                        verb = m;
                        urlArg = &call->args[1];
                    }
                }
                StringValue value = ctx.reconstruct_expr(*urlArg);
                // Loads of resources/files are not web URLs; only emit when
                // something web-like or unresolved came back.
                std::string rendered = value.render_url();
                if (rendered.find("://") != std::string::npos || !value.resolved())
                    emit(value, lib, ctx, call->span.begin, verb);
                return;
            }
        }
        // LoopJ async client (and Apache fluent use): client.get(url, ...).
        if (has(LibraryId::Loopj) || has(LibraryId::ApacheHttpClient)) {
            for (const Expr* call : chain) {
                auto verb = method_from_chain_name(call->text);
                if (!verb || call->args.empty()) continue;
                StringValue value = ctx.reconstruct_expr(call->args[0]);
                if (value.render_url().find("://") == std::string::npos) continue;
                LibraryId lib =
                    has(LibraryId::Loopj) ? LibraryId::Loopj : LibraryId::ApacheHttpClient;
                emit(value, lib, ctx, call->span.begin, verb);
                return;
            }
        }
        // java.net: connection configuration calls.
        if (any_java_net()) {
            for (const Expr* call : chain) {
                if (call->text == "setRequestMethod" && call->args.size() == 1) {
                    StringValue v = ctx.reconstruct_expr(call->args[0]);
                    if (auto m = http_method_from(v.render_url()))
                        javaNet.requestMethod = m;
                }
                if (call->text == "setRequestProperty" && call->args.size() == 2) {
                    javaNet.headers.emplace_back(ctx.reconstruct_expr(call->args[0]),
                                                 ctx.reconstruct_expr(call->args[1]));
                }
            }
        }
    }

    LibraryId chain_library(const std::vector<const Expr*>& chain, const Expr* root) const {
        for (const Expr* call : chain) {
            if (call->receiverName == "Glide") return LibraryId::Glide;
            if (call->receiverName == "Ion") return LibraryId::Ion;
        }
        if (root && root->kind == Expr::Kind::NameRef) {
            if (root->text == "Glide") return LibraryId::Glide;
            if (root->text == "Ion") return LibraryId::Ion;
        }
        if (has(LibraryId::Glide)) return LibraryId::Glide;
        return LibraryId::Ion;
    }

    void handle_new(const Expr& e, MethodContext& ctx, JavaNetSites& javaNet) {
        const std::string& type = e.text;
        // java.net: new URL(expr) / openConnection() chains start here.
        if (type == "URL" || type == "java.net.URL") {
            if (!e.args.empty() && any_java_net())
                javaNet.urls.emplace_back(&e, ctx.reconstruct_expr(e.args[0]));
            return;
        }
        // Volley request constructors: optional method constant, then URL.
        if (has(LibraryId::Volley) &&
            (type == "StringRequest" || type == "JsonObjectRequest" ||
             type == "JsonArrayRequest" || type == "ImageRequest")) {
            if (e.args.empty()) return;
            std::size_t urlIndex = 0;
            std::optional<HttpMethod> verb;
            if (auto m = volley_method(*e.args[0]); m && e.args.size() > 1) {
                verb = m;
                urlIndex = 1;
            }
            emit(ctx.reconstruct_expr(e.args[urlIndex]), LibraryId::Volley, ctx,
                 e.span.begin, verb);
            return;
        }
        // Apache request objects: new HttpGet(url) etc.
        if (has(LibraryId::ApacheHttpClient)) {
            static const std::map<std::string, HttpMethod> kApacheCtors = {
                {"HttpGet", HttpMethod::Get},       {"HttpPost", HttpMethod::Post},
                {"HttpPut", HttpMethod::Put},       {"HttpDelete", HttpMethod::Delete},
                {"HttpPatch", HttpMethod::Patch},   {"HttpHead", HttpMethod::Head},
            };
            auto it = kApacheCtors.find(type);
            if (it != kApacheCtors.end() && !e.args.empty()) {
                emit(ctx.reconstruct_expr(e.args[0]), LibraryId::ApacheHttpClient, ctx,
                     e.span.begin, it->second);
                return;
            }
        }
    }

    static std::optional<HttpMethod> volley_method(const Expr& e) {
        // Request.Method.GET style constant.
        if (e.kind == Expr::Kind::FieldAccess || e.kind == Expr::Kind::NameRef) {
            if (auto m = http_method_from(e.text)) return m;
        }
        // Decompiled integer constants.
        if (e.kind == Expr::Kind::NumberLit && e.numIsInt) {
            static const std::map<std::string, HttpMethod> kCodes = {
                {"0", HttpMethod::Get},  {"1", HttpMethod::Post},  {"2", HttpMethod::Put},
                {"3", HttpMethod::Delete}, {"4", HttpMethod::Head}, {"7", HttpMethod::Patch},
            };
            auto it = kCodes.find(e.text);
            if (it != kCodes.end()) return it->second;
        }
        return std::nullopt;
    }

    // --- Retrofit interfaces ---

    static std::optional<HttpMethod> retrofit_verb(const Annotation& a) {
        if (a.name == "GET") return HttpMethod::Get;
        if (a.name == "POST") return HttpMethod::Post;
        if (a.name == "PUT") return HttpMethod::Put;
        if (a.name == "DELETE") return HttpMethod::Delete;
        if (a.name == "PATCH") return HttpMethod::Patch;
        if (a.name == "HEAD") return HttpMethod::Head;
        return std::nullopt;
    }

    static PlaceholderKind param_placeholder(const TypeRef& t) {
        switch (t.kind) {
        case DeclaredType::NumberInt: return PlaceholderKind::NumberInt;
        case DeclaredType::NumberFloat: return PlaceholderKind::Number;
        case DeclaredType::Boolean: return PlaceholderKind::Boolean;
        default: return PlaceholderKind::String;
        }
    }

    void handle_retrofit_interface(const TypeDecl& t) {
        struct Route {
            const MethodDecl* method;
            HttpMethod verb;
            std::string path;
        };
        std::vector<Route> routes;
        for (const auto& m : t.methods) {
            for (const auto& a : m.annotations) {
                if (auto verb = retrofit_verb(a)) {
                    routes.push_back({&m, *verb, a.string_arg().value_or("")});
                    break;
                }
            }
        }
        if (routes.empty()) return;

        std::vector<StringValue> bases = corpus.retrofitBaseUrls;
        if (bases.empty()) {
            // No .baseUrl anywhere in the app: record the routes against an
            // unresolved authority rather than dropping them.
            bases.push_back(StringValue::placeholder(PlaceholderKind::String, "baseUrl"));
        }

        for (const Route& route : routes) {
            for (const StringValue& base : bases) {
                StringValue full = base;
                std::string baseRender = full.render_url();
                bool baseSlash = !baseRender.empty() && baseRender.back() == '/';
                bool pathSlash = !route.path.empty() && route.path.front() == '/';
                if (!baseSlash && !pathSlash) full.append_literal("/");
                std::string path = route.path;
                if (baseSlash && pathSlash) path.erase(0, 1);
                full.append_literal(path);

                UrlParseResult parsed = parse_url(full);
                WebApiUrl url;
                if (parsed.url) {
                    url = std::move(*parsed.url);
                } else {
                    url.scheme = UrlScheme::Http;
                    url.schemeAssumed = true;
                    url.incomplete = true;
                    url.authority = base;
                    url.endpoints.emplace_back();
                }
                Endpoint& ep = url.endpoints[0];
                ep.httpMethods.insert(route.verb);
                for (const auto& seg : ep.pathSegments) {
                    std::string r = seg.render_url();
                    if (r.find('{') != std::string::npos && r.find('}') != std::string::npos)
                        ep.parameterized = true;
                }
                std::vector<std::pair<StringValue, StringValue>> headers;
                for (const auto& p : route.method->params) {
                    for (const auto& a : p.annotations) {
                        if (a.name == "Query") {
                            ep.queries.emplace_back(
                                StringValue::literal(a.string_arg().value_or(p.name)),
                                StringValue::placeholder(param_placeholder(p.type), p.name));
                        } else if (a.name == "Header") {
                            headers.emplace_back(
                                StringValue::literal(a.string_arg().value_or(p.name)),
                                StringValue::placeholder(param_placeholder(p.type), p.name));
                        }
                    }
                }
                for (const auto& a : route.method->annotations) {
                    if (a.name != "Headers") continue;
                    for (const auto& arg : a.args) {
                        std::string line = arg.value;
                        auto colon = line.find(':');
                        if (colon == std::string::npos) continue;
                        std::string key = line.substr(0, colon);
                        std::string val = line.substr(colon + 1);
                        while (!val.empty() && val.front() == ' ') val.erase(0, 1);
                        headers.emplace_back(StringValue::literal(key),
                                             StringValue::literal(val));
                    }
                }
                url.headers = std::move(headers);
                Provenance prov;
                prov.unitPath = unit.path;
                prov.library = std::string(library_report_name(LibraryId::Retrofit));
                prov.enclosingType = t.name;
                prov.enclosingMethod = route.method->name;
                prov.position = route.method->span.begin;
                url.provenances.push_back(std::move(prov));
                out.urls.push_back(std::move(url));
            }
        }
    }

    void run() {
        libraries = detect_libraries(unit);
        unitPool = collect_guess_candidates(unit);

        bool networkDetected = false;
        for (LibraryId id : libraries)
            if (!is_json_library(id)) networkDetected = true;
        if (!networkDetected) return;

        for_each_method(unit, corpus, pool(),
                        [&](MethodContext& ctx) { handle_method(ctx); });

        if (has(LibraryId::Retrofit)) {
            struct Rec {
                Extractor& ex;
                void walk(const TypeDecl& t) {
                    if (t.isInterface) ex.handle_retrofit_interface(t);
                    for (const auto& n : t.nested) walk(n);
                }
            } rec{*this};
            for (const auto& t : unit.types) rec.walk(t);
        }

        std::stable_sort(out.urls.begin(), out.urls.end(),
                         [](const WebApiUrl& a, const WebApiUrl& b) {
                             const auto& pa = a.provenances.front();
                             const auto& pb = b.provenances.front();
                             if (pa.unitPath != pb.unitPath) return pa.unitPath < pb.unitPath;
                             return pa.position < pb.position;
                         });
    }
};

} // namespace

EndpointExtraction extract_endpoints(const SourceUnit& unit, const CorpusScope& scope) {
    Extractor ex{unit, scope};
    ex.run();
    return std::move(ex.out);
}

// --- JSON schema extraction -----------------------------------------------------

namespace {

struct SchemaExtractor {
    const SourceUnit& unit;
    const CorpusScope& corpus;
    std::set<LibraryId> libraries{};
    std::map<std::string, StringValue> unitPool{};
    std::vector<JsonSchema> out{};

    JsonNode class_schema(const TypeDecl& t, std::set<std::string>& visited) {
        JsonNode node = JsonNode::object();
        for (const auto& f : t.fields) {
            if (f.isStatic || f.isTransient) continue;
            std::string key = f.name;
            for (const auto& a : f.annotations) {
                if (a.name == "SerializedName" || a.name == "Json")
                    if (auto v = a.string_arg()) key = *v;
            }
            node.members.emplace_back(std::move(key), field_node(f, visited));
        }
        return node;
    }

    JsonNode field_node(const FieldDecl& f, std::set<std::string>& visited) {
        if (f.initializer) {
            const Expr& e = *f.initializer;
            switch (e.kind) {
            case Expr::Kind::StringLit: return JsonNode::string(e.text);
            case Expr::Kind::NumberLit: return JsonNode::number(e.text);
            case Expr::Kind::BoolLit: return JsonNode::boolean(e.boolValue);
            case Expr::Kind::NullLit: return JsonNode::null();
            default: break; // non-literal initializers act like no initializer
            }
        }
        switch (f.declaredType.kind) {
        case DeclaredType::String:
            return JsonNode::make_placeholder(PlaceholderKind::String);
        case DeclaredType::NumberInt:
            return JsonNode::make_placeholder(PlaceholderKind::NumberInt);
        case DeclaredType::NumberFloat:
            return JsonNode::make_placeholder(PlaceholderKind::Number);
        case DeclaredType::Boolean:
            return JsonNode::make_placeholder(PlaceholderKind::Boolean);
        case DeclaredType::Object: {
            const std::string& name = f.declaredType.objectName;
            if (visited.count(name))
                return JsonNode::make_placeholder(PlaceholderKind::Null);
            auto it = corpus.classesByName.find(name);
            if (it == corpus.classesByName.end())
                return JsonNode::make_placeholder(PlaceholderKind::Null);
            visited.insert(name);
            JsonNode nested = class_schema(*it->second, visited);
            visited.erase(name);
            return nested;
        }
        default:
            return JsonNode::make_placeholder(PlaceholderKind::Null);
        }
    }

    // --- org.json put-chain folding ---

    JsonNode value_node(const ExprPtr& e, MethodContext& ctx,
                        std::map<std::string, JsonNode>& jsonVars) {
        switch (e->kind) {
        case Expr::Kind::StringLit: return JsonNode::string(e->text);
        case Expr::Kind::NumberLit: return JsonNode::number(e->text);
        case Expr::Kind::BoolLit: return JsonNode::boolean(e->boolValue);
        case Expr::Kind::NullLit: return JsonNode::null();
        case Expr::Kind::NameRef: {
            auto jv = jsonVars.find(e->text);
            if (jv != jsonVars.end()) return jv->second; // nested object snapshot
            const Declaration* d = ctx.scope.lookup(e->text);
            DeclaredType kind = d ? d->declaredType.kind : DeclaredType::Unknown;
            StringValue v = ctx.reconstruct_expr(e);
            switch (kind) {
            case DeclaredType::NumberInt:
                return v.resolved() ? JsonNode::number(v.render_json())
                                    : JsonNode::make_placeholder(PlaceholderKind::NumberInt);
            case DeclaredType::NumberFloat:
                return v.resolved() ? JsonNode::number(v.render_json())
                                    : JsonNode::make_placeholder(PlaceholderKind::Number);
            case DeclaredType::Boolean:
                return v.resolved() ? JsonNode::boolean(v.render_json() == "true")
                                    : JsonNode::make_placeholder(PlaceholderKind::Boolean);
            default:
                if (v.resolved()) return JsonNode::string(v.render_json());
                if (v.all_placeholders())
                    return JsonNode::make_placeholder(PlaceholderKind::String);
                return JsonNode::string(v.render_json());
            }
        }
        case Expr::Kind::New:
            if (e->text == "JSONObject") return JsonNode::object();
            if (e->text == "JSONArray") return JsonNode::array();
            [[fallthrough]];
        default: {
            StringValue v = ctx.reconstruct_expr(e);
            if (v.resolved()) return JsonNode::string(v.render_json());
            if (v.all_placeholders())
                return JsonNode::make_placeholder(PlaceholderKind::String);
            return JsonNode::string(v.render_json());
        }
        }
    }

    // Applies one put(...) to a node.
    void apply_put(JsonNode& node, const Expr& call, MethodContext& ctx,
                   std::map<std::string, JsonNode>& jsonVars) {
        if (node.kind == JsonNode::Kind::Array) {
            if (call.args.size() >= 1)
                node.elements.push_back(value_node(call.args[0], ctx, jsonVars));
            return;
        }
        if (call.args.size() < 2) return;
        StringValue key = ctx.reconstruct_expr(call.args[0]);
        node.members.emplace_back(key.render_json(),
                                  value_node(call.args[1], ctx, jsonVars));
    }

    // Folds a chain rooted at `new JSONObject()` / `new JSONArray()`.
    bool fold_rooted_chain(const ExprPtr& e, MethodContext& ctx,
                           std::map<std::string, JsonNode>& jsonVars, JsonNode* result) {
        std::vector<const Expr*> chain;
        const Expr* cur = e.get();
        while (cur && cur->kind == Expr::Kind::MethodCall) {
            chain.push_back(cur);
            cur = cur->receiver.get();
        }
        if (!cur || cur->kind != Expr::Kind::New) return false;
        JsonNode node;
        if (cur->text == "JSONObject") node = JsonNode::object();
        else if (cur->text == "JSONArray") node = JsonNode::array();
        else return false;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            if ((*it)->text == "put") apply_put(node, **it, ctx, jsonVars);
        *result = std::move(node);
        return true;
    }

    void handle_org_json_method(MethodContext& ctx) {
        std::map<std::string, JsonNode> jsonVars;
        std::vector<std::string> varOrder;
        std::vector<std::pair<std::size_t, JsonNode>> anonymous;

        for (const auto& stmt : ctx.method.body) {
            if (!stmt.value) continue;
            if (stmt.kind == Stmt::Kind::LocalDecl || stmt.kind == Stmt::Kind::Assign) {
                JsonNode node;
                if (fold_rooted_chain(stmt.value, ctx, jsonVars, &node)) {
                    std::string var = stmt.name;
                    if (!var.empty()) {
                        if (!jsonVars.count(var)) varOrder.push_back(var);
                        jsonVars[var] = std::move(node);
                        continue;
                    }
                    anonymous.emplace_back(stmt.span.begin, std::move(node));
                    continue;
                }
            }
            // Statement-level puts on a tracked variable: o.put("a", 1).put(...)
            std::vector<const Expr*> chain;
            const Expr* cur = stmt.value.get();
            while (cur && cur->kind == Expr::Kind::MethodCall) {
                chain.push_back(cur);
                cur = cur->receiver.get();
            }
            if (cur && cur->kind == Expr::Kind::NameRef && jsonVars.count(cur->text)) {
                JsonNode& node = jsonVars[cur->text];
                for (auto it = chain.rbegin(); it != chain.rend(); ++it)
                    if ((*it)->text == "put") apply_put(node, **it, ctx, jsonVars);
                continue;
            }
            // Anonymous chains used as arguments or standalone.
            JsonNode node;
            if (stmt.kind == Stmt::Kind::ExprStmt &&
                fold_rooted_chain(stmt.value, ctx, jsonVars, &node))
                anonymous.emplace_back(stmt.span.begin, std::move(node));
        }

        auto emit_schema = [&](JsonNode node, std::size_t position) {
            if (node.kind == JsonNode::Kind::Object && node.members.empty()) return;
            if (node.kind == JsonNode::Kind::Array && node.elements.empty()) return;
            JsonSchema schema;
            schema.root = std::move(node);
            schema.provenance.unitPath = unit.path;
            schema.provenance.library = std::string(library_report_name(LibraryId::OrgJson));
            schema.provenance.enclosingType = ctx.type.name;
            schema.provenance.enclosingMethod = ctx.method.name;
            schema.provenance.position = position;
            out.push_back(std::move(schema));
        };
        for (const auto& var : varOrder)
            emit_schema(jsonVars[var], ctx.method.span.begin);
        for (auto& [position, node] : anonymous) emit_schema(std::move(node), position);
    }

    void run() {
        libraries = detect_libraries(unit);
        unitPool = collect_guess_candidates(unit);

        if (libraries.count(LibraryId::OrgJson)) {
            for_each_method(unit, corpus, unitPool,
                            [&](MethodContext& ctx) { handle_org_json_method(ctx); });
        }

        // Gson/Moshi model classes declared in this unit and referenced by a
        // serialization call (possibly in another unit of the same app).
        struct Rec {
            SchemaExtractor& ex;
            void walk(const TypeDecl& t) {
                auto it = ex.corpus.serializedTypes.find(t.name);
                if (it != ex.corpus.serializedTypes.end()) {
                    std::set<std::string> visited{t.name};
                    JsonSchema schema;
                    schema.root = ex.class_schema(t, visited);
                    schema.provenance.unitPath = ex.unit.path;
                    schema.provenance.library =
                        std::string(library_report_name(it->second));
                    schema.provenance.enclosingType = t.name;
                    schema.provenance.position = t.span.begin;
                    ex.out.push_back(std::move(schema));
                }
                for (const auto& n : t.nested) walk(n);
            }
        } rec{*this};
        for (const auto& t : unit.types) rec.walk(t);

        std::stable_sort(out.begin(), out.end(), [](const JsonSchema& a, const JsonSchema& b) {
            if (a.provenance.unitPath != b.provenance.unitPath)
                return a.provenance.unitPath < b.provenance.unitPath;
            return a.provenance.position < b.provenance.position;
        });
    }
};

} // namespace

std::vector<JsonSchema> extract_json_schemas(const SourceUnit& unit, const CorpusScope& scope) {
    SchemaExtractor ex{unit, scope};
    ex.run();
    return std::move(ex.out);
}

} // namespace apimine
