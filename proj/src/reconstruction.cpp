#include "apimine/reconstruction.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace apimine {

std::string placeholder_url_token(PlaceholderKind k) {
    switch (k) {
    case PlaceholderKind::String: return "<String>";
    case PlaceholderKind::Number: return "<Number>";
    case PlaceholderKind::NumberInt: return "<Integer>";
    case PlaceholderKind::Boolean: return "<Boolean>";
    case PlaceholderKind::Null: return "<Null>";
    }
    return "<String>";
}

std::string placeholder_json_token(PlaceholderKind k) {
    switch (k) {
    case PlaceholderKind::String: return "<STRING>";
    case PlaceholderKind::Number: return "<NUMBER>";
    case PlaceholderKind::NumberInt: return "<NUMBER_INT>";
    case PlaceholderKind::Boolean: return "<BOOLEAN>";
    case PlaceholderKind::Null: return "<NULL>";
    }
    return "<STRING>";
}

bool StringValue::resolved() const {
    return std::none_of(parts.begin(), parts.end(),
                        [](const Part& p) { return p.isPlaceholder; });
}

bool StringValue::all_placeholders() const {
    if (parts.empty()) return false;
    return std::all_of(parts.begin(), parts.end(),
                       [](const Part& p) { return p.isPlaceholder; });
}

void StringValue::append_literal(std::string_view text) {
    if (!parts.empty() && !parts.back().isPlaceholder) {
        parts.back().literal += text;
        return;
    }
    Part p;
    p.literal = std::string(text);
    parts.push_back(std::move(p));
}

void StringValue::append_placeholder(PlaceholderKind kind, std::string sourceName) {
    Part p;
    p.isPlaceholder = true;
    p.kind = kind;
    p.sourceName = std::move(sourceName);
    parts.push_back(std::move(p));
}

void StringValue::append(const StringValue& other) {
    for (const Part& p : other.parts) {
        if (p.isPlaceholder) parts.push_back(p);
        else append_literal(p.literal);
    }
}

std::string StringValue::render_url() const {
    std::string out;
    for (const Part& p : parts)
        out += p.isPlaceholder ? placeholder_url_token(p.kind) : p.literal;
    return out;
}

std::string StringValue::render_json() const {
    std::string out;
    for (const Part& p : parts)
        out += p.isPlaceholder ? placeholder_json_token(p.kind) : p.literal;
    return out;
}

StringValue StringValue::literal(std::string_view text) {
    StringValue v;
    v.append_literal(text);
    return v;
}

StringValue StringValue::placeholder(PlaceholderKind kind, std::string sourceName) {
    StringValue v;
    v.append_placeholder(kind, std::move(sourceName));
    return v;
}

// --- similarity ------------------------------------------------------------

double jaro_winkler(std::string_view a, std::string_view b, const SimilarityConfig& cfg) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 && lb == 0) return 1.0;
    if (la == 0 || lb == 0) return 0.0;

    const std::size_t window =
        std::max<std::size_t>(la, lb) / 2 > 0 ? std::max<std::size_t>(la, lb) / 2 - 1 : 0;

    std::vector<bool> aMatched(la, false), bMatched(lb, false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < la; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(lb, i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (bMatched[j] || a[i] != b[j]) continue;
            aMatched[i] = bMatched[j] = true;
            ++matches;
            break;
        }
    }
    if (matches == 0) return 0.0;

    // Transpositions: compare matched characters in order.
    std::size_t half = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < la; ++i) {
        if (!aMatched[i]) continue;
        while (!bMatched[j]) ++j;
        if (a[i] != b[j]) ++half;
        ++j;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(half) / 2.0;
    const double jaro =
        (m / static_cast<double>(la) + m / static_cast<double>(lb) + (m - t) / m) / 3.0;

    std::size_t prefix = 0;
    const std::size_t maxPrefix = std::min<std::size_t>(
        {la, lb, static_cast<std::size_t>(std::max(cfg.maxPrefix, 0))});
    while (prefix < maxPrefix && a[prefix] == b[prefix]) ++prefix;

    return jaro + static_cast<double>(prefix) * cfg.prefixScale * (1.0 - jaro);
}

std::optional<StringValue> guess_value(const std::string& name,
                                       const std::map<std::string, StringValue>& candidates,
                                       const SimilarityConfig& cfg) {
    const StringValue* best = nullptr;
    double bestScore = -1.0;
    // std::map iterates keys in order, so the first key reaching the best
    // score is the lexicographic tiebreak winner.
    for (const auto& [key, value] : candidates) {
        double score = jaro_winkler(name, key, cfg);
        if (score > bestScore) {
            bestScore = score;
            best = &value;
        }
    }
    if (best && bestScore >= cfg.acceptThreshold) return *best;
    return std::nullopt;
}

// --- recursive resolution ----------------------------------------------------

namespace {

PlaceholderKind placeholder_kind_for(DeclaredType t) {
    switch (t) {
    case DeclaredType::NumberInt: return PlaceholderKind::NumberInt;
    case DeclaredType::NumberFloat: return PlaceholderKind::Number;
    case DeclaredType::Boolean: return PlaceholderKind::Boolean;
    default: return PlaceholderKind::String;
    }
}

struct Resolver {
    const Scope& scope;
    ResolutionBudget& budget;
    const ReconstructionContext& ctx;
    // (declaration name, assignment index) pairs currently being expanded.
    std::set<std::pair<std::string, std::size_t>> visiting;

    StringValue resolve(const ExprPtr& e, std::size_t usePos);

    StringValue resolve_name(const std::string& name, std::size_t usePos);
    StringValue default_for(const Declaration& d, const std::string& name);
    StringValue unresolved_string(const std::string& name);
    StringValue resolve_call(const Expr& e, std::size_t usePos);
};

StringValue Resolver::unresolved_string(const std::string& name) {
    if (ctx.guessCandidates && !name.empty()) {
        if (auto guessed = guess_value(name, *ctx.guessCandidates, ctx.similarity))
            return *guessed;
    }
    return StringValue::placeholder(PlaceholderKind::String, name);
}

StringValue Resolver::default_for(const Declaration& d, const std::string& name) {
    switch (d.declaredType.kind) {
    case DeclaredType::NumberInt:
    case DeclaredType::NumberFloat:
        return StringValue::literal("0");
    case DeclaredType::Boolean:
        return StringValue::literal("true");
    default:
        return unresolved_string(name);
    }
}

StringValue Resolver::resolve_name(const std::string& name, std::size_t usePos) {
    if (!budget.step()) {
        const Declaration* d = scope.lookup(name);
        return StringValue::placeholder(
            d ? placeholder_kind_for(d->declaredType.kind) : PlaceholderKind::String, name);
    }
    const Declaration* d = scope.lookup(name);
    if (!d) return unresolved_string(name);
    if (d->assignments.empty()) return default_for(*d, name);

    // Last assignment preceding the use site; fields behave as if their
    // initializers had no position, so the final assignment applies.
    std::size_t chosen = d->assignments.size();
    if (!d->isField && usePos != 0) {
        for (std::size_t i = 0; i < d->assignments.size(); ++i)
            if (d->assignments[i].first < usePos) chosen = i + 1;
        if (chosen == d->assignments.size() + 1) chosen = d->assignments.size();
    }
    if (chosen == 0) return default_for(*d, name); // nothing precedes the use
    const std::size_t idx = chosen - 1 < d->assignments.size() ? chosen - 1
                                                               : d->assignments.size() - 1;

    auto key = std::make_pair(name, idx);
    if (visiting.count(key)) {
        // Self-referential definition: stop with a typed placeholder.
        return StringValue::placeholder(placeholder_kind_for(d->declaredType.kind), name);
    }
    visiting.insert(key);
    StringValue v = resolve(d->assignments[idx].second,
                            d->isField ? 0 : d->assignments[idx].first);
    visiting.erase(key);

    if (v.all_placeholders() && d->declaredType.kind == DeclaredType::String) {
        // A fully opaque result for a string variable still gets a guess.
        StringValue guessedOrPlaceholder = unresolved_string(name);
        if (guessedOrPlaceholder.resolved()) return guessedOrPlaceholder;
    }
    return v;
}

StringValue Resolver::resolve_call(const Expr& e, std::size_t usePos) {
    const std::string& method = e.text;
    if ((method == "append" || method == "concat") && e.args.size() == 1 && e.receiver) {
        StringValue v = resolve(e.receiver, usePos);
        v.append(resolve(e.args[0], usePos));
        return v;
    }
    if (method == "toString" && e.args.empty() && e.receiver) {
        return resolve(e.receiver, usePos);
    }
    // Formatting and every other call are not evaluated; they stand in as a
    // single string placeholder.
    return StringValue::placeholder(PlaceholderKind::String, method);
}

StringValue Resolver::resolve(const ExprPtr& e, std::size_t usePos) {
    if (!e) return StringValue::placeholder(PlaceholderKind::String);
    switch (e->kind) {
    case Expr::Kind::StringLit:
        return StringValue::literal(e->text);
    case Expr::Kind::NumberLit:
        return StringValue::literal(e->text);
    case Expr::Kind::BoolLit:
        return StringValue::literal(e->boolValue ? "true" : "false");
    case Expr::Kind::NullLit:
        return StringValue::literal("null");
    case Expr::Kind::Concat: {
        StringValue v = resolve(e->lhs, usePos);
        v.append(resolve(e->rhs, usePos));
        return v;
    }
    case Expr::Kind::NameRef:
        // The threaded position is the enclosing statement's start, so a
        // read inside an assignment RHS sees only earlier assignments.
        return resolve_name(e->text, usePos);
    case Expr::Kind::FieldAccess: {
        // this.x resolves like x; anything else is outside same-type lookup.
        bool viaThis = e->receiver && e->receiver->kind == Expr::Kind::NameRef &&
                       e->receiver->text == "this";
        if (viaThis || !e->receiver)
            return resolve_name(e->text, usePos);
        return StringValue::placeholder(PlaceholderKind::String, e->text);
    }
    case Expr::Kind::MethodCall:
        return resolve_call(*e, usePos);
    case Expr::Kind::New: {
        if ((e->text == "String" || e->text == "StringBuilder" || e->text == "StringBuffer")) {
            if (e->args.empty()) return StringValue::literal("");
            return resolve(e->args[0], usePos);
        }
        return StringValue::placeholder(PlaceholderKind::String, e->text);
    }
    case Expr::Kind::Unknown:
    default:
        return StringValue::placeholder(PlaceholderKind::String);
    }
}

} // namespace

StringValue reconstruct(const ExprPtr& expr, const Scope& scope, ResolutionBudget& budget,
                        const ReconstructionContext& ctx) {
    Resolver r{scope, budget, ctx, {}};
    return r.resolve(expr, expr ? expr->span.begin : 0);
}

std::map<std::string, StringValue> collect_guess_candidates(const SourceUnit& unit) {
    std::map<std::string, StringValue> pool;
    ReconstructionContext noGuess; // candidates resolve without guessing

    auto consider = [&](const std::string& name, const ExprPtr& init, const Scope& scope) {
        if (!init || pool.count(name)) return;
        ResolutionBudget budget;
        StringValue v = reconstruct(init, scope, budget, noGuess);
        if (v.resolved() && !v.parts.empty()) pool.emplace(name, std::move(v));
    };

    std::function<void(const TypeDecl&)> walk = [&](const TypeDecl& t) {
        Scope fieldScope = build_field_scope(t);
        for (const auto& f : t.fields)
            if (f.declaredType.kind == DeclaredType::String)
                consider(f.name, f.initializer, fieldScope);
        for (const auto& m : t.methods) {
            Scope s = build_scope(m, t);
            for (const auto& stmt : m.body)
                if (stmt.kind == Stmt::Kind::LocalDecl &&
                    stmt.declType.kind == DeclaredType::String)
                    consider(stmt.name, stmt.value, s);
        }
        for (const auto& n : t.nested) walk(n);
    };

    for (const auto& t : unit.types) walk(t);
    return pool;
}

} // namespace apimine
