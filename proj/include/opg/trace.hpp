#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opg/expr.hpp"

namespace opg {

/// One axiom application. `path` addresses the redex in the current term as
/// dot-separated child indices ("" is the root); `entry` tells which
/// component of a multi-entry system the step belongs to.
struct TraceStep {
    int entry = 1;
    std::string rule;
    std::string path;
    std::string redex;
    std::string contractum;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct RewriteTrace {
    std::vector<TraceStep> steps;
};

// ---------------------------------------------------------------------------
// path navigation

namespace detail {

inline std::vector<int> parse_path(const std::string& path) {
    std::vector<int> out;
    if (path.empty()) return out;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) out.push_back(std::stoi(part));
    return out;
}

inline ExprPtr child(const ExprPtr& t, int i) {
    ExprPtr c = i == 0 ? t->a : (i == 1 ? t->b : nullptr);
    if (!c) throw InputError("trace path leaves the term");
    return c;
}

inline ExprPtr replace_at(const ExprPtr& t, const std::vector<int>& path, std::size_t depth,
                          const ExprPtr& replacement) {
    if (depth == path.size()) return replacement;
    ExprPtr sub = replace_at(child(t, path[depth]), path, depth + 1, replacement);
    switch (t->tag) {
    case GameExpr::Tag::Pri: return mk_pri(t->k, sub);
    case GameExpr::Tag::Mu: return mk_mu(t->name, sub);
    case GameExpr::Tag::Join:
        return path[depth] == 0 ? mk_join(sub, t->b) : mk_join(t->a, sub);
    case GameExpr::Tag::Meet:
        return path[depth] == 0 ? mk_meet(sub, t->b) : mk_meet(t->a, sub);
    default:
        throw InputError("trace path addresses a leaf");
    }
}

inline ExprPtr subterm_at(const ExprPtr& t, const std::vector<int>& path) {
    ExprPtr cur = t;
    for (int i : path) cur = child(cur, i);
    return cur;
}

} // namespace detail

/// Apply the steps of one entry's trace to its initial term. Binders are
/// freshened exactly as the normaliser does, then each step must match its
/// recorded redex before being replaced by the contractum.
inline ExprPtr replay_trace(const ExprPtr& initial, const RewriteTrace& trace, int entry = 1) {
    ExprPtr cur = freshen_binders(initial);
    for (const auto& step : trace.steps) {
        if (step.entry != entry) continue;
        auto path = detail::parse_path(step.path);
        ExprPtr at = detail::subterm_at(cur, path);
        ExprPtr redex = parse_expr(step.redex);
        if (!expr_equal(at, redex))
            throw InputError("trace replay: redex mismatch at path '" + step.path +
                             "' for rule " + step.rule + ": expected " + step.redex +
                             ", found " + print_expr(at));
        cur = detail::replace_at(cur, path, 0, parse_expr(step.contractum));
    }
    return cur;
}

// ---------------------------------------------------------------------------
// JSONL

inline std::string trace_to_jsonl(const RewriteTrace& trace) {
    std::string out;
    for (const auto& s : trace.steps) {
        nlohmann::ordered_json j;
        j["entry"] = s.entry;
        j["rule"] = s.rule;
        j["path"] = s.path;
        j["redex"] = s.redex;
        j["contractum"] = s.contractum;
        out += j.dump();
        out += '\n';
    }
    return out;
}

inline RewriteTrace trace_from_jsonl(const std::string& text) {
    RewriteTrace trace;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        TraceStep s;
        s.entry = j.value("entry", 1);
        s.rule = j.at("rule").get<std::string>();
        s.path = j.at("path").get<std::string>();
        s.redex = j.at("redex").get<std::string>();
        s.contractum = j.at("contractum").get<std::string>();
        trace.steps.push_back(std::move(s));
    }
    return trace;
}

} // namespace opg
