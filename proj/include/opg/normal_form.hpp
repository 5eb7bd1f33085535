#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "opg/expr.hpp"
#include "opg/priority.hpp"

namespace opg {

/// One Player-0 guarantee: per exit, the least favourable priority Player 1
/// can force when the play leaves through it. Canonical clauses keep at most
/// one priority per exit, so a map suffices.
using Clause = std::map<std::string, Priority>;

/// Canonical antichain of clauses. Bot (Player 0 has no safe strategy) is
/// the empty set of clauses; Top (a strategy with no Player-1 outcomes) is
/// the single empty clause.
struct NormalForm {
    std::vector<Clause> clauses;

    bool is_bot() const { return clauses.empty(); }
    bool is_top() const { return clauses.size() == 1 && clauses.front().empty(); }

    bool mentions(const std::string& x) const {
        for (const auto& c : clauses)
            if (c.count(x)) return true;
        return false;
    }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm nf_bot() { return {}; }
inline NormalForm nf_top() { return {{Clause{}}}; }
inline NormalForm nf_var(const std::string& x) { return {{Clause{{x, 0}}}}; }

/// Per-entry semantics of a multi-entry game.
using SystemNF = std::vector<NormalForm>;

// ---------------------------------------------------------------------------
// canonicalisation

/// C subsumes D when every obligation of C appears in D at a priority that
/// is at most as favourable: any context won through D is won through C, so
/// D is a redundant Player-0 option.
inline bool clause_subsumes(const Clause& c, const Clause& d) {
    for (const auto& [exit, kc] : c) {
        auto it = d.find(exit);
        if (it == d.end() || !priority_leq(it->second, kc)) return false;
    }
    return true;
}

/// Collapse raw outcome lists to the canonical antichain: per exit keep the
/// ⊑-least priority, then drop every clause subsumed by another.
inline NormalForm canonicalize(const std::vector<std::vector<std::pair<std::string, Priority>>>& raw) {
    std::vector<Clause> clauses;
    for (const auto& outcomes : raw) {
        Clause c;
        for (const auto& [exit, k] : outcomes) {
            auto [it, fresh] = c.emplace(exit, k);
            if (!fresh) it->second = priority_min(it->second, k);
        }
        clauses.push_back(std::move(c));
    }
    std::sort(clauses.begin(), clauses.end());
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());

    std::vector<Clause> kept;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < clauses.size() && !dominated; ++j)
            if (i != j && clause_subsumes(clauses[j], clauses[i])) dominated = true;
        if (!dominated) kept.push_back(clauses[i]);
    }
    return {std::move(kept)};
}

inline NormalForm canonicalize_clauses(std::vector<Clause> clauses) {
    std::vector<std::vector<std::pair<std::string, Priority>>> raw;
    raw.reserve(clauses.size());
    for (auto& c : clauses) raw.emplace_back(c.begin(), c.end());
    return canonicalize(raw);
}

// ---------------------------------------------------------------------------
// the algebra

/// Player-0 choice: union of the options.
inline NormalForm nf_join(const NormalForm& a, const NormalForm& b) {
    std::vector<Clause> clauses = a.clauses;
    clauses.insert(clauses.end(), b.clauses.begin(), b.clauses.end());
    return canonicalize_clauses(std::move(clauses));
}

/// Player-1 choice: pairwise union of obligations.
inline NormalForm nf_meet(const NormalForm& a, const NormalForm& b) {
    std::vector<std::vector<std::pair<std::string, Priority>>> raw;
    for (const auto& c : a.clauses)
        for (const auto& d : b.clauses) {
            std::vector<std::pair<std::string, Priority>> merged(c.begin(), c.end());
            merged.insert(merged.end(), d.begin(), d.end());
            raw.push_back(std::move(merged));
        }
    return canonicalize(raw);
}

/// Passing through a priority-k position fuses k into every recorded
/// outcome by maximum.
inline NormalForm nf_priority(Priority k, const NormalForm& a) {
    std::vector<std::vector<std::pair<std::string, Priority>>> raw;
    for (const auto& c : a.clauses) {
        std::vector<std::pair<std::string, Priority>> outcomes;
        for (const auto& [exit, p] : c) outcomes.emplace_back(exit, std::max(k, p));
        raw.push_back(std::move(outcomes));
    }
    return canonicalize(raw);
}

/// Sequential composition along exit x: every obligation (x,p) is replaced
/// by the continuation b with p fused in.
inline NormalForm nf_substitute(const NormalForm& a, const std::string& x, const NormalForm& b) {
    std::vector<Clause> out;
    for (const auto& c : a.clauses) {
        auto it = c.find(x);
        if (it == c.end()) {
            out.push_back(c);
            continue;
        }
        Clause rest = c;
        rest.erase(x);
        NormalForm cont = nf_priority(it->second, b);
        for (const auto& d : cont.clauses) {
            Clause merged = rest;
            for (const auto& [exit, p] : d) {
                auto [mi, fresh] = merged.emplace(exit, p);
                if (!fresh) mi->second = priority_min(mi->second, p);
            }
            out.push_back(std::move(merged));
        }
    }
    return canonicalize_clauses(std::move(out));
}

inline bool nf_equal(const NormalForm& a, const NormalForm& b) { return a == b; }

/// Compose per-entry normal forms of A with those of B along A's exits
/// (exit x_j of A continues as entry j of B). Exit names of the result are
/// B's. Temporary names avoid capture between A's and B's namespaces.
inline NormalForm nf_compose_entry(const NormalForm& a, const SystemNF& b) {
    NormalForm cur = a;
    const std::string tmp = "#tmp";
    for (std::size_t j = 0; j < b.size(); ++j)
        cur = nf_substitute(cur, "x" + std::to_string(j + 1), [&] {
            NormalForm renamed;
            for (const auto& c : b[j].clauses) {
                Clause rc;
                for (const auto& [exit, p] : c) rc.emplace(tmp + exit, p);
                renamed.clauses.push_back(std::move(rc));
            }
            return renamed;
        }());
    NormalForm out;
    for (const auto& c : cur.clauses) {
        Clause rc;
        for (const auto& [exit, p] : c)
            rc.emplace(exit.rfind(tmp, 0) == 0 ? exit.substr(tmp.size()) : exit, p);
        out.clauses.push_back(std::move(rc));
    }
    return canonicalize_clauses(std::move(out.clauses));
}

// ---------------------------------------------------------------------------
// terms for canonical forms

/// The canonical term encoding of a normal form: a right-nested join of
/// right-nested meets of <k> x leaves, in clause order. Rewrite traces end
/// on these terms.
inline ExprPtr nf_to_expr(const NormalForm& nf) {
    if (nf.is_bot()) return mk_bot();
    auto pair_term = [](const std::string& exit, Priority k) {
        return k == 0 ? mk_var(exit) : mk_pri(k, mk_var(exit));
    };
    auto clause_term = [&](const Clause& c) -> ExprPtr {
        if (c.empty()) return mk_top();
        ExprPtr t;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            ExprPtr leaf = pair_term(it->first, it->second);
            t = t ? mk_meet(leaf, t) : leaf;
        }
        return t;
    };
    ExprPtr t;
    for (auto it = nf.clauses.rbegin(); it != nf.clauses.rend(); ++it) {
        ExprPtr c = clause_term(*it);
        t = t ? mk_join(c, t) : c;
    }
    return t;
}

} // namespace opg
