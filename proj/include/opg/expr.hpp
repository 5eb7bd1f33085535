#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opg/config.hpp"
#include "opg/priority.hpp"

namespace opg {

struct GameExpr;
using ExprPtr = std::shared_ptr<const GameExpr>;

/// Game expressions: x | <k> t | s \/ t | s /\ t | bot | top | mu x . t.
/// Nodes are immutable and may be shared.
struct GameExpr {
    enum class Tag { Var, Pri, Join, Meet, Bot, Top, Mu };

    Tag tag;
    std::string name;  // Var name / Mu binder
    Priority k = 0;    // Pri label
    ExprPtr a, b;      // children (a for Pri/Mu, a+b for Join/Meet)
};

inline ExprPtr mk_var(std::string x) {
    return std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Var, std::move(x), 0, nullptr, nullptr});
}
inline ExprPtr mk_pri(Priority k, ExprPtr t) {
    return std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Pri, {}, k, std::move(t), nullptr});
}
inline ExprPtr mk_join(ExprPtr s, ExprPtr t) {
    return std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Join, {}, 0, std::move(s), std::move(t)});
}
inline ExprPtr mk_meet(ExprPtr s, ExprPtr t) {
    return std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Meet, {}, 0, std::move(s), std::move(t)});
}
inline ExprPtr mk_bot() {
    static const ExprPtr b = std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Bot, {}, 0, nullptr, nullptr});
    return b;
}
inline ExprPtr mk_top() {
    static const ExprPtr t = std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Top, {}, 0, nullptr, nullptr});
    return t;
}
inline ExprPtr mk_mu(std::string x, ExprPtr t) {
    return std::make_shared<GameExpr>(GameExpr{GameExpr::Tag::Mu, std::move(x), 0, std::move(t), nullptr});
}

// ---------------------------------------------------------------------------
// structure

inline std::size_t expr_size(const ExprPtr& t) {
    if (!t) return 0;
    return 1 + expr_size(t->a) + expr_size(t->b);
}

inline void collect_free_vars(const ExprPtr& t, std::set<std::string>& bound,
                              std::set<std::string>& out) {
    switch (t->tag) {
    case GameExpr::Tag::Var:
        if (!bound.count(t->name)) out.insert(t->name);
        break;
    case GameExpr::Tag::Pri:
        collect_free_vars(t->a, bound, out);
        break;
    case GameExpr::Tag::Join:
    case GameExpr::Tag::Meet:
        collect_free_vars(t->a, bound, out);
        collect_free_vars(t->b, bound, out);
        break;
    case GameExpr::Tag::Mu: {
        bool fresh = bound.insert(t->name).second;
        collect_free_vars(t->a, bound, out);
        if (fresh) bound.erase(t->name);
        break;
    }
    default:
        break;
    }
}

inline std::set<std::string> free_vars(const ExprPtr& t) {
    std::set<std::string> bound, out;
    collect_free_vars(t, bound, out);
    return out;
}

/// Structural equality including variable names.
inline bool expr_equal(const ExprPtr& s, const ExprPtr& t) {
    if (s.get() == t.get()) return true;
    if (!s || !t || s->tag != t->tag) return false;
    switch (s->tag) {
    case GameExpr::Tag::Var: return s->name == t->name;
    case GameExpr::Tag::Bot:
    case GameExpr::Tag::Top: return true;
    case GameExpr::Tag::Pri: return s->k == t->k && expr_equal(s->a, t->a);
    case GameExpr::Tag::Join:
    case GameExpr::Tag::Meet: return expr_equal(s->a, t->a) && expr_equal(s->b, t->b);
    case GameExpr::Tag::Mu: return s->name == t->name && expr_equal(s->a, t->a);
    }
    return false;
}

namespace detail {

inline bool alpha_equal_rec(const ExprPtr& s, const ExprPtr& t,
                            std::map<std::string, std::string>& sm,
                            std::map<std::string, std::string>& tm, int& counter) {
    if (!s || !t || s->tag != t->tag) return false;
    switch (s->tag) {
    case GameExpr::Tag::Var: {
        auto is = sm.find(s->name);
        auto it = tm.find(t->name);
        if ((is == sm.end()) != (it == tm.end())) return false;
        if (is == sm.end()) return s->name == t->name; // both free
        return is->second == it->second;
    }
    case GameExpr::Tag::Bot:
    case GameExpr::Tag::Top:
        return true;
    case GameExpr::Tag::Pri:
        return s->k == t->k && alpha_equal_rec(s->a, t->a, sm, tm, counter);
    case GameExpr::Tag::Join:
    case GameExpr::Tag::Meet:
        return alpha_equal_rec(s->a, t->a, sm, tm, counter) &&
               alpha_equal_rec(s->b, t->b, sm, tm, counter);
    case GameExpr::Tag::Mu: {
        std::string fresh = "#" + std::to_string(counter++);
        auto olds = sm.find(s->name) == sm.end() ? std::optional<std::string>{}
                                                 : std::optional<std::string>{sm[s->name]};
        auto oldt = tm.find(t->name) == tm.end() ? std::optional<std::string>{}
                                                 : std::optional<std::string>{tm[t->name]};
        sm[s->name] = fresh;
        tm[t->name] = fresh;
        bool ok = alpha_equal_rec(s->a, t->a, sm, tm, counter);
        if (olds) sm[s->name] = *olds; else sm.erase(s->name);
        if (oldt) tm[t->name] = *oldt; else tm.erase(t->name);
        return ok;
    }
    }
    return false;
}

} // namespace detail

inline bool alpha_equal(const ExprPtr& s, const ExprPtr& t) {
    std::map<std::string, std::string> sm, tm;
    int counter = 0;
    return detail::alpha_equal_rec(s, t, sm, tm, counter);
}

// ---------------------------------------------------------------------------
// substitution

namespace detail {

inline std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

inline ExprPtr rename_free(const ExprPtr& t, const std::string& from, const std::string& to) {
    switch (t->tag) {
    case GameExpr::Tag::Var: return t->name == from ? mk_var(to) : t;
    case GameExpr::Tag::Bot:
    case GameExpr::Tag::Top: return t;
    case GameExpr::Tag::Pri: return mk_pri(t->k, rename_free(t->a, from, to));
    case GameExpr::Tag::Join: return mk_join(rename_free(t->a, from, to), rename_free(t->b, from, to));
    case GameExpr::Tag::Meet: return mk_meet(rename_free(t->a, from, to), rename_free(t->b, from, to));
    case GameExpr::Tag::Mu:
        if (t->name == from) return t;
        return mk_mu(t->name, rename_free(t->a, from, to));
    }
    return t;
}

} // namespace detail

/// Capture-avoiding substitution t[u/x].
inline ExprPtr substitute(const ExprPtr& t, const std::string& x, const ExprPtr& u) {
    switch (t->tag) {
    case GameExpr::Tag::Var:
        return t->name == x ? u : t;
    case GameExpr::Tag::Bot:
    case GameExpr::Tag::Top:
        return t;
    case GameExpr::Tag::Pri:
        return mk_pri(t->k, substitute(t->a, x, u));
    case GameExpr::Tag::Join:
        return mk_join(substitute(t->a, x, u), substitute(t->b, x, u));
    case GameExpr::Tag::Meet:
        return mk_meet(substitute(t->a, x, u), substitute(t->b, x, u));
    case GameExpr::Tag::Mu: {
        if (t->name == x) return t; // bound occurrences untouched
        if (!free_vars(t->a).count(x)) return t;
        std::string binder = t->name;
        ExprPtr body = t->a;
        if (free_vars(u).count(binder)) {
            std::set<std::string> taken = free_vars(u);
            auto fb = free_vars(body);
            taken.insert(fb.begin(), fb.end());
            taken.insert(x);
            std::string nb = detail::fresh_name(binder, taken);
            body = detail::rename_free(body, binder, nb);
            binder = nb;
        }
        return mk_mu(binder, substitute(body, x, u));
    }
    }
    return t;
}

// ---------------------------------------------------------------------------
// printing

namespace detail {

// precedence levels: 0 = join, 1 = meet, 2 = prefix/atom
inline void print_rec(const ExprPtr& t, int level, std::string& out) {
    switch (t->tag) {
    case GameExpr::Tag::Var:
        out += t->name;
        break;
    case GameExpr::Tag::Bot:
        out += "bot";
        break;
    case GameExpr::Tag::Top:
        out += "top";
        break;
    case GameExpr::Tag::Pri:
        out += "<" + std::to_string(t->k) + "> ";
        print_rec(t->a, 2, out);
        break;
    case GameExpr::Tag::Join:
        if (level > 0) out += "(";
        print_rec(t->a, 1, out);
        out += " \\/ ";
        print_rec(t->b, level > 0 ? 1 : 0, out);
        if (level > 0) out += ")";
        break;
    case GameExpr::Tag::Meet:
        if (level > 1) out += "(";
        print_rec(t->a, 2, out);
        out += " /\\ ";
        print_rec(t->b, 1, out);
        if (level > 1) out += ")";
        break;
    case GameExpr::Tag::Mu:
        // mu extends as far right as possible, so it needs parens whenever
        // it is not the rightmost suffix of its context
        if (level > 0) out += "(";
        out += "mu " + t->name + " . ";
        print_rec(t->a, 0, out);
        if (level > 0) out += ")";
        break;
    }
}

} // namespace detail

inline std::string print_expr(const ExprPtr& t) {
    std::string out;
    detail::print_rec(t, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    ExprPtr parse() {
        ExprPtr t = disj();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input");
        return t;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw InputError("expression syntax error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        skip_ws();
        if (src_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool peek_ident_char(std::size_t at) const {
        if (at >= src_.size()) return false;
        unsigned char c = static_cast<unsigned char>(src_[at]);
        return std::isalnum(c) || c == '_' || c == '\'';
    }

    bool eat_keyword(std::string_view kw) {
        skip_ws();
        if (src_.substr(pos_, kw.size()) == kw && !peek_ident_char(pos_ + kw.size())) {
            pos_ += kw.size();
            return true;
        }
        return false;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < src_.size()) {
            unsigned char c = static_cast<unsigned char>(src_[pos_]);
            if (std::isalpha(c) || c == '_') {
                ++pos_;
                while (peek_ident_char(pos_)) ++pos_;
            }
        }
        if (pos_ == start) fail("expected identifier");
        return std::string(src_.substr(start, pos_ - start));
    }

    int number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number");
        return std::stoi(std::string(src_.substr(start, pos_ - start)));
    }

    ExprPtr disj() {
        ExprPtr t = conj();
        while (eat("\\/")) t = mk_join(t, conj());
        return t;
    }

    ExprPtr conj() {
        ExprPtr t = prefix();
        while (eat("/\\")) t = mk_meet(t, prefix());
        return t;
    }

    ExprPtr prefix() {
        skip_ws();
        if (eat("<")) {
            int k = number();
            if (!eat(">")) fail("expected '>'");
            return mk_pri(k, prefix());
        }
        if (eat_keyword("mu")) {
            std::string x = ident();
            if (!eat(".")) fail("expected '.' after mu binder");
            return mk_mu(x, disj()); // mu extends as far right as possible
        }
        return atom();
    }

    ExprPtr atom() {
        if (eat("(")) {
            ExprPtr t = disj();
            if (!eat(")")) fail("expected ')'");
            return t;
        }
        if (eat_keyword("bot")) return mk_bot();
        if (eat_keyword("top")) return mk_top();
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        return mk_var(ident());
    }
};

} // namespace detail

/// Grammar: t ::= x | <k> t | t \/ t | t /\ t | bot | top | mu x . t
/// with /\ binding tighter than \/, <k> tightest, and mu extending right.
inline ExprPtr parse_expr(std::string_view text) {
    return detail::ExprParser(text).parse();
}

// ---------------------------------------------------------------------------
// binder freshening

namespace detail {

inline ExprPtr freshen_rec(const ExprPtr& t, std::map<std::string, std::string>& scope,
                           std::set<std::string>& used) {
    switch (t->tag) {
    case GameExpr::Tag::Var: {
        auto it = scope.find(t->name);
        return it == scope.end() ? t : mk_var(it->second);
    }
    case GameExpr::Tag::Bot:
    case GameExpr::Tag::Top:
        return t;
    case GameExpr::Tag::Pri:
        return mk_pri(t->k, freshen_rec(t->a, scope, used));
    case GameExpr::Tag::Join:
        return mk_join(freshen_rec(t->a, scope, used), freshen_rec(t->b, scope, used));
    case GameExpr::Tag::Meet:
        return mk_meet(freshen_rec(t->a, scope, used), freshen_rec(t->b, scope, used));
    case GameExpr::Tag::Mu: {
        std::string nb = fresh_name(t->name, used);
        used.insert(nb);
        auto old = scope.find(t->name) == scope.end() ? std::optional<std::string>{}
                                                      : std::optional<std::string>{scope[t->name]};
        scope[t->name] = nb;
        ExprPtr body = freshen_rec(t->a, scope, used);
        if (old) scope[t->name] = *old; else scope.erase(t->name);
        return mk_mu(nb, body);
    }
    }
    return t;
}

} // namespace detail

/// Deterministically renames binders so that every binder is distinct from
/// all other binders and from every free variable. Rewrite traces are
/// emitted and replayed against terms in this form.
inline ExprPtr freshen_binders(const ExprPtr& t) {
    std::set<std::string> used = free_vars(t);
    std::map<std::string, std::string> scope;
    return detail::freshen_rec(t, scope, used);
}

/// One expression per entry position; free variables x_1..x_n name the exits.
struct ExprSystem {
    std::vector<std::string> exits;
    std::vector<ExprPtr> entries;
};

} // namespace opg
