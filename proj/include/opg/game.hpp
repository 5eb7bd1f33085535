#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opg/config.hpp"
#include "opg/priority.hpp"

namespace opg {

enum class Player : int { Zero = 0, One = 1 };

inline Player opponent(Player p) { return p == Player::Zero ? Player::One : Player::Zero; }

/// One side of a game's interface: fwd counts left-to-right wires, bwd
/// right-to-left ones. Two games compose when the codomain of the first
/// equals the domain of the second, field for field.
struct Boundary {
    int fwd = 0;
    int bwd = 0;

    friend bool operator==(const Boundary&, const Boundary&) = default;
    Boundary operator+(const Boundary& o) const { return {fwd + o.fwd, bwd + o.bwd}; }
};

/// Source or target of an edge. Entry/exit indices are 1-based.
///
/// Entry indices run over the domain's fwd wires first, then the codomain's
/// bwd wires; exit indices over the codomain's fwd wires first, then the
/// domain's bwd wires.
struct EndPoint {
    enum class Kind : int { Entry = 0, Pos = 1, Exit = 2 };
    Kind kind = Kind::Pos;
    int index = 0;

    static EndPoint entry(int k) { return {Kind::Entry, k}; }
    static EndPoint pos(int id) { return {Kind::Pos, id}; }
    static EndPoint exit(int k) { return {Kind::Exit, k}; }

    friend bool operator==(const EndPoint&, const EndPoint&) = default;
    friend auto operator<=>(const EndPoint&, const EndPoint&) = default;
};

using Edge = std::pair<EndPoint, EndPoint>;

struct PositionInfo {
    Player owner = Player::Zero;
    Priority priority = 0;

    friend bool operator==(const PositionInfo&, const PositionInfo&) = default;
};

/// An open parity game. Positions are contiguous 0-based ids; edges are kept
/// as a sorted, deduplicated set.
struct OpenParityGame {
    int max_priority = 2;
    Boundary domain;
    Boundary codomain;
    std::vector<PositionInfo> positions;
    std::vector<Edge> edges;

    int entry_count() const { return domain.fwd + codomain.bwd; }
    int exit_count() const { return codomain.fwd + domain.bwd; }
    int position_count() const { return static_cast<int>(positions.size()); }

    bool is_closed() const { return codomain == Boundary{} && domain.bwd == 0; }

    void sort_edges() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    void add_edge(EndPoint from, EndPoint to) { edges.emplace_back(from, to); }

    friend bool operator==(const OpenParityGame&, const OpenParityGame&) = default;
};

/// A closed game is an open game with no exits: domain (n,0), codomain (0,0).
/// Its entries enumerate the queried start positions.
using ClosedParityGame = OpenParityGame;

// ---------------------------------------------------------------------------
// validation

inline std::vector<std::string> validate(const OpenParityGame& g) {
    std::vector<std::string> out;
    auto bad = [&](const std::string& s) { out.push_back(s); };

    if (g.max_priority < 2) bad("max_priority must be at least 2");
    if (g.domain.fwd < 0 || g.domain.bwd < 0 || g.codomain.fwd < 0 || g.codomain.bwd < 0)
        bad("boundary counts must be non-negative");

    const int n = g.position_count();
    for (int v = 0; v < n; ++v) {
        if (g.positions[v].priority < 0 || g.positions[v].priority > g.max_priority)
            bad("position " + std::to_string(v) + " has priority " +
                std::to_string(g.positions[v].priority) + " outside 0.." +
                std::to_string(g.max_priority));
    }

    std::vector<int> entry_out(static_cast<std::size_t>(std::max(0, g.entry_count())), 0);
    std::vector<int> exit_in(static_cast<std::size_t>(std::max(0, g.exit_count())), 0);
    for (const auto& [from, to] : g.edges) {
        switch (from.kind) {
        case EndPoint::Kind::Entry:
            if (from.index < 1 || from.index > g.entry_count())
                bad("edge source entry " + std::to_string(from.index) + " out of range");
            else
                ++entry_out[static_cast<std::size_t>(from.index - 1)];
            break;
        case EndPoint::Kind::Pos:
            if (from.index < 0 || from.index >= n)
                bad("edge source position " + std::to_string(from.index) + " undeclared");
            break;
        case EndPoint::Kind::Exit:
            bad("edge source may not be an exit");
            break;
        }
        switch (to.kind) {
        case EndPoint::Kind::Entry:
            bad("edge target may not be an entry");
            break;
        case EndPoint::Kind::Pos:
            if (to.index < 0 || to.index >= n)
                bad("edge target position " + std::to_string(to.index) + " undeclared");
            break;
        case EndPoint::Kind::Exit:
            if (to.index < 1 || to.index > g.exit_count())
                bad("edge target exit " + std::to_string(to.index) + " out of range");
            else
                ++exit_in[static_cast<std::size_t>(to.index - 1)];
            break;
        }
    }
    for (int k = 1; k <= g.entry_count(); ++k)
        if (entry_out[static_cast<std::size_t>(k - 1)] != 1)
            bad("entry " + std::to_string(k) + " has " +
                std::to_string(entry_out[static_cast<std::size_t>(k - 1)]) +
                " outgoing edges, expected exactly 1");
    for (int k = 1; k <= g.exit_count(); ++k)
        if (exit_in[static_cast<std::size_t>(k - 1)] != 1)
            bad("exit " + std::to_string(k) + " has " +
                std::to_string(exit_in[static_cast<std::size_t>(k - 1)]) +
                " incoming edges, expected exactly 1");
    return out;
}

inline void require_valid(const OpenParityGame& g, const std::string& what) {
    auto violations = validate(g);
    if (!violations.empty()) {
        std::string msg = what + " is not a well-formed open parity game:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw InputError(msg);
    }
}

// ---------------------------------------------------------------------------
// helper lookups

/// The unique successor of an entry. Games must be valid.
inline EndPoint entry_target(const OpenParityGame& g, int entry) {
    for (const auto& [from, to] : g.edges)
        if (from == EndPoint::entry(entry)) return to;
    throw InputError("entry " + std::to_string(entry) + " has no outgoing edge");
}

/// Successors of a position, in edge-sorted order (positions first by id,
/// then exits by index).
inline std::vector<EndPoint> successors(const OpenParityGame& g, int pos) {
    std::vector<EndPoint> out;
    for (const auto& [from, to] : g.edges)
        if (from == EndPoint::pos(pos)) out.push_back(to);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// structural games

/// Position-free game wiring entry i to exit i on both layers.
inline OpenParityGame identity_game(Boundary b, int max_priority = 2) {
    OpenParityGame g;
    g.max_priority = max_priority;
    g.domain = b;
    g.codomain = b;
    for (int i = 1; i <= b.fwd + b.bwd; ++i) g.add_edge(EndPoint::entry(i), EndPoint::exit(i));
    g.sort_edges();
    return g;
}

inline OpenParityGame empty_game(int max_priority = 2) {
    OpenParityGame g;
    g.max_priority = max_priority;
    return g;
}

/// The swap over b1 ⊗ b2: exchanges the two blocks of wires on each side.
inline OpenParityGame swap_game(Boundary b1, Boundary b2, int max_priority = 2) {
    OpenParityGame g;
    g.max_priority = max_priority;
    g.domain = b1 + b2;
    g.codomain = Boundary{b2.fwd + b1.fwd, b2.bwd + b1.bwd};
    // forward wires: the b1 block lands after b2's exits and vice versa
    for (int k = 1; k <= b1.fwd; ++k)
        g.add_edge(EndPoint::entry(k), EndPoint::exit(b2.fwd + k));
    for (int k = 1; k <= b2.fwd; ++k)
        g.add_edge(EndPoint::entry(b1.fwd + k), EndPoint::exit(k));
    // backward wires: codomain order is (b2.bwd, b1.bwd), domain order (b1.bwd, b2.bwd)
    const int ein = g.domain.fwd;       // right entries start here
    const int eout = g.codomain.fwd;    // left exits start here
    for (int j = 1; j <= b2.bwd; ++j)
        g.add_edge(EndPoint::entry(ein + j), EndPoint::exit(eout + b1.bwd + j));
    for (int j = 1; j <= b1.bwd; ++j)
        g.add_edge(EndPoint::entry(ein + b2.bwd + j), EndPoint::exit(eout + j));
    g.sort_edges();
    return g;
}

// ---------------------------------------------------------------------------
// composition

namespace detail {

/// Interface point between two composed games: a fwd wire i (exit i of A =
/// left entry i of B) or a bwd wire j (left exit j of B = right entry j of A).
struct IfacePoint {
    bool fwd;
    int index;
    friend auto operator<=>(const IfacePoint&, const IfacePoint&) = default;
};

} // namespace detail

/// Sequential composition A;B per the gluing of interface wires. Edge
/// targets are resolved transitively through the interface, so hairpin
/// chains (entry-to-exit edges inside either game) and multi-crossing
/// paths work; purely internal interface cycles vanish.
inline OpenParityGame compose(const OpenParityGame& A, const OpenParityGame& B) {
    if (!(A.codomain == B.domain))
        throw InputError("compose: codomain (" + std::to_string(A.codomain.fwd) + "," +
                         std::to_string(A.codomain.bwd) + ") of the first game differs from domain (" +
                         std::to_string(B.domain.fwd) + "," + std::to_string(B.domain.bwd) +
                         ") of the second");

    OpenParityGame g;
    g.max_priority = std::max(A.max_priority, B.max_priority);
    g.domain = A.domain;
    g.codomain = B.codomain;
    g.positions = A.positions;
    g.positions.insert(g.positions.end(), B.positions.begin(), B.positions.end());
    const int nA = A.position_count();
    const int ifwd = A.codomain.fwd; // count of fwd interface wires
    const int ibwd = A.codomain.bwd; // count of bwd interface wires

    // Unique continuation of each interface point.
    auto a_entry_target = [&](int e) { return entry_target(A, e); };
    auto b_entry_target = [&](int e) { return entry_target(B, e); };

    // Resolve a raw edge target to a composite endpoint; nullopt when the
    // chain closes into an interface cycle.
    auto resolve = [&](EndPoint t, bool in_A) -> std::optional<EndPoint> {
        std::set<detail::IfacePoint> seen;
        while (true) {
            if (t.kind == EndPoint::Kind::Pos)
                return EndPoint::pos(in_A ? t.index : nA + t.index);
            // t is an exit of the current side
            if (in_A) {
                if (t.index <= ifwd) { // fwd interface wire: continue inside B
                    if (!seen.insert({true, t.index}).second) return std::nullopt;
                    t = b_entry_target(t.index);
                    in_A = false;
                } else { // A's left exit j becomes composite exit after B's right exits
                    return EndPoint::exit(B.codomain.fwd + (t.index - ifwd));
                }
            } else {
                if (t.index <= B.codomain.fwd) { // B's right exit: composite exit
                    return EndPoint::exit(t.index);
                } else { // B's left exit j: bwd interface wire, continue inside A
                    int j = t.index - B.codomain.fwd;
                    if (!seen.insert({false, j}).second) return std::nullopt;
                    t = a_entry_target(A.domain.fwd + j);
                    in_A = true;
                }
            }
        }
    };

    auto add_resolved = [&](EndPoint from, EndPoint raw_to, bool in_A) {
        if (auto to = resolve(raw_to, in_A)) g.add_edge(from, *to);
    };

    for (const auto& [from, to] : A.edges) {
        if (from.kind == EndPoint::Kind::Entry) {
            if (from.index <= A.domain.fwd) // composite left entry
                add_resolved(EndPoint::entry(from.index), to, true);
            // A's right entries are interface wires, consumed by resolution
        } else {
            add_resolved(EndPoint::pos(from.index), to, true);
        }
    }
    for (const auto& [from, to] : B.edges) {
        if (from.kind == EndPoint::Kind::Entry) {
            if (from.index > B.domain.fwd) { // B's right entry j: composite entry
                int j = from.index - B.domain.fwd;
                add_resolved(EndPoint::entry(A.domain.fwd + j), to, false);
            }
        } else {
            add_resolved(EndPoint::pos(nA + from.index), to, false);
        }
    }
    (void)ibwd;
    g.sort_edges();
    return g;
}

// ---------------------------------------------------------------------------
// monoidal product

/// Juxtaposition of two games; boundaries add componentwise and B's boundary
/// indices shift past A's within each of the four index blocks.
inline OpenParityGame tensor(const OpenParityGame& A, const OpenParityGame& B) {
    OpenParityGame g;
    g.max_priority = std::max(A.max_priority, B.max_priority);
    g.domain = A.domain + B.domain;
    g.codomain = A.codomain + B.codomain;
    g.positions = A.positions;
    g.positions.insert(g.positions.end(), B.positions.begin(), B.positions.end());
    const int nA = A.position_count();

    auto map_entry = [&](int e, bool in_A) {
        if (in_A) return e <= A.domain.fwd ? e : g.domain.fwd + (e - A.domain.fwd);
        return e <= B.domain.fwd ? A.domain.fwd + e
                                 : g.domain.fwd + A.codomain.bwd + (e - B.domain.fwd);
    };
    auto map_exit = [&](int x, bool in_A) {
        if (in_A) return x <= A.codomain.fwd ? x : g.codomain.fwd + (x - A.codomain.fwd);
        return x <= B.codomain.fwd ? A.codomain.fwd + x
                                   : g.codomain.fwd + A.domain.bwd + (x - B.codomain.fwd);
    };
    auto map_ep = [&](EndPoint p, bool in_A) {
        switch (p.kind) {
        case EndPoint::Kind::Entry: return EndPoint::entry(map_entry(p.index, in_A));
        case EndPoint::Kind::Pos: return EndPoint::pos(in_A ? p.index : nA + p.index);
        case EndPoint::Kind::Exit: return EndPoint::exit(map_exit(p.index, in_A));
        }
        return p;
    };

    for (const auto& [from, to] : A.edges) g.add_edge(map_ep(from, true), map_ep(to, true));
    for (const auto& [from, to] : B.edges) g.add_edge(map_ep(from, false), map_ep(to, false));
    g.sort_edges();
    return g;
}

// ---------------------------------------------------------------------------
// closing

/// Plug all of A's exits (and feed its codomain-side entries) with env,
/// yielding a closed game whose entries are A's domain-side entries.
inline ClosedParityGame close(const OpenParityGame& A, const OpenParityGame& env) {
    if (A.domain.bwd != 0)
        throw InputError("close: the queried game may not have domain-side exits");
    if (!(env.domain == A.codomain) || !(env.codomain == Boundary{}))
        throw InputError("close: environment must map the game's codomain to (0,0)");
    ClosedParityGame g = compose(A, env);
    if (!g.is_closed()) throw InputError("close: result is not closed");
    return g;
}

} // namespace opg
