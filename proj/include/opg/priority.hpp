#pragma once

#include <algorithm>

namespace opg {

/// Priorities are integers in {0..M}. M travels in RunConfig / the game.
using Priority = int;

/// Rank of a priority in the parity order: odd priorities are bad for
/// Player 0 (the worse, the larger), even ones good (the better, the
/// larger). Yields the total order ... 5 < 3 < 1 < 0 < 2 < 4 ...
constexpr int parity_rank(Priority k) {
    return (k % 2 == 0) ? k : -k;
}

/// k ⊑ k2: recording k2 is at least as favourable for Player 0 as
/// recording k, whatever the remaining play contributes.
constexpr bool priority_leq(Priority k, Priority k2) {
    return parity_rank(k) <= parity_rank(k2);
}

/// The less favourable of two priorities recorded at the same exit.
constexpr Priority priority_min(Priority a, Priority b) {
    return priority_leq(a, b) ? a : b;
}

} // namespace opg
