#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace opg {

/// Raised on malformed input (files, expressions, boundary mismatches).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a computation exceeds one of the configured resource guards.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Knobs shared by the normalisation pipeline and the CLI.
///
/// The guards exist because normalisation may require space exponential in
/// the input game; they abort with ResourceError instead of thrashing.
struct RunConfig {
    int max_priority = 12;                       // M; priorities live in {0..M}
    std::size_t term_node_guard = 1'000'000;     // max term nodes built per translation
    std::size_t arena_state_guard = 250'000;     // max states of a loop-elimination arena
    std::size_t antichain_universe_cap = 24;     // max outcome universe per loop elimination
    std::uint64_t seed = 0;

    void check() const {
        if (max_priority < 2)
            throw InputError("max_priority must be at least 2, got " + std::to_string(max_priority));
    }
};

/// OPG_GUARD_BYTES, when set, rescales the size guards (approximating 64
/// bytes per node/state).
inline RunConfig apply_env_guards(RunConfig cfg) {
    if (const char* env = std::getenv("OPG_GUARD_BYTES")) {
        char* end = nullptr;
        unsigned long long bytes = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw InputError(std::string("OPG_GUARD_BYTES is not an integer: ") + env);
        cfg.term_node_guard = static_cast<std::size_t>(bytes / 64);
        cfg.arena_state_guard = static_cast<std::size_t>(bytes / 64);
    }
    return cfg;
}

} // namespace opg
