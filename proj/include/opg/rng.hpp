#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace opg {

/// Seeded PRNG with explicitly coded bounded sampling. We avoid
/// std::uniform_int_distribution so the same seed yields the same stream on
/// every standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n). n must be positive.
    int below(int n) {
        // rejection sampling to stay unbiased
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<int>(v % un);
    }

    /// Uniform in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(below(static_cast<int>(xs.size())))];
    }

private:
    std::mt19937_64 eng_;
};

} // namespace opg
