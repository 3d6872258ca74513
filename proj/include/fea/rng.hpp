#pragma once

#include <cstdint>
#include <random>

namespace fea {

/// Deterministic random source for simulation runs.
///
/// Wraps std::mt19937_64 but derives all variates directly from raw engine
/// output, so a given seed produces the same stream on every platform and
/// standard library (std::*_distribution makes no such guarantee).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, bound); bound must be positive.
    int uniform_int(int bound) {
        const auto span = static_cast<std::uint64_t>(bound);
        const std::uint64_t threshold = (0 - span) % span; // 2^64 mod span
        std::uint64_t v = engine_();
        while (v < threshold) v = engine_();
        return static_cast<int>(v % span);
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace detail

/// Per-run seed for run `index` of a multi-run experiment seeded by `master`.
/// splitmix64 applied twice keeps nearby (master, index) pairs uncorrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return detail::splitmix64(detail::splitmix64(master) + index);
}

} // namespace fea
