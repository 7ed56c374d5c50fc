#pragma once

#include <cstdint>
#include <random>

namespace gossip {

// SplitMix64 finalizer. Fixed and published: changing it changes every
// per-trial seed derived by the harness.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of trial `trial_index` in a sweep driven by `master_seed`.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return mix64(mix64(master_seed) ^ mix64(trial_index + 0x632be59bd9b4e019ULL));
}

/// One deterministic 64-bit stream per trial.
///
/// `below(k)` uses Lemire's multiply-shift with rejection instead of
/// std::uniform_int_distribution, whose output is implementation-defined;
/// traces are then identical across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace gossip
