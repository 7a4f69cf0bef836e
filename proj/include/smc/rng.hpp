#pragma once

#include <cstdint>

namespace smc {

/// SplitMix64: tiny deterministic generator with identical output on every
/// platform (no library distribution involved). Used to seed and drive the
/// sampling sweeps and witness-search restarts.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Decorrelated per-stream seed so stream `index` yields the same sequence
/// whether streams run serially or across threads.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    mix.next();
    return mix.next();
}

}  // namespace smc
