#pragma once

// Small deterministic RNG for reproducible sweeps.  Sample k of a seeded
// campaign is generated from split_seed(seed, k), so results do not
// depend on evaluation order or thread count, and output is identical
// across platforms (no implementation-defined distributions).

#include <cstdint>

namespace tubedist {

// splitmix64 (Vigna); passes BigCrush, two multiplies and shifts per draw.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// Decorrelated per-index stream seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return mix.next();
}

}  // namespace tubedist
