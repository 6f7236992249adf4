#pragma once

#include <cstdint>

namespace ibody {

// SplitMix64 finalizer. Counter-based use (hash of seed ^ hash of counter)
// makes random streams splittable and platform-stable, so seeded runs are
// reproducible byte-for-byte everywhere.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed ^ mix64(counter));
}

// Sequential convenience wrapper over the counter form.
struct Rng {
    std::uint64_t seed;
    std::uint64_t n = 0;

    explicit Rng(std::uint64_t s) : seed(s) {}

    std::uint64_t next() { return counter_rng(seed, n++); }

    // Uniform-ish integer in [lo, hi], hi >= lo. The modulo bias is
    // irrelevant at the ranges used here.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(
                        next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace ibody
