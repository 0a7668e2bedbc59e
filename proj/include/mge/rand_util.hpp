#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace mge::detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Unbiased draw from [0, n). std::uniform_int_distribution is
// implementation-defined, which would break seed reproducibility across
// standard libraries; this is not.
inline std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

// Independent per-task engine so that work split across threads still
// produces identical results for a given top-level seed.
inline std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(task + 1)));
}

}  // namespace mge::detail
