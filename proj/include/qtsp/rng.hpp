#pragma once

#include <cstdint>
#include <random>

namespace qtsp {

/// Deterministic uniform double in [0, 1) built from the top 53 bits of one
/// mt19937_64 draw. Used instead of std::uniform_real_distribution so that
/// identical seeds produce byte-identical output on every platform and
/// standard library.
[[nodiscard]] inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0); // 2^-53
}

/// Uniform double in [a, b) from one RNG draw; deterministic per seed.
[[nodiscard]] inline double uniform_in(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * uniform_unit(rng);
}

/// Uniform integer in [0, m) without modulo bias (rejection sampling on the
/// top of the 64-bit range); deterministic per seed.
[[nodiscard]] inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t m) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % m;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % m;
}

} // namespace qtsp
