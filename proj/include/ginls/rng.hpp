#pragma once

#include <cstdint>

namespace ginls {

// Counter-based generator: a fixed 64-bit mix applied to (seed, counter).
// Stateless, so corpora are reproducible no matter how work is scheduled.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed ^ mix64(counter));
}

// Uniform in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(rng_at(seed, counter) >> 11) * 0x1.0p-53;
}

// Uniform in [-1, 1).
inline double uniform_pm(std::uint64_t seed, std::uint64_t counter) {
    return 2.0 * uniform01(seed, counter) - 1.0;
}

}  // namespace ginls
