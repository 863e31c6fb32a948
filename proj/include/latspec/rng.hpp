#pragma once

#include "latspec/rational.hpp"

#include <cstdint>

namespace latspec::rng {

// Counter-based generator "splitmix64-ctr-v1": value(seed, k) applies the
// splitmix64 finalizer to seed + (k+1)*kGamma.  All Monte Carlo output is a
// pure function of (seed, counter), bit-reproducible across platforms.
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
constexpr const char* kVersion = "splitmix64-ctr-v1";

// substream tags, xor-folded into the seed
constexpr std::uint64_t kStreamPotential = 0x706f74656e746961ULL;

inline std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + (counter + 1) * kGamma);
}

/// uniform double in [0, 1), 53 mantissa bits
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(at(seed, counter) >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::uint64_t seed, std::uint64_t counter, double p) {
    return uniform01(seed, counter) < p;
}

/// small random rational with numerator in [-9,9] and denominator in [1,9]
inline Rat small_rational(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t w = at(seed, counter);
    long num = static_cast<long>(w % 19) - 9;
    long den = static_cast<long>((w >> 32) % 9) + 1;
    return rat(num, den);
}

}  // namespace latspec::rng
