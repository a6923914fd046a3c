#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace llec {

// All library randomness goes through mt19937_64 plus the helpers below.
// The standard distributions are implementation-defined, these are not, so
// seeded output is identical across standard libraries.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), unbiased (rejection sampling).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n)
{
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = rng();
    while (r >= limit)
        r = rng();
    return r % n;
}

/// Standard normal deviate (Box-Muller, one value per call).
inline double standard_normal(Rng& rng)
{
    double u1 = uniform01(rng);
    while (u1 <= 0.0)
        u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace llec
