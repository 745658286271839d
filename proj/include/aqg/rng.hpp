#pragma once

#include <cstdint>

#include "aqg/field.hpp"
#include "aqg/grid.hpp"

namespace aqg {

/// splitmix64 step; the workhorse behind all mode-keyed randomness.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Complex Gaussian draw keyed by (seed, k1, k2). The same mode always
/// receives the same draw, independent of grid size or traversal order.
Complex mode_noise(std::uint64_t seed, int k1, int k2);

/// Real field with independent Gaussian coefficients on every representable
/// mode with kmin <= sqrt(k1^2+k2^2) <= kmax (integer mode units), mean
/// zero, rescaled so ||f||_{L2} = amplitude. Coefficients of shared modes
/// are identical across grid sizes for a fixed seed.
SpectralField random_bandlimited_field(const GridSpec& g, std::uint64_t seed,
                                       double kmin, double kmax, double amplitude);

}  // namespace aqg
