#include "aqg/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aqg {

Complex mode_noise(std::uint64_t seed, int k1, int k2) {
    std::uint64_t s = seed;
    s ^= 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(k1));
    splitmix64(s);
    s ^= 0xC2B2AE3D27D4EB4FULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(k2));
    splitmix64(s);
    const double u1 = uniform01(splitmix64(s));
    const double u2 = uniform01(splitmix64(s));
    // Box-Muller; clamp away from 0 to keep the log finite.
    const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
    const double phi = 2.0 * std::numbers::pi * u2;
    return Complex{r * std::cos(phi), r * std::sin(phi)};
}

SpectralField random_bandlimited_field(const GridSpec& g, std::uint64_t seed,
                                       double kmin, double kmax, double amplitude) {
    if (!(kmin >= 0.0) || !(kmax >= kmin))
        throw std::invalid_argument("need 0 <= kmin <= kmax");
    const int b1 = g.n1 / 2 - 1, b2 = g.n2 / 2 - 1;
    const int reach = static_cast<int>(std::floor(kmax));

    SpectralField f(g);
    // Traverse the upper half-plane in a grid-independent order so shared
    // modes (and the normalization sum) match across grid sizes.
    double sumsq = 0.0;
    for (int k1 = 0; k1 <= std::min(reach, b1); ++k1) {
        const int lo = (k1 == 0) ? 1 : -std::min(reach, b2);
        for (int k2 = lo; k2 <= std::min(reach, b2); ++k2) {
            const double r = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            if (r < kmin || r > kmax || r == 0.0) continue;
            const Complex c = mode_noise(seed, k1, k2);
            f.set_mode(k1, k2, c);
            f.set_mode(-k1, -k2, std::conj(c));
            sumsq += 2.0 * std::norm(c);
        }
    }
    if (sumsq == 0.0) return f;  // empty band

    const double norm = std::sqrt(sumsq * g.area());
    const double scale = amplitude / norm;
    for (auto& v : f.coeffs()) v *= scale;
    return f;
}

}  // namespace aqg
