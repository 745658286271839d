#include "aqg/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aqg {

GridSpec::GridSpec(int n1_, int n2_, double l1_, double l2_)
    : n1(n1_), n2(n2_), l1(l1_), l2(l2_) {
    if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0)
        throw std::invalid_argument("grid sizes must be even and >= 8, got " +
                                    std::to_string(n1) + "x" + std::to_string(n2));
    if (!(l1 > 0.0) || !(l2 > 0.0))
        throw std::invalid_argument("grid periods must be positive");
}

double GridSpec::xi1(int i1) const {
    return 2.0 * std::numbers::pi * k1(i1) / l1;
}

double GridSpec::xi2(int i2) const {
    return 2.0 * std::numbers::pi * k2(i2) / l2;
}

double GridSpec::max_abs_xi() const {
    // Nyquist is zeroed, so the extreme band is k_i = n_i/2 - 1.
    double a = 2.0 * std::numbers::pi * (n1 / 2 - 1) / l1;
    double b = 2.0 * std::numbers::pi * (n2 / 2 - 1) / l2;
    return std::hypot(a, b);
}

}  // namespace aqg
