#pragma once

#include <cstddef>
#include <vector>

namespace aqg {

/// Rectangular periodic grid. n1 x n2 collocation points on a box of
/// periods (l1, l2); the spectral side indexes signed integer modes
/// k_i in {-n_i/2+1, ..., n_i/2} with physical wavenumber xi_i = 2*pi*k_i/l_i.
/// The asymmetric Nyquist modes k_i = n_i/2 are kept identically zero.
struct GridSpec {
    int n1 = 0;
    int n2 = 0;
    double l1 = 0.0;
    double l2 = 0.0;

    GridSpec() = default;
    GridSpec(int n1_, int n2_, double l1_, double l2_);

    std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }
    double area() const { return l1 * l2; }

    /// Signed mode number for storage index i along an axis of n points.
    static int mode_of_index(int i, int n) { return i <= n / 2 ? i : i - n; }
    /// Storage index for a signed mode number.
    static int index_of_mode(int k, int n) { return k >= 0 ? k : k + n; }

    int k1(int i1) const { return mode_of_index(i1, n1); }
    int k2(int i2) const { return mode_of_index(i2, n2); }

    /// Physical wavenumbers xi_i = 2*pi*k_i / l_i.
    double xi1(int i1) const;
    double xi2(int i2) const;

    /// Largest |xi| representable after Nyquist zeroing.
    double max_abs_xi() const;

    /// Collocation point coordinates, x_i = l_i * index / n_i.
    double x1(int i1) const { return l1 * i1 / n1; }
    double x2(int i2) const { return l2 * i2 / n2; }

    bool operator==(const GridSpec&) const = default;
};

/// Field sampled at the collocation points, row-major with x2 fastest.
struct RealField {
    GridSpec grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}

    double& operator()(int i1, int i2) { return values[static_cast<std::size_t>(i1) * grid.n2 + i2]; }
    double operator()(int i1, int i2) const { return values[static_cast<std::size_t>(i1) * grid.n2 + i2]; }
};

}  // namespace aqg
