#pragma once

#include <complex>
#include <vector>

#include "aqg/grid.hpp"

namespace aqg {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field. Coefficients are series
/// amplitudes: f(x) = sum_k c(k) exp(i xi_k . x), so a constant field has
/// c(0,0) = const and everything else zero. Real-valuedness is maintained
/// as the Hermitian symmetry c(-k) = conj(c(k)); the Nyquist row/column
/// is identically zero.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid_(g), c_(g.size(), Complex{}) {}

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return c_.size(); }

    Complex& operator[](std::size_t i) { return c_[i]; }
    const Complex& operator[](std::size_t i) const { return c_[i]; }

    Complex& at(int i1, int i2) { return c_[static_cast<std::size_t>(i1) * grid_.n2 + i2]; }
    const Complex& at(int i1, int i2) const { return c_[static_cast<std::size_t>(i1) * grid_.n2 + i2]; }

    /// Access by signed mode numbers.
    Complex mode(int k1, int k2) const;
    void set_mode(int k1, int k2, Complex v);

    std::vector<Complex>& coeffs() { return c_; }
    const std::vector<Complex>& coeffs() const { return c_; }

    /// Zero the modes k1 = n1/2 and k2 = n2/2.
    void zero_nyquist();

    /// Exactly re-impose c(-k) = conj(c(k)), averaging conjugate pairs.
    void enforce_hermitian();

    /// Largest |c(k) - conj(c(-k))| over all modes.
    double hermitian_defect() const;

    double max_abs() const;
    bool all_finite() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  private:
    GridSpec grid_;
    std::vector<Complex> c_;
};

/// Velocity components in spectral form; divergence-free by construction
/// when produced by the Riesz transform.
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

}  // namespace aqg
