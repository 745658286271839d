#include "aqg/field.hpp"

#include <cmath>
#include <stdexcept>

namespace aqg {

namespace {

std::size_t checked_index(const GridSpec& g, int k1, int k2) {
    if (k1 <= -g.n1 / 2 || k1 > g.n1 / 2 || k2 <= -g.n2 / 2 || k2 > g.n2 / 2)
        throw std::out_of_range("mode outside representable band");
    int i1 = GridSpec::index_of_mode(k1, g.n1);
    int i2 = GridSpec::index_of_mode(k2, g.n2);
    return static_cast<std::size_t>(i1) * g.n2 + i2;
}

}  // namespace

Complex SpectralField::mode(int k1, int k2) const {
    return c_[checked_index(grid_, k1, k2)];
}

void SpectralField::set_mode(int k1, int k2, Complex v) {
    c_[checked_index(grid_, k1, k2)] = v;
}

void SpectralField::zero_nyquist() {
    const int n1 = grid_.n1, n2 = grid_.n2;
    for (int i2 = 0; i2 < n2; ++i2) at(n1 / 2, i2) = Complex{};
    for (int i1 = 0; i1 < n1; ++i1) at(i1, n2 / 2) = Complex{};
}

void SpectralField::enforce_hermitian() {
    const int n1 = grid_.n1, n2 = grid_.n2;
    for (int i1 = 0; i1 < n1; ++i1) {
        const int j1 = (n1 - i1) % n1;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = (n2 - i2) % n2;
            const std::size_t a = static_cast<std::size_t>(i1) * n2 + i2;
            const std::size_t b = static_cast<std::size_t>(j1) * n2 + j2;
            if (a < b) {
                const Complex avg = 0.5 * (c_[a] + std::conj(c_[b]));
                c_[a] = avg;
                c_[b] = std::conj(avg);
            } else if (a == b) {
                c_[a] = Complex{c_[a].real(), 0.0};
            }
        }
    }
}

double SpectralField::hermitian_defect() const {
    const int n1 = grid_.n1, n2 = grid_.n2;
    double worst = 0.0;
    for (int i1 = 0; i1 < n1; ++i1) {
        const int j1 = (n1 - i1) % n1;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int j2 = (n2 - i2) % n2;
            const Complex d = at(i1, i2) - std::conj(at(j1, j2));
            worst = std::max(worst, std::norm(d));
        }
    }
    return std::sqrt(worst);
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::norm(v));
    return std::sqrt(m);
}

bool SpectralField::all_finite() const {
    for (const auto& v : c_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& v : c_) v *= a;
    return *this;
}

}  // namespace aqg
