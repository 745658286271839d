#include "aqg/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace aqg {

namespace {

// |x|^sigma with the 0^0 = 1 convention.
inline double abs_pow(double x, double sigma) {
    if (sigma == 0.0) return 1.0;
    const double a = std::abs(x);
    return a == 0.0 ? 0.0 : std::pow(a, sigma);
}

}  // namespace

SpectralField fractional_partial(const SpectralField& f, int axis, double sigma) {
    if (sigma < 0.0) throw std::domain_error("fractional order must be >= 0");
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    const GridSpec& g = f.grid();
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double xi = axis == 1 ? g.xi1(i1) : g.xi2(i2);
            out.at(i1, i2) = abs_pow(xi, sigma) * f.at(i1, i2);
        }
    }
    return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double sigma) {
    if (sigma < 0.0) throw std::domain_error("fractional order must be >= 0");
    const GridSpec& g = f.grid();
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double r = std::hypot(g.xi1(i1), g.xi2(i2));
            out.at(i1, i2) = abs_pow(r, sigma) * f.at(i1, i2);
        }
    }
    return out;
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    const GridSpec& g = f.grid();
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double xi = axis == 1 ? g.xi1(i1) : g.xi2(i2);
            out.at(i1, i2) = Complex{0.0, xi} * f.at(i1, i2);
        }
    }
    return out;
}

VelocityField riesz_velocity(const SpectralField& theta) {
    const GridSpec& g = theta.grid();
    VelocityField u{SpectralField(g), SpectralField(g)};
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r = std::hypot(x1, x2);
            if (r == 0.0) continue;  // velocity of the mean is defined as 0
            const Complex t = theta.at(i1, i2);
            u.u1.at(i1, i2) = Complex{0.0, -x2 / r} * t;
            u.u2.at(i1, i2) = Complex{0.0, x1 / r} * t;
        }
    }
    return u;
}

SpectralField friedrichs_project(const SpectralField& f, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("projection radius must be positive");
    const GridSpec& g = f.grid();
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double r = std::hypot(g.xi1(i1), g.xi2(i2));
            if (r < radius) out.at(i1, i2) = f.at(i1, i2);
        }
    }
    return out;
}

bool inside_two_thirds(const GridSpec& g, int i1, int i2) {
    return std::abs(g.k1(i1)) <= g.n1 / 3 && std::abs(g.k2(i2)) <= g.n2 / 3;
}

SpectralField two_thirds_mask(const SpectralField& f) {
    const GridSpec& g = f.grid();
    SpectralField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (inside_two_thirds(g, i1, i2)) out.at(i1, i2) = f.at(i1, i2);
    return out;
}

double dissipation_symbol(double xi1, double xi2, const DissipationParams& p) {
    return p.mu * abs_pow(xi1, 2.0 * p.alpha) + p.nu * abs_pow(xi2, 2.0 * p.beta);
}

double dissipation_symbol_unweighted(double xi1, double xi2, const DissipationParams& p) {
    return abs_pow(xi1, 2.0 * p.alpha) + abs_pow(xi2, 2.0 * p.beta);
}

}  // namespace aqg
