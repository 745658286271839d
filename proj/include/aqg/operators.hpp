#pragma once

#include "aqg/field.hpp"
#include "aqg/params.hpp"

namespace aqg {

/// |partial_axis|^sigma: diagonal multiplier |xi_axis|^sigma, with
/// |0|^sigma = 0 for sigma > 0 and 1 for sigma = 0. axis is 1 or 2.
SpectralField fractional_partial(const SpectralField& f, int axis, double sigma);

/// |nabla|^sigma: multiplier |xi|^sigma, zero mode annihilated for sigma > 0.
SpectralField fractional_laplacian(const SpectralField& f, double sigma);

/// True signed derivative d/dx_axis: multiplier i*xi_axis.
SpectralField partial_derivative(const SpectralField& f, int axis);

/// u = (-R2, R1) theta: u1 = -i xi2/|xi| theta, u2 = i xi1/|xi| theta,
/// both zero at xi = 0. Divergence-free by construction.
VelocityField riesz_velocity(const SpectralField& theta);

/// Sharp spectral cutoff to the open ball |xi| < radius.
SpectralField friedrichs_project(const SpectralField& f, double radius);

/// Two-thirds dealiasing mask: zero every mode with |k_i| > n_i/3.
SpectralField two_thirds_mask(const SpectralField& f);
bool inside_two_thirds(const GridSpec& g, int i1, int i2);

/// mu*|xi1|^(2 alpha) + nu*|xi2|^(2 beta); zero exactly at xi = 0.
double dissipation_symbol(double xi1, double xi2, const DissipationParams& p);

/// Same symbol with mu = nu = 1 (the frequency-splitting normalization).
double dissipation_symbol_unweighted(double xi1, double xi2, const DissipationParams& p);

}  // namespace aqg
