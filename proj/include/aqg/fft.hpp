#pragma once

#include <span>

#include "aqg/field.hpp"
#include "aqg/grid.hpp"

namespace aqg {

/// Discrete transform to series amplitudes (DFT scaled by 1/(n1*n2)).
/// The result is exactly Hermitian-symmetric with zeroed Nyquist modes.
SpectralField forward_transform(const RealField& f);
SpectralField forward_transform(const GridSpec& g, std::span<const double> values);

/// Inverse transform back to collocation values. Requires Hermitian
/// symmetry within 1e-12 of the largest coefficient; the imaginary
/// residue of the reconstruction is checked against the same tolerance
/// and discarded.
RealField inverse_transform(const SpectralField& f);

namespace detail {
/// Inverse transform without the symmetry and residue checks, for fields
/// that are symmetric by construction (internal hot paths).
RealField inverse_transform_unchecked(const SpectralField& f);
}  // namespace detail

}  // namespace aqg
