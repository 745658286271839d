"""Spectral toolkit for the 2D anisotropic quasi-geostrophic equation.

Thin wrapper over the C++ core: grids, transforms, Fourier-multiplier
operators, Sobolev norms, the integrating-factor stepper and the
frequency-splitting diagnostics. Coefficient arrays are complex (n1, n2)
ndarrays in FFT index order; collocation arrays are real (n1, n2).
"""

from ._aqglab import (
    DissipationParams,
    Grid,
    Stepper,
    classify_region,
    critical_exponent,
    dissipation_symbol,
    forward,
    fractional_laplacian,
    fractional_partial,
    frequency_split,
    friedrichs_project,
    inverse,
    nonlinear_term,
    random_field,
    riesz_velocity,
    sobolev_norm,
    split_initial_data,
    symbol_bound_ratio,
    two_thirds_mask,
)

__all__ = [
    "DissipationParams",
    "Grid",
    "Stepper",
    "classify_region",
    "critical_exponent",
    "dissipation_symbol",
    "forward",
    "fractional_laplacian",
    "fractional_partial",
    "frequency_split",
    "friedrichs_project",
    "inverse",
    "nonlinear_term",
    "random_field",
    "riesz_velocity",
    "sobolev_norm",
    "split_initial_data",
    "symbol_bound_ratio",
    "two_thirds_mask",
]

__version__ = "0.1.0"
