#pragma once

#include "aqg/field.hpp"
#include "aqg/params.hpp"

namespace aqg {

/// Weighted spectral norm sqrt( sum_k w(xi_k) |c(k)|^2 * l1*l2 ) with
/// w = (1+|xi|^2)^s or |xi|^(2s); the homogeneous variant skips xi = 0.
/// The area factor makes analytic values exact: ||cos x1||_{L2}^2 = 2 pi^2
/// on the 2pi x 2pi box.
double sobolev_norm(const SpectralField& f, SobolevIndex idx);

double l2_norm(const SpectralField& f);

/// L2 inner product sum_k Re(f(k) conj(g(k))) * l1*l2.
double l2_inner(const SpectralField& f, const SpectralField& g);

/// L2 norm evaluated by grid quadrature, sqrt(area * mean(f^2)).
double l2_norm_physical(const RealField& f);

/// Lp norm by grid quadrature, (area * mean |f|^p)^(1/p).
double lp_norm_physical(const RealField& f, double p);

}  // namespace aqg
