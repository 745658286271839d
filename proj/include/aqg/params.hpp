#pragma once

#include <stdexcept>

namespace aqg {

/// Anisotropic dissipation exponents and strengths. The dissipation acts
/// with symbol mu*|xi1|^(2*alpha) + nu*|xi2|^(2*beta).
struct DissipationParams {
    double alpha = 0.5;
    double beta = 0.5;
    double mu = 1.0;
    double nu = 1.0;

    DissipationParams() = default;
    DissipationParams(double alpha_, double beta_, double mu_ = 1.0, double nu_ = 1.0)
        : alpha(alpha_), beta(beta_), mu(mu_), nu(nu_) {
        if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
            throw std::invalid_argument("dissipation exponents must lie in (0,1)");
        if (!(mu > 0.0) || !(nu > 0.0))
            throw std::invalid_argument("dissipation strengths must be positive");
    }

    bool operator==(const DissipationParams&) const = default;
};

/// Selects a Sobolev norm: inhomogeneous weight (1+|xi|^2)^s or, with
/// homogeneous = true, |xi|^(2s) with the zero mode skipped.
struct SobolevIndex {
    double s = 0.0;
    bool homogeneous = false;
};

}  // namespace aqg
