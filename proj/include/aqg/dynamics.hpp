#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "aqg/field.hpp"
#include "aqg/params.hpp"

namespace aqg {

enum class Scheme { IntegratingFactorRk4 };
enum class Dealias { TwoThirds, None };
enum class Nonlinearity { Full, Masked };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::IntegratingFactorRk4;
    Dealias dealias = Dealias::TwoThirds;
    Nonlinearity nonlinearity = Nonlinearity::Full;

    bool operator==(const StepperConfig&) const = default;
};

/// Spectral truncation level: cutoff radius in |xi| units, or no
/// truncation beyond the grid.
struct GalerkinLevel {
    std::optional<double> radius;

    static GalerkinLevel full() { return {}; }
    static GalerkinLevel truncated(double r) { return {r}; }
    bool is_full() const { return !radius.has_value(); }

    bool operator==(const GalerkinLevel&) const = default;
};

struct TrajectoryState {
    double t = 0.0;
    SpectralField theta;
};

struct PlaneWave {
    int k1 = 1, k2 = 0;
    double amplitude = 1.0;

    bool operator==(const PlaneWave&) const = default;
};

struct RandomBandlimited {
    std::uint64_t seed = 1;
    double shell_min = 1.0, shell_max = 4.0;
    double amplitude = 1.0;

    bool operator==(const RandomBandlimited&) const = default;
};

struct GaussianBump {
    double width = 0.5;
    double amplitude = 1.0;

    bool operator==(const GaussianBump&) const = default;
};

enum class Normalize { None, L2, Hs, HsHom };

/// Mean-zero initial datum described in spectral space, optionally
/// rescaled so a chosen norm hits a target value.
struct InitialData {
    std::variant<PlaneWave, RandomBandlimited, GaussianBump> kind = PlaneWave{};
    Normalize normalize = Normalize::None;
    double normalize_s = 0.0;
    double target = 0.0;

    bool operator==(const InitialData&) const = default;
};

SpectralField make_initial_data(const GridSpec& g, const InitialData& init);

/// Advection term u_theta . grad theta, pseudo-spectral: velocity and
/// gradient to collocation space, pointwise product, back. With dealiasing
/// the two-thirds mask is applied to the input and to the product, which
/// makes the retained convolution exact and restores <u.grad theta, theta> = 0
/// to roundoff. The zero mode vanishes identically and is kept exact.
SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias);

/// Same quantity as div(u theta), using that u is divergence-free.
SpectralField nonlinear_term_divergence(const SpectralField& theta, Dealias dealias);

/// -J_n(u.grad theta) - mu |d1|^(2 alpha) theta - nu |d2|^(2 beta) theta.
/// Expects J_n theta = theta when the level is finite; the output then
/// satisfies the same truncation.
SpectralField galerkin_rhs(const TrajectoryState& state, const DissipationParams& p,
                           const GalerkinLevel& level, Dealias dealias);

/// Advances trajectories with integrating-factor RK4: the dissipation
/// semigroup exp(-t A(xi)) is applied exactly, classical RK4 handles the
/// transformed nonlinearity. Precomputes the semigroup tables once.
class Stepper {
  public:
    Stepper(const GridSpec& g, const DissipationParams& p, const StepperConfig& cfg,
            const GalerkinLevel& level = GalerkinLevel::full());

    /// One step of size dt. Throws BlowupError on non-finite output.
    TrajectoryState step(const TrajectoryState& state) const;

    const StepperConfig& config() const { return cfg_; }

  private:
    SpectralField nonlinear(const SpectralField& theta) const;
    SpectralField apply_table(const std::vector<double>& table, const SpectralField& f) const;

    GridSpec grid_;
    DissipationParams params_;
    StepperConfig cfg_;
    GalerkinLevel level_;
    std::vector<double> e_half_, e_full_;
};

/// Convenience single-step entry point (constructs the semigroup tables
/// on every call; use Stepper for loops).
TrajectoryState step(const TrajectoryState& state, const DissipationParams& p,
                     const StepperConfig& cfg, const GalerkinLevel& level = GalerkinLevel::full());

struct SplitInitialData {
    double radius = 0.0;
    SpectralField low;
    SpectralField high;
};

/// Smallest grid shell radius N with || theta0 - J_N theta0 ||_{Hhom^s} < eps.
/// low + high reproduces theta0 exactly.
SplitInitialData split_initial_data(const SpectralField& theta0, double eps, double s);

struct GapSeries {
    std::vector<double> t;
    std::vector<double> gap;       // || theta1 - theta2 ||_{L2}
    std::vector<double> gronwall;  // cumulative int of 1 + |||grad|^a theta2||^2_{Hhom^(2-2a)}
};

/// Co-evolves two trajectories with identical stepping and records the L2
/// gap each step, together with the Gronwall integrand of the second
/// trajectory for stability-envelope fits.
GapSeries two_trajectory_gap(const SpectralField& theta1_0, const SpectralField& theta2_0,
                             const DissipationParams& p, const StepperConfig& cfg, double t_end);

}  // namespace aqg
