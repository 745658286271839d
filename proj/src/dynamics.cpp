#include "aqg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "aqg/errors.hpp"
#include "aqg/fft.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"
#include "aqg/rng.hpp"

namespace aqg {

namespace {

SpectralField plane_wave_field(const GridSpec& g, const PlaneWave& pw) {
    if (pw.k1 == 0 && pw.k2 == 0)
        throw std::invalid_argument("plane-wave mode must be nonzero (mean-zero data)");
    if (std::abs(pw.k1) > g.n1 / 2 - 1 || std::abs(pw.k2) > g.n2 / 2 - 1)
        throw std::invalid_argument("plane-wave mode outside representable band");
    SpectralField f(g);
    f.set_mode(pw.k1, pw.k2, Complex{0.5 * pw.amplitude, 0.0});
    f.set_mode(-pw.k1, -pw.k2, Complex{0.5 * pw.amplitude, 0.0});
    return f;
}

SpectralField gaussian_bump_field(const GridSpec& g, const GaussianBump& gb) {
    if (!(gb.width > 0.0)) throw std::invalid_argument("bump width must be positive");
    RealField phys(g);
    const double c1 = 0.5 * g.l1, c2 = 0.5 * g.l2;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double dx = g.x1(i1) - c1, dy = g.x2(i2) - c2;
            phys(i1, i2) = gb.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * gb.width * gb.width));
        }
    }
    SpectralField f = forward_transform(phys);
    f.set_mode(0, 0, Complex{});
    return f;
}

}  // namespace

SpectralField make_initial_data(const GridSpec& g, const InitialData& init) {
    SpectralField f = std::visit(
        [&](const auto& kind) -> SpectralField {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, PlaneWave>) {
                return plane_wave_field(g, kind);
            } else if constexpr (std::is_same_v<T, RandomBandlimited>) {
                return random_bandlimited_field(g, kind.seed, kind.shell_min, kind.shell_max,
                                                kind.amplitude);
            } else {
                return gaussian_bump_field(g, kind);
            }
        },
        init.kind);

    if (init.normalize != Normalize::None) {
        double norm;
        switch (init.normalize) {
            case Normalize::L2: norm = l2_norm(f); break;
            case Normalize::Hs: norm = sobolev_norm(f, {init.normalize_s, false}); break;
            default: norm = sobolev_norm(f, {init.normalize_s, true}); break;
        }
        if (norm == 0.0) throw std::invalid_argument("cannot normalize a zero field");
        f *= init.target / norm;
    }
    return f;
}

SpectralField nonlinear_term(const SpectralField& theta, Dealias dealias) {
    const GridSpec& g = theta.grid();
    const bool mask = dealias == Dealias::TwoThirds;
    const SpectralField th = mask ? two_thirds_mask(theta) : theta;

    VelocityField u = riesz_velocity(th);
    const RealField u1 = detail::inverse_transform_unchecked(u.u1);
    const RealField u2 = detail::inverse_transform_unchecked(u.u2);
    const RealField g1 = detail::inverse_transform_unchecked(partial_derivative(th, 1));
    const RealField g2 = detail::inverse_transform_unchecked(partial_derivative(th, 2));

    RealField prod(g);
    for (std::size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = u1.values[i] * g1.values[i] + u2.values[i] * g2.values[i];

    SpectralField out = forward_transform(prod);
    if (mask) out = two_thirds_mask(out);
    // u.grad theta integrates to zero; its mean mode is identically zero.
    out.set_mode(0, 0, Complex{});
    return out;
}

SpectralField nonlinear_term_divergence(const SpectralField& theta, Dealias dealias) {
    const GridSpec& g = theta.grid();
    const bool mask = dealias == Dealias::TwoThirds;
    const SpectralField th = mask ? two_thirds_mask(theta) : theta;

    VelocityField u = riesz_velocity(th);
    const RealField u1 = detail::inverse_transform_unchecked(u.u1);
    const RealField u2 = detail::inverse_transform_unchecked(u.u2);
    const RealField tp = detail::inverse_transform_unchecked(th);

    RealField f1(g), f2(g);
    for (std::size_t i = 0; i < tp.values.size(); ++i) {
        f1.values[i] = u1.values[i] * tp.values[i];
        f2.values[i] = u2.values[i] * tp.values[i];
    }
    SpectralField out = partial_derivative(forward_transform(f1), 1);
    out += partial_derivative(forward_transform(f2), 2);
    if (mask) out = two_thirds_mask(out);
    return out;
}

SpectralField galerkin_rhs(const TrajectoryState& state, const DissipationParams& p,
                           const GalerkinLevel& level, Dealias dealias) {
    const GridSpec& g = state.theta.grid();
    SpectralField nl = nonlinear_term(state.theta, dealias);
    if (!level.is_full()) nl = friedrichs_project(nl, *level.radius);

    SpectralField rhs(g);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double a = dissipation_symbol(g.xi1(i1), g.xi2(i2), p);
            rhs.at(i1, i2) = -nl.at(i1, i2) - a * state.theta.at(i1, i2);
        }
    }
    return rhs;
}

Stepper::Stepper(const GridSpec& g, const DissipationParams& p, const StepperConfig& cfg,
                 const GalerkinLevel& level)
    : grid_(g), params_(p), cfg_(cfg), level_(level) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!level.is_full() && !(*level.radius > 0.0 && *level.radius <= g.max_abs_xi()))
        throw std::invalid_argument("galerkin radius outside representable band");
    e_half_.resize(g.size());
    e_full_.resize(g.size());
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double a = dissipation_symbol(g.xi1(i1), g.xi2(i2), p);
            const std::size_t idx = static_cast<std::size_t>(i1) * g.n2 + i2;
            e_half_[idx] = std::exp(-0.5 * cfg.dt * a);
            e_full_[idx] = std::exp(-cfg.dt * a);
        }
    }
}

SpectralField Stepper::apply_table(const std::vector<double>& table, const SpectralField& f) const {
    SpectralField out = f;
    auto& c = out.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= table[i];
    return out;
}

SpectralField Stepper::nonlinear(const SpectralField& theta) const {
    if (cfg_.nonlinearity == Nonlinearity::Masked) return SpectralField(grid_);
    SpectralField nl = nonlinear_term(theta, cfg_.dealias);
    if (!level_.is_full()) nl = friedrichs_project(nl, *level_.radius);
    return -1.0 * nl;
}

TrajectoryState Stepper::step(const TrajectoryState& state) const {
    const double dt = cfg_.dt;
    const SpectralField& th = state.theta;

    const SpectralField k1 = nonlinear(th);
    const SpectralField k2 = nonlinear(apply_table(e_half_, th + (0.5 * dt) * k1));
    const SpectralField k3 = nonlinear(apply_table(e_half_, th) + (0.5 * dt) * k2);
    const SpectralField k4 = nonlinear(apply_table(e_full_, th) + dt * apply_table(e_half_, k3));

    SpectralField next = apply_table(e_full_, th);
    next += (dt / 6.0) * (apply_table(e_full_, k1) + 2.0 * apply_table(e_half_, k2 + k3) + k4);
    next.enforce_hermitian();

    const double t_next = state.t + dt;
    if (!next.all_finite())
        throw BlowupError(t_next, "non-finite coefficients at t = " + std::to_string(t_next));
    return {t_next, std::move(next)};
}

TrajectoryState step(const TrajectoryState& state, const DissipationParams& p,
                     const StepperConfig& cfg, const GalerkinLevel& level) {
    return Stepper(state.theta.grid(), p, cfg, level).step(state);
}

SplitInitialData split_initial_data(const SpectralField& theta0, double eps, double s) {
    if (!(eps > 0.0)) throw std::invalid_argument("split tolerance must be positive");
    const GridSpec& g = theta0.grid();

    // Shell radii and Hhom^s weights of every mode, sorted by radius.
    struct ModeWeight {
        double r;
        double contrib;
    };
    std::vector<ModeWeight> modes;
    modes.reserve(g.size());
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            modes.push_back({std::sqrt(r2), std::pow(r2, s) * std::norm(theta0.at(i1, i2)) * g.area()});
        }
    }
    std::sort(modes.begin(), modes.end(),
              [](const ModeWeight& a, const ModeWeight& b) { return a.r < b.r; });

    // Candidate radii: each distinct shell, then one past the largest.
    std::vector<double> radii;
    for (const auto& m : modes)
        if (radii.empty() || m.r > radii.back()) radii.push_back(m.r);
    if (radii.empty()) throw std::invalid_argument("grid has no nonzero modes");
    radii.push_back(radii.back() + 1.0);

    // tail(N)^2 = sum over |xi| >= N; walk candidates with a suffix sum.
    double chosen = radii.back();
    std::size_t pos = 0;
    double tail = 0.0;
    for (const auto& m : modes) tail += m.contrib;
    for (double r : radii) {
        while (pos < modes.size() && modes[pos].r < r) tail -= modes[pos++].contrib;
        if (std::sqrt(std::max(tail, 0.0)) < eps) {
            chosen = r;
            break;
        }
    }

    SplitInitialData out;
    out.radius = chosen;
    out.low = friedrichs_project(theta0, chosen);
    out.high = theta0 - out.low;
    return out;
}

GapSeries two_trajectory_gap(const SpectralField& theta1_0, const SpectralField& theta2_0,
                             const DissipationParams& p, const StepperConfig& cfg, double t_end) {
    if (!(theta1_0.grid() == theta2_0.grid()))
        throw std::invalid_argument("both trajectories need the same grid");
    const GridSpec& g = theta1_0.grid();
    const long n = std::lround(t_end / cfg.dt);
    if (n < 1) throw std::invalid_argument("horizon shorter than one step");

    // Gronwall integrand weight |xi|^(4 - 2 alpha) on nonzero modes.
    std::vector<double> w(g.size(), 0.0);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double r2 = g.xi1(i1) * g.xi1(i1) + g.xi2(i2) * g.xi2(i2);
            if (r2 > 0.0) w[static_cast<std::size_t>(i1) * g.n2 + i2] = std::pow(r2, 2.0 - p.alpha);
        }
    }
    auto integrand = [&](const SpectralField& f) {
        double sum = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) sum += w[i] * std::norm(f[i]);
        return 1.0 + sum * g.area();
    };

    Stepper stepper(g, p, cfg, GalerkinLevel::full());
    TrajectoryState a{0.0, theta1_0}, b{0.0, theta2_0};

    GapSeries series;
    series.t.push_back(0.0);
    series.gap.push_back(l2_norm(a.theta - b.theta));
    series.gronwall.push_back(0.0);
    double prev_integrand = integrand(b.theta);
    double acc = 0.0;

    for (long i = 0; i < n; ++i) {
        a = stepper.step(a);
        b = stepper.step(b);
        const double cur = integrand(b.theta);
        acc += 0.5 * cfg.dt * (prev_integrand + cur);
        prev_integrand = cur;
        series.t.push_back(a.t);
        series.gap.push_back(l2_norm(a.theta - b.theta));
        series.gronwall.push_back(acc);
    }
    return series;
}

}  // namespace aqg
