#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "aqg/dynamics.hpp"
#include "aqg/errors.hpp"
#include "aqg/fft.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"
#include "aqg/rng.hpp"

using namespace aqg;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec box(int n) { return GridSpec(n, n, 2.0 * kPi, 2.0 * kPi); }

SpectralField cos_x1(const GridSpec& g, int k = 1) {
    SpectralField f(g);
    f.set_mode(k, 0, Complex{0.5, 0.0});
    f.set_mode(-k, 0, Complex{0.5, 0.0});
    return f;
}

// Exact convolution sum for u_theta . grad theta: velocity from the Riesz
// multipliers, gradient from i xi, all mode pairs summed directly. The
// independent oracle for the pseudo-spectral path.
SpectralField convolution_oracle(const SpectralField& theta) {
    const GridSpec& g = theta.grid();
    const VelocityField u = riesz_velocity(theta);
    SpectralField out(g);
    for (int a1 = 0; a1 < g.n1; ++a1)
        for (int a2 = 0; a2 < g.n2; ++a2) {
            const Complex ua = u.u1.at(a1, a2), va = u.u2.at(a1, a2);
            if (ua == Complex{} && va == Complex{}) continue;
            for (int b1 = 0; b1 < g.n1; ++b1)
                for (int b2 = 0; b2 < g.n2; ++b2) {
                    const Complex tb = theta.at(b1, b2);
                    if (tb == Complex{}) continue;
                    const int k1 = g.k1(a1) + g.k1(b1);
                    const int k2 = g.k2(a2) + g.k2(b2);
                    if (std::abs(k1) > g.n1 / 2 - 1 || std::abs(k2) > g.n2 / 2 - 1) continue;
                    const Complex grad =
                        ua * Complex{0.0, g.xi1(b1)} * tb + va * Complex{0.0, g.xi2(b2)} * tb;
                    out.set_mode(k1, k2, out.mode(k1, k2) + grad);
                }
        }
    return out;
}

SpectralField dealiased_random(const GridSpec& g, std::uint64_t seed, double amp = 1.0) {
    return two_thirds_mask(random_bandlimited_field(g, seed, 1.0, g.n1 / 3.0, amp));
}

}  // namespace

TEST_CASE("nonlinear term vanishes for single-variable data") {
    const GridSpec g = box(32);
    const SpectralField n = nonlinear_term(cos_x1(g), Dealias::TwoThirds);
    CHECK(n.max_abs() < 1e-15);
}

TEST_CASE("nonlinear term of zero is zero") {
    CHECK(nonlinear_term(SpectralField(box(16)), Dealias::TwoThirds).max_abs() == 0.0);
}

TEST_CASE("nonlinear term matches the mode-pair convolution oracle on 8x8") {
    const GridSpec g = box(8);
    SpectralField th(g);
    th.set_mode(1, 0, Complex{0.5, 0.0});
    th.set_mode(-1, 0, Complex{0.5, 0.0});
    th.set_mode(0, 1, Complex{0.5, 0.0});
    th.set_mode(0, -1, Complex{0.5, 0.0});

    const SpectralField oracle = convolution_oracle(th);
    // all interaction modes fall inside the two-thirds band of an 8x8 grid,
    // so masked and unmasked paths must both reproduce the exact sum
    for (Dealias d : {Dealias::TwoThirds, Dealias::None}) {
        const SpectralField n = nonlinear_term(th, d);
        double worst = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) worst = std::max(worst, std::abs(n[i] - oracle[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("advective and divergence forms agree on dealiased fields") {
    const GridSpec g = box(64);
    for (std::uint64_t seed : {2ull, 5ull, 19ull}) {
        const SpectralField th = dealiased_random(g, seed);
        const SpectralField a = nonlinear_term(th, Dealias::TwoThirds);
        const SpectralField b = nonlinear_term_divergence(th, Dealias::TwoThirds);
        const double scale = std::max(a.max_abs(), 1e-300);
        CHECK((a - b).max_abs() / scale < 1e-11);
    }
}

TEST_CASE("skew symmetry: <N(theta), theta> cancels on dealiased fields") {
    const GridSpec g = box(64);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SpectralField th = dealiased_random(g, seed);
        const SpectralField n = nonlinear_term(th, Dealias::TwoThirds);
        const double ip = std::abs(l2_inner(n, th));
        const double denom = l2_norm(th) * l2_norm(fractional_laplacian(th, 1.0));
        CHECK(ip / denom < 1e-11);
    }
}

TEST_CASE("galerkin rhs") {
    const GridSpec g = box(32);
    const DissipationParams p(0.4, 0.7, 1.5, 0.8);

    SUBCASE("full-band level equals the untruncated rhs") {
        const SpectralField th = dealiased_random(g, 3);
        const TrajectoryState st{0.0, th};
        const SpectralField full = galerkin_rhs(st, p, GalerkinLevel::full(), Dealias::TwoThirds);
        const SpectralField trunc =
            galerkin_rhs(st, p, GalerkinLevel::truncated(g.max_abs_xi()), Dealias::TwoThirds);
        CHECK((full - trunc).max_abs() == 0.0);
    }
    SUBCASE("single mode reduces to pure dissipation") {
        SpectralField th(g);
        th.set_mode(1, 1, Complex{0.3, 0.2});
        th.set_mode(-1, -1, Complex{0.3, -0.2});
        const SpectralField rhs =
            galerkin_rhs({0.0, th}, p, GalerkinLevel::full(), Dealias::TwoThirds);
        const double a = dissipation_symbol(1.0, 1.0, p);
        CHECK(std::abs(rhs.mode(1, 1) - (-a) * th.mode(1, 1)) < 1e-13);
        // nonlinear part of a single plane wave vanishes: u is orthogonal to grad theta
        SpectralField rest = rhs + a * th;
        CHECK(rest.max_abs() < 1e-14);
    }
    SUBCASE("projected advection is orthogonal to truncated states") {
        const double radius = 8.0;
        SpectralField th = friedrichs_project(dealiased_random(g, 9), radius);
        SpectralField nl = friedrichs_project(nonlinear_term(th, Dealias::TwoThirds), radius);
        const double ip = std::abs(l2_inner(nl, th));
        CHECK(ip / (l2_norm(th) * l2_norm(fractional_laplacian(th, 1.0))) < 1e-12);
    }
    SUBCASE("output of a truncated rhs stays truncated") {
        const double radius = 6.0;
        const SpectralField th = friedrichs_project(dealiased_random(g, 4), radius);
        const SpectralField rhs =
            galerkin_rhs({0.0, th}, p, GalerkinLevel::truncated(radius), Dealias::TwoThirds);
        CHECK((friedrichs_project(rhs, radius) - rhs).max_abs() == 0.0);
    }
}

TEST_CASE("integrating factor applies the semigroup exactly") {
    const GridSpec g = box(64);
    const DissipationParams p(0.5, 0.5);
    SpectralField th(g);
    th.set_mode(1, 1, Complex{0.5, 0.0});
    th.set_mode(-1, -1, Complex{0.5, 0.0});

    // symbol at (1,1) is exactly 2; amplitude must follow e^(-2t) for any dt
    for (double dt : {0.1, 0.05, 0.02}) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.nonlinearity = Nonlinearity::Masked;
        Stepper stepper(g, p, cfg);
        TrajectoryState st{0.0, th};
        const int steps = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < steps; ++i) st = stepper.step(st);
        const double expect = 0.5 * std::exp(-2.0 * st.t);
        CHECK(std::abs(st.theta.mode(1, 1).real() - expect) < 1e-12);
        CHECK(std::abs(st.theta.mode(1, 1).imag()) == 0.0);
    }
}

TEST_CASE("zero field stays zero") {
    const GridSpec g = box(16);
    Stepper stepper(g, DissipationParams(0.3, 0.6), StepperConfig{});
    TrajectoryState st{0.0, SpectralField(g)};
    for (int i = 0; i < 5; ++i) st = stepper.step(st);
    CHECK(st.theta.max_abs() == 0.0);
}

TEST_CASE("non-finite state raises a blow-up error with the failure time") {
    const GridSpec g = box(16);
    SpectralField bad(g);
    bad.set_mode(1, 0, Complex{std::numeric_limits<double>::quiet_NaN(), 0.0});
    bad.set_mode(-1, 0, Complex{std::numeric_limits<double>::quiet_NaN(), 0.0});
    Stepper stepper(g, DissipationParams(0.5, 0.5), StepperConfig{});
    try {
        stepper.step({3.25, bad});
        FAIL("expected BlowupError");
    } catch (const BlowupError& e) {
        CHECK(e.time() == doctest::Approx(3.25 + 1e-3));
    }
}

TEST_CASE("time stepping converges at fourth order on a nonlinear run") {
    const GridSpec g = box(32);
    const DissipationParams p(0.35, 0.35);
    const SpectralField th0 = dealiased_random(g, 8, 1.0);
    const double T = 0.5;

    auto advance = [&](double dt) {
        StepperConfig cfg;
        cfg.dt = dt;
        Stepper stepper(g, p, cfg);
        TrajectoryState st{0.0, th0};
        const long steps = std::lround(T / dt);
        for (long i = 0; i < steps; ++i) st = stepper.step(st);
        return st.theta;
    };

    const SpectralField a = advance(4e-3);
    const SpectralField b = advance(2e-3);
    const SpectralField c = advance(1e-3);
    const double e1 = l2_norm(a - b), e2 = l2_norm(b - c);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("mean mode is conserved exactly") {
    const GridSpec g = box(32);
    const SpectralField th0 = dealiased_random(g, 12, 2.0);
    StepperConfig cfg;
    cfg.dt = 5e-3;
    Stepper stepper(g, DissipationParams(0.3, 0.7), cfg);
    TrajectoryState st{0.0, th0};
    for (int i = 0; i < 40; ++i) {
        st = stepper.step(st);
        CHECK(st.theta.mode(0, 0) == Complex{});
    }
}

TEST_CASE("one-step L2 balance closes at fifth order") {
    // || theta(t+dt) ||^2 - || theta ||^2 + 2 int (mu ||d1^a theta||^2 + nu ||d2^b theta||^2)
    // evaluated with a Simpson quadrature over fine substeps must shrink
    // like dt^5 for a single step.
    const GridSpec g = box(32);
    const DissipationParams p(0.4, 0.6, 1.0, 1.0);
    const SpectralField th0 = dealiased_random(g, 21, 1.0);

    auto dissipation_rate = [&](const SpectralField& th) {
        const double a = sobolev_norm(fractional_partial(th, 1, p.alpha), {0.0, false});
        const double b = sobolev_norm(fractional_partial(th, 2, p.beta), {0.0, false});
        return 2.0 * (p.mu * a * a + p.nu * b * b);
    };

    auto defect = [&](double dt) {
        StepperConfig coarse;
        coarse.dt = dt;
        const SpectralField after = Stepper(g, p, coarse).step({0.0, th0}).theta;

        const int sub = 64;
        StepperConfig fine;
        fine.dt = dt / sub;
        Stepper fs(g, p, fine);
        TrajectoryState st{0.0, th0};
        std::vector<double> rate(sub + 1);
        rate[0] = dissipation_rate(st.theta);
        for (int i = 1; i <= sub; ++i) {
            st = fs.step(st);
            rate[i] = dissipation_rate(st.theta);
        }
        double integral = 0.0;  // Simpson, sub is even
        for (int i = 0; i + 2 <= sub; i += 2)
            integral += fine.dt / 3.0 * (rate[i] + 4.0 * rate[i + 1] + rate[i + 2]);

        const double n1 = l2_norm(after), n0 = l2_norm(th0);
        return std::abs(n1 * n1 - n0 * n0 + integral);
    };

    const double d1 = defect(2e-2), d2 = defect(1e-2);
    const double slope = std::log2(d1 / d2);
    CHECK(slope > 4.3);
    CHECK(d2 < 1e-10);
}

TEST_CASE("galerkin truncation is preserved exactly along trajectories") {
    const GridSpec g = box(32);
    const double radius = 6.0;
    const SpectralField th0 = friedrichs_project(dealiased_random(g, 6, 1.0), radius);
    StepperConfig cfg;
    cfg.dt = 5e-3;
    Stepper stepper(g, DissipationParams(0.3, 0.7), cfg, GalerkinLevel::truncated(radius));
    TrajectoryState st{0.0, th0};
    for (int i = 0; i < 50; ++i) st = stepper.step(st);
    CHECK((friedrichs_project(st.theta, radius) - st.theta).max_abs() == 0.0);
}

TEST_CASE("trajectories self-converge under grid refinement") {
    const DissipationParams p(0.3, 0.7);
    const double T = 0.25, dt = 2.5e-3;
    auto run = [&](int n) {
        const GridSpec g = box(n);
        const SpectralField th0 = random_bandlimited_field(g, 33, 1.0, 2.5, 1.0);
        StepperConfig cfg;
        cfg.dt = dt;
        Stepper stepper(g, p, cfg);
        TrajectoryState st{0.0, th0};
        for (long i = 0; i < std::lround(T / dt); ++i) st = stepper.step(st);
        return st.theta;
    };
    const SpectralField f16 = run(16), f32 = run(32), f64 = run(64);
    auto dist_on_common = [&](const SpectralField& coarse, const SpectralField& fine) {
        double sum = 0.0;
        const GridSpec& g = coarse.grid();
        for (int k1 = -g.n1 / 3; k1 <= g.n1 / 3; ++k1)
            for (int k2 = -g.n2 / 3; k2 <= g.n2 / 3; ++k2)
                sum += std::norm(coarse.mode(k1, k2) - fine.mode(k1, k2));
        return std::sqrt(sum * g.area());
    };
    const double e16 = dist_on_common(f16, f64);
    const double e32 = dist_on_common(f32, f64);
    CHECK(e32 < e16);  // spectral accuracy: the acceptance suite checks the 10x factor
}

TEST_CASE("split initial data") {
    const GridSpec g = box(32);

    SUBCASE("loose tolerance picks the first shell") {
        const SpectralField th = random_bandlimited_field(g, 14, 1.0, 8.0, 1.0);
        const double s = 1.4;
        const double whole = sobolev_norm(th, {s, true});
        const SplitInitialData sp = split_initial_data(th, whole * 1.01, s);
        CHECK(sp.radius == doctest::Approx(1.0));  // smallest nonzero shell
        CHECK(sobolev_norm(sp.high, {s, true}) < whole * 1.01);
    }
    SUBCASE("single mode at |xi| = 3 with tiny eps splits just above 3") {
        SpectralField th(g);
        th.set_mode(3, 0, Complex{0.5, 0.0});
        th.set_mode(-3, 0, Complex{0.5, 0.0});
        const SplitInitialData sp = split_initial_data(th, 1e-12, 1.0);
        CHECK(sp.radius > 3.0);
        CHECK(sp.radius <= std::sqrt(10.0) + 1e-12);  // next distinct shell
        CHECK(sp.high.max_abs() == 0.0);
        CHECK((sp.low - th).max_abs() == 0.0);
    }
    SUBCASE("low + high = theta exactly, orthogonally") {
        const SpectralField th = random_bandlimited_field(g, 15, 1.0, 10.0, 1.3);
        const SplitInitialData sp = split_initial_data(th, 0.3, 1.0);
        CHECK((sp.low + sp.high - th).max_abs() == 0.0);
        const double a = l2_norm(th), b = l2_norm(sp.low), c = l2_norm(sp.high);
        CHECK(a * a == doctest::Approx(b * b + c * c).epsilon(1e-12));
    }
    SUBCASE("eps must be positive") {
        CHECK_THROWS_AS(split_initial_data(SpectralField(g), 0.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("two trajectory gap") {
    const GridSpec g = box(32);
    const DissipationParams p(0.3, 0.7);
    StepperConfig cfg;
    cfg.dt = 5e-3;

    SUBCASE("identical initial data never separates") {
        const SpectralField th = dealiased_random(g, 40, 0.5);
        const GapSeries gs = two_trajectory_gap(th, th, p, cfg, 0.25);
        for (double v : gs.gap) CHECK(v == 0.0);
    }
    SUBCASE("pure dissipation contracts the gap monotonically") {
        StepperConfig masked = cfg;
        masked.nonlinearity = Nonlinearity::Masked;
        const SpectralField a = dealiased_random(g, 41, 0.5);
        SpectralField delta(g);
        delta.set_mode(2, 1, Complex{5e-9, 0.0});
        delta.set_mode(-2, -1, Complex{5e-9, 0.0});
        const GapSeries gs = two_trajectory_gap(a, a + delta, p, masked, 0.5);
        for (std::size_t i = 1; i < gs.gap.size(); ++i) CHECK(gs.gap[i] <= gs.gap[i - 1]);
    }
    SUBCASE("small perturbations stay inside a finite Gronwall envelope") {
        const SpectralField a = dealiased_random(g, 42, 0.2);
        SpectralField delta(g);
        delta.set_mode(1, 2, Complex{1e-8, 0.0});
        delta.set_mode(-1, -2, Complex{1e-8, 0.0});
        const GapSeries gs = two_trajectory_gap(a, a + delta, p, cfg, 0.5);
        const double g0 = gs.gap.front();
        CHECK(g0 > 0.0);
        double c_fit = 0.0;
        for (std::size_t i = 1; i < gs.gap.size(); ++i)
            if (gs.gronwall[i] > 0.0)
                c_fit = std::max(c_fit, std::log(gs.gap[i] / g0) / gs.gronwall[i]);
        CHECK(std::isfinite(c_fit));
        // the fitted constant really is an envelope
        for (std::size_t i = 0; i < gs.gap.size(); ++i)
            CHECK(gs.gap[i] <= g0 * std::exp(c_fit * gs.gronwall[i]) * (1.0 + 1e-12));
    }
}

TEST_CASE("initial data constructors") {
    const GridSpec g = box(32);

    SUBCASE("plane wave") {
        InitialData init;
        init.kind = PlaneWave{2, 1, 0.8};
        const SpectralField f = make_initial_data(g, init);
        CHECK(std::abs(f.mode(2, 1) - Complex{0.4, 0.0}) < 1e-15);
        CHECK(std::abs(f.mode(-2, -1) - Complex{0.4, 0.0}) < 1e-15);
        CHECK(f.mode(0, 0) == Complex{});
    }
    SUBCASE("zero-mode plane wave is rejected") {
        InitialData init;
        init.kind = PlaneWave{0, 0, 1.0};
        CHECK_THROWS_AS(make_initial_data(g, init), std::invalid_argument);
    }
    SUBCASE("gaussian bump is real and mean-zero") {
        InitialData init;
        init.kind = GaussianBump{0.6, 1.0};
        const SpectralField f = make_initial_data(g, init);
        CHECK(f.mode(0, 0) == Complex{});
        CHECK(f.hermitian_defect() < 1e-15);
    }
    SUBCASE("normalization hits the requested norm") {
        InitialData init;
        init.kind = RandomBandlimited{7, 1.0, 4.0, 1.0};
        init.normalize = Normalize::HsHom;
        init.normalize_s = 1.4;
        init.target = 0.01;
        const SpectralField f = make_initial_data(g, init);
        CHECK(sobolev_norm(f, {1.4, true}) == doctest::Approx(0.01).epsilon(1e-12));
    }
    SUBCASE("stepper validation") {
        StepperConfig cfg;
        cfg.dt = 0.0;
        CHECK_THROWS_AS(Stepper(g, DissipationParams(0.5, 0.5), cfg), std::invalid_argument);
    }
}
