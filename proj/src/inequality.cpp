#include "aqg/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aqg/fft.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"

namespace aqg {

namespace {

constexpr double kExplicitSlack = 1e-12;  // roundoff margin on stated constants

// Widest nonzero mode numbers along each axis.
std::array<int, 2> band_reach(const SpectralField& f) {
    const GridSpec& g = f.grid();
    int b1 = 0, b2 = 0;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            if (f.at(i1, i2) != Complex{}) {
                b1 = std::max(b1, std::abs(g.k1(i1)));
                b2 = std::max(b2, std::abs(g.k2(i2)));
            }
    return {b1, b2};
}

void require_alias_free(const SpectralField& f, const SpectralField& g) {
    const auto bf = band_reach(f), bg = band_reach(g);
    const GridSpec& gr = f.grid();
    if (bf[0] + bg[0] > gr.n1 / 2 - 1 || bf[1] + bg[1] > gr.n2 / 2 - 1)
        throw std::invalid_argument("inputs too wide: product would alias on this grid");
}

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
    const RealField pa = inverse_transform(a);
    const RealField pb = inverse_transform(b);
    RealField prod(a.grid());
    for (std::size_t i = 0; i < prod.values.size(); ++i)
        prod.values[i] = pa.values[i] * pb.values[i];
    return forward_transform(prod);
}

void require_mean_zero(const SpectralField& f) {
    if (std::abs(f.mode(0, 0)) > 1e-12 * std::max(f.max_abs(), 1e-300))
        throw std::invalid_argument("field must be mean-zero");
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Bounded: return "bounded";
        case Verdict::Violated: return "violated";
        default: return "skipped";
    }
}

RatioReport aggregate_ratios(const std::string& lemma, std::span<const double> ratios,
                             std::vector<std::pair<std::string, double>> params, double bound) {
    RatioReport r;
    r.lemma = lemma;
    r.samples = static_cast<long>(ratios.size());
    r.params = std::move(params);
    r.bound = bound;
    if (ratios.empty()) return r;

    std::vector<double> sorted(ratios.begin(), ratios.end());
    std::sort(sorted.begin(), sorted.end());
    auto rank = [&](double q) {
        const std::size_t i = static_cast<std::size_t>(std::ceil(q * sorted.size()));
        return sorted[std::min(sorted.size() - 1, i == 0 ? 0 : i - 1)];
    };
    r.max_ratio = sorted.back();
    r.p50 = rank(0.50);
    r.p95 = rank(0.95);
    if (!std::isfinite(r.max_ratio))
        r.verdict = Verdict::Violated;
    else if (bound > 0.0 && r.max_ratio > bound * (1.0 + kExplicitSlack))
        r.verdict = Verdict::Violated;
    else
        r.verdict = Verdict::Bounded;
    return r;
}

double symbol_bound_ratio(double xi1, double xi2, const DissipationParams& p) {
    const double r = std::hypot(xi1, xi2);
    if (r == 0.0) return 0.0;
    const double a = dissipation_symbol_unweighted(xi1, xi2, p);
    const double rhs = std::pow(a, 1.0 / (2.0 * p.alpha)) + std::pow(a, 1.0 / (2.0 * p.beta));
    return r / rhs;
}

RatioReport check_symbol_bound(const DissipationParams& p,
                               std::span<const std::array<double, 2>> xi_samples) {
    const double bound = std::max(std::pow(2.0, 1.0 / (2.0 * p.alpha)),
                                  std::pow(2.0, 1.0 / (2.0 * p.beta)));
    std::vector<double> ratios;
    ratios.reserve(xi_samples.size());
    for (const auto& xi : xi_samples) {
        if (xi[0] == 0.0 && xi[1] == 0.0) continue;  // 0 <= 0 holds with equality
        ratios.push_back(symbol_bound_ratio(xi[0], xi[1], p));
    }
    return aggregate_ratios("symbol-bound", ratios,
                            {{"alpha", p.alpha}, {"beta", p.beta}}, bound);
}

RatioReport check_symbol_bound_sweep(const DissipationParams& p, int kmax) {
    std::vector<std::array<double, 2>> samples;
    samples.reserve(static_cast<std::size_t>(2 * kmax + 1) * (2 * kmax + 1));
    for (int k1 = -kmax; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2)
            samples.push_back({static_cast<double>(k1), static_cast<double>(k2)});
    RatioReport r = check_symbol_bound(p, samples);
    r.params.emplace_back("kmax", static_cast<double>(kmax));
    return r;
}

RatioReport check_anisotropic_bound(const SpectralField& f, const DissipationParams& p,
                                    double s, double s_prime) {
    if (!(p.alpha <= p.beta))
        throw std::invalid_argument("anisotropic bound requires alpha <= beta");
    if (!(s_prime < s + p.alpha))
        throw std::invalid_argument("anisotropic bound requires s' < s + alpha");

    const double lhs = sobolev_norm(fractional_laplacian(f, p.alpha), {s, true});
    const double rhs = sobolev_norm(f, {s_prime, true}) +
                       sobolev_norm(fractional_partial(f, 1, p.alpha), {s, true}) +
                       sobolev_norm(fractional_partial(f, 2, p.beta), {s, true});
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    return aggregate_ratios("anisotropic", std::array{ratio},
                            {{"alpha", p.alpha}, {"beta", p.beta}, {"s", s}, {"s_prime", s_prime}},
                            1.0);
}

RatioReport check_interpolation(const SpectralField& f, double s1, double s2, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
    const double s_mid = t * s1 + (1.0 - t) * s2;
    const double mid = sobolev_norm(f, {s_mid, true});
    const double a = sobolev_norm(f, {s1, true});
    const double b = sobolev_norm(f, {s2, true});
    const double rhs = std::pow(a, t) * std::pow(b, 1.0 - t);
    const double ratio = rhs > 0.0 ? mid / rhs : 0.0;
    return aggregate_ratios("interpolation", std::array{ratio},
                            {{"s1", s1}, {"s2", s2}, {"t", t}}, 1.0);
}

RatioReport check_commutator(const SpectralField& f, const SpectralField& g,
                             double s, double alpha) {
    if (!(s > 1.0)) throw std::invalid_argument("commutator estimate requires s > 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    require_alias_free(f, g);

    const SpectralField fg = pointwise_product(f, g);
    const SpectralField lhs_field =
        fractional_laplacian(fg, s) - pointwise_product(f, fractional_laplacian(g, s));
    const double lhs = l2_norm(lhs_field);

    const double bracket =
        l2_norm(fractional_laplacian(f, s + alpha)) * l2_norm(fractional_laplacian(g, 1.0 - alpha)) +
        l2_norm(fractional_laplacian(g, s - 1.0 + alpha)) * l2_norm(fractional_laplacian(f, 2.0 - alpha));
    const double denom = s * std::pow(2.0, s) * bracket;
    const double ratio = denom > 0.0 ? lhs / denom : 0.0;
    return aggregate_ratios("commutator", std::array{ratio},
                            {{"s", s}, {"alpha", alpha}}, 0.0);
}

RatioReport check_product_estimate(const SpectralField& f, const SpectralField& g,
                                   double s1, double s2) {
    if (!(s1 < 1.0 && s2 < 1.0 && s1 + s2 > 0.0))
        throw std::invalid_argument("product estimate branch requires s1 < 1, s2 < 1, s1 + s2 > 0");
    require_alias_free(f, g);

    const double lhs = sobolev_norm(pointwise_product(f, g), {s1 + s2 - 1.0, true});
    const double rhs = sobolev_norm(f, {s1, true}) * sobolev_norm(g, {s2, true});
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    return aggregate_ratios("product", std::array{ratio}, {{"s1", s1}, {"s2", s2}}, 0.0);
}

RatioReport check_embedding(const SpectralField& f, double sigma) {
    if (!(sigma >= 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in [0,1)");
    require_mean_zero(f);
    const double p = 2.0 / (1.0 - sigma);
    const double lhs = lp_norm_physical(inverse_transform(f), p);
    const double rhs = sobolev_norm(f, {sigma, true});
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    return aggregate_ratios("embedding", std::array{ratio},
                            {{"sigma", sigma}, {"p", p}}, 0.0);
}

RatioReport check_riesz_bound(const SpectralField& theta, int p) {
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("p must be an even integer >= 2");
    require_mean_zero(theta);
    const GridSpec& g = theta.grid();

    VelocityField u = riesz_velocity(theta);
    const RealField u1 = inverse_transform(u.u1);
    const RealField u2 = inverse_transform(u.u2);
    double sum = 0.0;
    for (std::size_t i = 0; i < u1.values.size(); ++i) {
        const double m2 = u1.values[i] * u1.values[i] + u2.values[i] * u2.values[i];
        sum += std::pow(m2, p / 2.0);
    }
    const double lhs = std::pow(sum * g.area() / static_cast<double>(g.size()), 1.0 / p);
    const double rhs = lp_norm_physical(inverse_transform(theta), static_cast<double>(p));
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    return aggregate_ratios("riesz", std::array{ratio}, {{"p", static_cast<double>(p)}}, 0.0);
}

}  // namespace aqg
