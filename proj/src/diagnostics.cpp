#include "aqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aqg/operators.hpp"

namespace aqg {

double critical_exponent(const DissipationParams& p) {
    return std::max(2.0 - 2.0 * p.alpha, 2.0 - 2.0 * p.beta);
}

std::string to_string(RegionClass c) {
    return c == RegionClass::GlobalRegularity ? "global-regularity" : "outside-region";
}

RegionClass classify_region(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw std::domain_error("alpha and beta must lie in (0,1)");
    const double threshold = alpha <= 0.5 ? 1.0 / (2.0 * alpha + 1.0)
                                          : (1.0 - alpha) / (2.0 * alpha);
    return beta > threshold ? RegionClass::GlobalRegularity : RegionClass::OutsideRegion;
}

NormTracker::NormTracker(const GridSpec& g, const DissipationParams& p, double s) : grid_(g) {
    const std::size_t n = g.size();
    w_hs_.resize(n);
    w_hom_.resize(n);
    w_d1_.resize(n);
    w_d2_.resize(n);
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const std::size_t idx = static_cast<std::size_t>(i1) * g.n2 + i2;
            const double x1 = g.xi1(i1), x2 = g.xi2(i2);
            const double r2 = x1 * x1 + x2 * x2;
            w_hs_[idx] = std::pow(1.0 + r2, s);
            w_hom_[idx] = r2 == 0.0 ? 0.0 : std::pow(r2, s);
            w_d1_[idx] = x1 == 0.0 ? 0.0 : std::pow(std::abs(x1), 2.0 * p.alpha);
            w_d2_[idx] = x2 == 0.0 ? 0.0 : std::pow(std::abs(x2), 2.0 * p.beta);
        }
    }
}

NormSample NormTracker::sample(double t, const SpectralField& theta) const {
    if (!(theta.grid() == grid_)) throw std::invalid_argument("grid mismatch");
    double l2 = 0.0, hs = 0.0, hom = 0.0, d1 = 0.0, d2 = 0.0;
    const auto& c = theta.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double m = std::norm(c[i]);
        l2 += m;
        const double wm = w_hs_[i] * m;
        hs += wm;
        hom += w_hom_[i] * m;
        d1 += w_d1_[i] * wm;
        d2 += w_d2_[i] * wm;
    }
    const double area = grid_.area();
    NormSample out;
    out.t = t;
    out.l2 = std::sqrt(l2 * area);
    out.hs_inhom = std::sqrt(hs * area);
    out.hs_hom = std::sqrt(hom * area);
    out.d1 = std::sqrt(d1 * area);
    out.d2 = std::sqrt(d2 * area);
    return out;
}

NormSample norm_sample(double t, const SpectralField& theta, const DissipationParams& p, double s) {
    return NormTracker(theta.grid(), p, s).sample(t, theta);
}

DiagnosticsRecord LedgerAccumulator::push(const NormSample& s) {
    if (!have_first_) {
        have_first_ = true;
        e0_ = s.hs_inhom * s.hs_inhom;
    } else {
        const double h = s.t - prev_.t;
        if (!(h > 0.0)) throw std::invalid_argument("samples must advance in time");
        cum1_ += 0.5 * h * (prev_.d1 * prev_.d1 + s.d1 * s.d1);
        cum2_ += 0.5 * h * (prev_.d2 * prev_.d2 + s.d2 * s.d2);
    }
    prev_ = s;

    DiagnosticsRecord r;
    r.t = s.t;
    r.l2 = s.l2;
    r.hs_inhom = s.hs_inhom;
    r.hs_hom = s.hs_hom;
    r.d1 = s.d1;
    r.d2 = s.d2;
    r.cum_d1 = cum1_;
    r.cum_d2 = cum2_;
    r.ledger = s.hs_inhom * s.hs_inhom + cum1_ + cum2_;
    if (e0_ > 0.0) {
        const double excess = r.ledger / e0_ - 1.0;
        max_excess_ = std::max(max_excess_, excess);
        if (excess > rel_budget_) violation_ = true;
    }
    return r;
}

LedgerResult energy_ledger(std::span<const NormSample> samples, double rel_budget) {
    LedgerResult out;
    if (samples.empty()) return out;
    if (samples.size() >= 2) {
        const double h = samples[1].t - samples[0].t;
        if (!(h > 0.0)) throw std::invalid_argument("samples must advance in time");
        for (std::size_t i = 1; i < samples.size(); ++i) {
            const double hi = samples[i].t - samples[i - 1].t;
            if (std::abs(hi - h) > 1e-9 * std::max(1.0, h))
                throw std::invalid_argument("energy ledger requires equally spaced samples");
        }
    }

    LedgerAccumulator acc(rel_budget);
    out.records.reserve(samples.size());
    for (const NormSample& s : samples) out.records.push_back(acc.push(s));
    out.violation = acc.violation();
    out.max_relative_excess = acc.max_relative_excess();
    return out;
}

double dissipation_balance(const DiagnosticsRecord& r, const DissipationParams& p) {
    return r.hs_inhom * r.hs_inhom + 2.0 * (p.mu * r.cum_d1 + p.nu * r.cum_d2);
}

FrequencySplit frequency_split(const SpectralField& theta, const DissipationParams& p, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("split threshold must be positive");
    const GridSpec& g = theta.grid();
    FrequencySplit out{delta, SpectralField(g), SpectralField(g)};
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2) {
            const double a = dissipation_symbol_unweighted(g.xi1(i1), g.xi2(i2), p);
            if (a <= delta)
                out.low.at(i1, i2) = theta.at(i1, i2);
            else
                out.high.at(i1, i2) = theta.at(i1, i2);
        }
    }
    return out;
}

namespace {

// Least-squares slope of log(y) against t; returns 0 when degenerate.
double fitted_rate(std::span<const NormSample> samples, double NormSample::*field) {
    const std::size_t begin = samples.size() / 2;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t n = 0;
    for (std::size_t i = begin; i < samples.size(); ++i) {
        const double y = samples[i].*field;
        if (!(y > 1e-300)) continue;
        const double t = samples[i].t, ly = std::log(y);
        st += t;
        sy += ly;
        stt += t * t;
        sty += t * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * stt - st * st;
    if (denom == 0.0) return 0.0;
    return -(n * sty - st * sy) / denom;
}

}  // namespace

DecayReport decay_report(std::span<const NormSample> samples, double threshold) {
    if (samples.empty()) throw std::invalid_argument("decay report needs samples");
    DecayReport out;
    out.start = samples.front();
    out.middle = samples[samples.size() / 2];
    out.end = samples.back();
    out.rate_l2 = fitted_rate(samples, &NormSample::l2);
    out.rate_hs = fitted_rate(samples, &NormSample::hs_inhom);
    out.rate_hs_hom = fitted_rate(samples, &NormSample::hs_hom);
    out.terminal_fraction = out.start.hs_inhom > 0.0 ? out.end.hs_inhom / out.start.hs_inhom : 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        out.max_hs_increase = std::max(out.max_hs_increase,
                                       samples[i].hs_inhom - samples[i - 1].hs_inhom);
    // sojourn time above the pass mark, the finite-run stand-in for the
    // measure of {t : ||theta(t)||_{H^s} > eps}
    const double mark = threshold * out.start.hs_inhom;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].hs_inhom > mark)
            out.sojourn_above_threshold += samples[i].t - samples[i - 1].t;
    out.pass = out.terminal_fraction < threshold;
    return out;
}

}  // namespace aqg
