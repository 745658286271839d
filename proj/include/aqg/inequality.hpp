#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aqg/field.hpp"
#include "aqg/params.hpp"

namespace aqg {

enum class Verdict { Bounded, Violated, Skipped };

std::string to_string(Verdict v);

/// Ratio statistics for one inequality check. For explicit-constant
/// inequalities `bound` holds the stated constant and any ratio above it
/// is a violation; implicit-constant checks keep bound = 0 and only
/// assert finiteness.
struct RatioReport {
    std::string lemma;
    long samples = 0;
    double max_ratio = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
    std::vector<std::pair<std::string, double>> params;
    double bound = 0.0;
    Verdict verdict = Verdict::Bounded;
    std::string note;
};

/// Builds a report from raw LHS/RHS ratios; nearest-rank quantiles.
RatioReport aggregate_ratios(const std::string& lemma, std::span<const double> ratios,
                             std::vector<std::pair<std::string, double>> params, double bound);

/// |xi| / (A^(1/2 alpha) + A^(1/2 beta)) with A = |xi1|^(2a) + |xi2|^(2b);
/// zero at the origin (both sides vanish).
double symbol_bound_ratio(double xi1, double xi2, const DissipationParams& p);

/// Checks |xi| <= max(2^(1/2a), 2^(1/2b)) (A^(1/2a) + A^(1/2b)) over the
/// given wavenumbers and reports the empirical sharp constant.
RatioReport check_symbol_bound(const DissipationParams& p,
                               std::span<const std::array<double, 2>> xi_samples);

/// Exhaustive integer sweep |k1|,|k2| <= kmax.
RatioReport check_symbol_bound_sweep(const DissipationParams& p, int kmax);

/// || |grad|^a f ||_{Hhom^s} <= ||f||_{Hhom^s'} + || |d1|^a f ||_{Hhom^s}
/// + || |d2|^b f ||_{Hhom^s}, constant exactly 1. Requires s' < s + alpha
/// and alpha <= beta.
RatioReport check_anisotropic_bound(const SpectralField& f, const DissipationParams& p,
                                    double s, double s_prime);

/// ||f||_{Hhom^(t s1 + (1-t) s2)} <= ||f||_{Hhom^s1}^t ||f||_{Hhom^s2}^(1-t).
RatioReport check_interpolation(const SpectralField& f, double s1, double s2, double t);

/// || |grad|^s (f g) - f |grad|^s g ||_{L2} against
/// s 2^s (|| |grad|^(s+a) f || || |grad|^(1-a) g || + || |grad|^(s-1+a) g || || |grad|^(2-a) f ||).
/// Inputs must be band-limited so the products are alias-free.
RatioReport check_commutator(const SpectralField& f, const SpectralField& g,
                             double s, double alpha);

/// || f g ||_{Hhom^(s1+s2-1)} / (||f||_{Hhom^s1} ||g||_{Hhom^s2}) for the
/// branch s1 < 1, s2 < 1, s1 + s2 > 0. Band-limited inputs.
RatioReport check_product_estimate(const SpectralField& f, const SpectralField& g,
                                   double s1, double s2);

/// ||f||_{Lp} / || |grad|^sigma f ||_{L2} with 1/p = (1 - sigma)/2,
/// sigma in [0,1), f mean-zero. Exactly 1 at sigma = 0.
RatioReport check_embedding(const SpectralField& f, double sigma);

/// || R^perp theta ||_{Lp} / || theta ||_{Lp} for even p >= 2; the p = 2
/// case is the Riesz isometry and must be exactly 1.
RatioReport check_riesz_bound(const SpectralField& theta, int p);

}  // namespace aqg
