#pragma once

#include <span>
#include <string>
#include <vector>

#include "aqg/field.hpp"
#include "aqg/params.hpp"

namespace aqg {

/// s = max(2 - 2 alpha, 2 - 2 beta), the regularity index the energy
/// estimate is run at.
double critical_exponent(const DissipationParams& p);

enum class RegionClass { GlobalRegularity, OutsideRegion };

std::string to_string(RegionClass c);

/// Global-regularity region test:
///   alpha <= 1/2: requires beta > 1/(2 alpha + 1)
///   alpha >  1/2: requires beta > (1 - alpha)/(2 alpha)
/// Throws std::domain_error outside (0,1)^2.
RegionClass classify_region(double alpha, double beta);

/// Instantaneous norms of a trajectory sample.
struct NormSample {
    double t = 0.0;
    double l2 = 0.0;       // ||theta||_{L2}
    double hs_inhom = 0.0; // ||theta||_{H^s}
    double hs_hom = 0.0;   // ||theta||_{Hhom^s}
    double d1 = 0.0;       // || |d1|^alpha theta ||_{H^s}
    double d2 = 0.0;       // || |d2|^beta  theta ||_{H^s}
};

NormSample norm_sample(double t, const SpectralField& theta, const DissipationParams& p, double s);

/// Same computation with the spectral weights precomputed once; use this
/// when sampling a long run.
class NormTracker {
  public:
    NormTracker(const GridSpec& g, const DissipationParams& p, double s);
    NormSample sample(double t, const SpectralField& theta) const;

  private:
    GridSpec grid_;
    std::vector<double> w_hs_, w_d1_, w_d2_;  // (1+|xi|^2)^s and axis multipliers
    std::vector<double> w_hom_;
};

/// One row of the energy ledger: instantaneous norms plus cumulative
/// dissipation integrals (trapezoid on the sampling cadence) and the
/// running total ||theta||_{H^s}^2 + cum_d1 + cum_d2.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2 = 0.0;
    double hs_inhom = 0.0;
    double hs_hom = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double cum_d1 = 0.0;
    double cum_d2 = 0.0;
    double ledger = 0.0;
};

struct LedgerResult {
    std::vector<DiagnosticsRecord> records;
    bool violation = false;
    double max_relative_excess = 0.0;  // max over t of ledger/ledger(0) - 1
};

/// Streaming form of the ledger: push samples in time order, get the row
/// back. Tracks the worst overshoot against the initial H^s energy.
class LedgerAccumulator {
  public:
    explicit LedgerAccumulator(double rel_budget = 1e-6) : rel_budget_(rel_budget) {}

    DiagnosticsRecord push(const NormSample& s);

    bool violation() const { return violation_; }
    double max_relative_excess() const { return max_excess_; }

  private:
    double rel_budget_;
    bool have_first_ = false;
    double e0_ = 0.0;
    double cum1_ = 0.0, cum2_ = 0.0;
    NormSample prev_;
    bool violation_ = false;
    double max_excess_ = 0.0;
};

/// Builds the ledger from equally spaced samples and flags any point where
/// it exceeds the initial H^s energy by more than rel_budget. Throws
/// std::invalid_argument on non-uniform sampling.
LedgerResult energy_ledger(std::span<const NormSample> samples, double rel_budget = 1e-6);

/// Exact semigroup balance ||theta||_{H^s}^2 + 2 mu cum_d1 + 2 nu cum_d2;
/// constant along linear (nonlinearity-masked) trajectories.
double dissipation_balance(const DiagnosticsRecord& r, const DissipationParams& p);

/// Partition of modes by the unweighted symbol A(xi) = |xi1|^(2 alpha)
/// + |xi2|^(2 beta): low holds A <= delta, high the rest.
struct FrequencySplit {
    double delta = 0.0;
    SpectralField low;
    SpectralField high;
};

FrequencySplit frequency_split(const SpectralField& theta, const DissipationParams& p, double delta);

struct DecayReport {
    NormSample start, middle, end;
    double rate_l2 = 0.0;     // fitted exponential rate over the final half
    double rate_hs = 0.0;
    double rate_hs_hom = 0.0;
    double terminal_fraction = 0.0;  // end H^s over start H^s
    double max_hs_increase = 0.0;    // worst consecutive growth of ||theta||_{H^s}
    double sojourn_above_threshold = 0.0;  // time spent with H^s above the pass mark
    bool pass = false;
};

/// Start/middle/end norms, fitted decay rates over the final half of the
/// run, and a pass/fail against the terminal-fraction threshold.
DecayReport decay_report(std::span<const NormSample> samples, double threshold = 0.1);

}  // namespace aqg
