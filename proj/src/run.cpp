#include "aqg/run.hpp"

#include <cmath>
#include <limits>

#include "aqg/errors.hpp"
#include "aqg/operators.hpp"

namespace aqg {

RunResult run_simulation(const RunConfig& cfg, const RecordSink& on_record,
                         const SnapshotSink& on_snapshot) {
    const double s = cfg.resolved_norm_s();
    const long steps = cfg.steps();

    SpectralField theta0 = make_initial_data(cfg.grid, cfg.init);
    if (!cfg.galerkin.is_full()) theta0 = friedrichs_project(theta0, *cfg.galerkin.radius);

    const NormTracker tracker(cfg.grid, cfg.params, s);
    const Stepper stepper(cfg.grid, cfg.params, cfg.stepper, cfg.galerkin);

    RunResult result;
    // Trapezoid error budget: 1e-6 relative plus the stepper's own drift.
    result.ledger_budget = 1e-6 + cfg.t_end * std::pow(cfg.stepper.dt, 4);
    LedgerAccumulator ledger(result.ledger_budget);

    TrajectoryState state{0.0, std::move(theta0)};

    auto record = [&](const TrajectoryState& st) {
        const NormSample ns = tracker.sample(st.t, st.theta);
        result.samples.push_back(ns);
        const DiagnosticsRecord row = ledger.push(ns);
        if (on_record) on_record(row);
        return ns;
    };

    const NormSample first = record(state);
    result.initial_hs = first.hs_inhom;
    const double ceiling = first.hs_inhom > 0.0
                               ? cfg.blowup_factor * first.hs_inhom
                               : std::numeric_limits<double>::infinity();
    if (on_snapshot) on_snapshot(state, 0);

    for (long step = 1; step <= steps; ++step) {
        try {
            state = stepper.step(state);
        } catch (const BlowupError& e) {
            result.blowup = true;
            result.blowup_time = e.time();
            result.blowup_reason = e.what();
            break;
        }
        if (step % cfg.sample_every == 0) {
            const NormSample ns = record(state);
            if (ns.hs_inhom > ceiling) {
                result.blowup = true;
                result.blowup_time = state.t;
                result.blowup_reason = "H^s norm crossed the ceiling (factor " +
                                       format_double(cfg.blowup_factor) + " of initial)";
                break;
            }
        }
        if (on_snapshot && ((cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) ||
                            (!result.blowup && step == steps)))
            on_snapshot(state, step);
    }

    result.ledger.violation = ledger.violation();
    result.ledger.max_relative_excess = ledger.max_relative_excess();
    result.final_state = std::move(state);
    return result;
}

}  // namespace aqg
