#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aqg/config.hpp"
#include "aqg/diagnostics.hpp"
#include "aqg/dynamics.hpp"

namespace aqg {

struct RunResult {
    bool blowup = false;
    double blowup_time = 0.0;
    std::string blowup_reason;
    std::vector<NormSample> samples;
    LedgerResult ledger;
    TrajectoryState final_state;  // last finite state reached
    double initial_hs = 0.0;
    double ledger_budget = 0.0;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;
using SnapshotSink = std::function<void(const TrajectoryState&, long step)>;

/// Drives one run: builds the initial datum, steps to t-end, samples the
/// norm diagnostics on the configured cadence and applies the blow-up
/// ceiling. Sinks, when set, receive ledger rows and snapshot states as
/// they are produced.
RunResult run_simulation(const RunConfig& cfg, const RecordSink& on_record = {},
                         const SnapshotSink& on_snapshot = {});

}  // namespace aqg
