#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "aqg/diagnostics.hpp"
#include "aqg/dynamics.hpp"
#include "aqg/grid.hpp"
#include "aqg/params.hpp"

namespace aqg {

/// Full description of a simulation run, read from the flat sectioned
/// key = value text format (see serialize_config for the canonical form).
struct RunConfig {
    GridSpec grid{64, 64, 6.283185307179586, 6.283185307179586};
    DissipationParams params;
    StepperConfig stepper;
    InitialData init;
    double t_end = 1.0;
    long sample_every = 1;
    long snapshot_every = 0;  // 0: first and last step only
    GalerkinLevel galerkin;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    bool norm_s_auto = true;  // s = max(2-2a, 2-2b) when true
    double norm_s = 0.0;
    double blowup_factor = 1e6;
    double decay_threshold = 0.1;

    long steps() const;
    double resolved_norm_s() const {
        return norm_s_auto ? critical_exponent(params) : norm_s;
    }

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates. Throws ConfigError with a 1-based line anchor.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical serialization: fixed section and key order, shortest
/// round-trip decimals. parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace aqg
