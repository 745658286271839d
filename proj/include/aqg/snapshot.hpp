#pragma once

#include <filesystem>

#include "aqg/grid.hpp"

namespace aqg {

/// Binary state snapshot: magic "AQG1", u32 version, u32 n1, u32 n2,
/// f64 l1, f64 l2, f64 t, then n1*n2 f64 collocation values, row-major
/// with x2 fastest, everything little-endian.
struct Snapshot {
    double t = 0.0;
    RealField field;
};

void write_snapshot(const std::filesystem::path& path, const RealField& f, double t);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace aqg
