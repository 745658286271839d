#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "aqg/grid.hpp"

namespace aqg::plot {

using Color = std::array<unsigned char, 3>;

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_y = false;
    int width = 900;
    int height = 600;
};

/// Line chart rendered to a PNG. With log_y, non-positive values are
/// dropped from their curves.
void render_line_chart(const std::filesystem::path& path, const std::vector<Curve>& curves,
                       const ChartOptions& opts);

/// Field heatmap on a symmetric diverging scale (blue-white-red),
/// x1 rightwards, x2 upwards.
void render_heatmap(const std::filesystem::path& path, const RealField& f,
                    const std::string& title);

}  // namespace aqg::plot
