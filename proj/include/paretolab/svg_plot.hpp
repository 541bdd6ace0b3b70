#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace paretolab {

struct PlotSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

enum class PlotStyle { linear, loglog };

/// Writes a standalone SVG scatter plot with a least-squares line and slope
/// annotation per series, plus a legend. Throws std::invalid_argument for
/// no series or an empty series, std::runtime_error if the file cannot be
/// written.
void emit_plot(const std::vector<PlotSeries>& series, PlotStyle style,
               const std::filesystem::path& path, const std::string& title = "");

}  // namespace paretolab
