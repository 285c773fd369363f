#pragma once

// Minimal static SVG plots: overlaid line series and grouped bar charts.

#include <filesystem>
#include <string>
#include <vector>

namespace eulersel {

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

void write_line_svg(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

// One group of bars per category; `groups` maps a series name to one value
// per category.
void write_bar_svg(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::string>& categories,
                   const std::vector<std::pair<std::string, std::vector<double>>>& groups);

} // namespace eulersel
