#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rcsim {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, std::optional<double>>> points;  ///< gaps break the line
};

struct ChartPanel {
    std::string title;
    std::string y_label;
    std::vector<ChartSeries> series;
};

/// A 2x2 grid of line panels sharing an x axis (fraction removed), with a
/// dashed vertical rule at rule_x.
struct PanelFigure {
    std::string title;
    std::vector<ChartPanel> panels;
    double rule_x = 0.01;
};

struct BarGroup {
    std::string label;                                  ///< x category (scenario)
    std::vector<std::pair<std::string, double>> bars;  ///< (series, value)
};

std::string render_panel_svg(const PanelFigure& fig);
std::string render_bar_svg(const std::string& title, const std::string& y_label, const std::vector<BarGroup>& groups);

/// Figures built from the averaged trace CSVs found in `run_dir/avg` (or in
/// `run_dir` itself): one PanelFigure per (strategy, mode) with D, APL, E and
/// C panels and one series per scenario. The rule sits at the rich fraction
/// read from run_dir/manifest.txt (0.01 if absent). Throws SchemaError if no
/// CSV is found or any CSV is malformed.
struct ChartSet {
    std::vector<std::pair<std::string, PanelFigure>> figures;  ///< (file stem, figure)
    std::vector<BarGroup> degree_variance;                   ///< baseline variance per scenario and mode
};

ChartSet build_charts(const std::filesystem::path& run_dir);

/// Writes <strategy>_<mode>.svg per figure plus degree_variance.svg. All
/// inputs are validated before any file is written. Returns written paths.
std::vector<std::filesystem::path> emit_charts(const std::filesystem::path& run_dir,
                                               const std::filesystem::path& out_dir);

}  // namespace rcsim
