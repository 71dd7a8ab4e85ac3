#include "rcsim/charts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rcsim/errors.hpp"
#include "rcsim/experiment.hpp"
#include "rcsim/trace_csv.hpp"

namespace rcsim {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded(double lo, double hi) {
    if (!(lo <= hi)) return {0.0, 1.0};
    if (hi - lo < 1e-12) return {lo - 0.5, hi + 0.5};
    const double pad = 0.05 * (hi - lo);
    return {lo >= 0.0 && lo - pad < 0.0 ? 0.0 : lo - pad, hi + pad};
}

void axis_ticks(std::ostringstream& svg, double x0, double y0, double w, double h, Range xr, Range yr) {
    svg << "<g class=\"axes\" stroke=\"#333\" stroke-width=\"1\">"
        << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0 + h) << "\" x2=\"" << num(x0 + w) << "\" y2=\""
        << num(y0 + h) << "\"/>"
        << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y0 + h)
        << "\"/></g>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        const double px = x0 + w * t / 4.0;
        svg << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + h + 14) << "\" font-size=\"10\" text-anchor=\"middle\">"
            << format_number(fx) << "</text>";
        const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        const double py = y0 + h - h * t / 4.0;
        svg << "<text x=\"" << num(x0 - 4) << "\" y=\"" << num(py + 3) << "\" font-size=\"10\" text-anchor=\"end\">"
            << format_number(fy) << "</text>";
    }
    svg << '\n';
}

}  // namespace

std::string render_panel_svg(const PanelFigure& fig) {
    constexpr double kPanelW = 420;
    constexpr double kPanelH = 300;
    constexpr double kMarginL = 60;
    constexpr double kMarginT = 40;
    constexpr double kPlotW = kPanelW - 90;
    constexpr double kPlotH = kPanelH - 80;
    const double width = 2 * kPanelW + 160;
    const double height = 2 * kPanelH + kMarginT;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(width / 2) << "\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">" << escape(fig.title)
        << "</text>\n";

    for (std::size_t p = 0; p < fig.panels.size(); ++p) {
        const ChartPanel& panel = fig.panels[p];
        const double x0 = kMarginL + static_cast<double>(p % 2) * kPanelW;
        const double y0 = kMarginT + 20 + static_cast<double>(p / 2) * kPanelH;

        Range xr{0.0, 0.0};
        double ylo = INFINITY;
        double yhi = -INFINITY;
        for (const auto& s : panel.series) {
            for (const auto& [x, y] : s.points) {
                xr.hi = std::max(xr.hi, x);
                if (y) {
                    ylo = std::min(ylo, *y);
                    yhi = std::max(yhi, *y);
                }
            }
        }
        if (xr.hi <= 0.0) xr.hi = 1.0;
        const Range yr = std::isfinite(ylo) ? padded(ylo, yhi) : Range{};
        const auto px = [&](double x) { return x0 + kPlotW * (x - xr.lo) / (xr.hi - xr.lo); };
        const auto py = [&](double y) { return y0 + kPlotH - kPlotH * (y - yr.lo) / (yr.hi - yr.lo); };

        svg << "<g class=\"panel\">\n"
            << "<text x=\"" << num(x0 + kPlotW / 2) << "\" y=\"" << num(y0 - 8)
            << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(panel.title) << "</text>\n";
        axis_ticks(svg, x0, y0, kPlotW, kPlotH, xr, yr);
        svg << "<text x=\"" << num(x0 + kPlotW / 2) << "\" y=\"" << num(y0 + kPlotH + 30)
            << "\" font-size=\"11\" text-anchor=\"middle\">fraction of nodes removed</text>\n"
            << "<text x=\"" << num(x0 - 45) << "\" y=\"" << num(y0 + kPlotH / 2) << "\" font-size=\"11\" transform=\"rotate(-90 "
            << num(x0 - 45) << ' ' << num(y0 + kPlotH / 2) << ")\" text-anchor=\"middle\">" << escape(panel.y_label)
            << "</text>\n";
        if (fig.rule_x >= xr.lo && fig.rule_x <= xr.hi) {
            svg << "<line class=\"rich-rule\" x1=\"" << num(px(fig.rule_x)) << "\" y1=\"" << num(y0) << "\" x2=\""
                << num(px(fig.rule_x)) << "\" y2=\"" << num(y0 + kPlotH)
                << "\" stroke=\"#555\" stroke-dasharray=\"5,4\" data-x=\"" << format_number(fig.rule_x) << "\"/>\n";
        }
        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const auto& series = panel.series[s];
            const char* color = kPalette[s % std::size(kPalette)];
            svg << "<g class=\"series\" data-label=\"" << escape(series.label) << "\" stroke=\"" << color
                << "\" fill=\"none\" stroke-width=\"1.5\">";
            std::string run;
            const auto flush = [&] {
                if (!run.empty()) svg << "<polyline points=\"" << run << "\"/>";
                run.clear();
            };
            for (const auto& [x, y] : series.points) {
                if (!y) {
                    flush();
                    continue;
                }
                run += (run.empty() ? "" : " ") + num(px(x)) + "," + num(py(*y));
            }
            flush();
            svg << "</g>\n";
            if (p == 1) {
                const double ly = kMarginT + 30 + 16.0 * static_cast<double>(s);
                const double lx = 2 * kPanelW + 20;
                svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 18) << "\" y2=\""
                    << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
                    << "<text x=\"" << num(lx + 22) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
                    << escape(series.label) << "</text>\n";
            }
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_bar_svg(const std::string& title, const std::string& y_label, const std::vector<BarGroup>& groups) {
    constexpr double kX0 = 70;
    constexpr double kY0 = 50;
    constexpr double kH = 300;
    const double group_w = 90;
    const double width = kX0 + group_w * static_cast<double>(groups.size()) + 160;
    std::vector<std::string> names;
    double hi = 0.0;
    for (const auto& g : groups) {
        for (const auto& [name, v] : g.bars) {
            if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
            hi = std::max(hi, v);
        }
    }
    const Range yr = padded(0.0, hi > 0 ? hi : 1.0);
    const double plot_w = group_w * static_cast<double>(groups.size());
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(kY0 + kH + 60)
        << "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(width / 2) << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << escape(title)
        << "</text>\n";
    axis_ticks(svg, kX0, kY0, plot_w, kH, Range{0, 1}, yr);
    svg << "<text x=\"" << num(kX0 - 50) << "\" y=\"" << num(kY0 + kH / 2) << "\" font-size=\"11\" transform=\"rotate(-90 "
        << num(kX0 - 50) << ' ' << num(kY0 + kH / 2) << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
    const double bar_w = (group_w - 20) / static_cast<double>(std::max<std::size_t>(1, names.size()));
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const double gx = kX0 + group_w * static_cast<double>(gi) + 10;
        for (const auto& [name, v] : groups[gi].bars) {
            const auto si = static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
            const double h = kH * (v - yr.lo) / (yr.hi - yr.lo);
            svg << "<rect class=\"bar\" x=\"" << num(gx + bar_w * static_cast<double>(si)) << "\" y=\""
                << num(kY0 + kH - h) << "\" width=\"" << num(bar_w - 2) << "\" height=\"" << num(h) << "\" fill=\""
                << kPalette[si % std::size(kPalette)] << "\"><title>" << escape(name) << ' ' << format_number(v)
                << "</title></rect>\n";
        }
        svg << "<text x=\"" << num(gx + (group_w - 20) / 2) << "\" y=\"" << num(kY0 + kH + 30)
            << "\" font-size=\"10\" text-anchor=\"middle\">" << escape(groups[gi].label) << "</text>\n";
    }
    for (std::size_t si = 0; si < names.size(); ++si) {
        const double ly = kY0 + 16.0 * static_cast<double>(si);
        svg << "<rect x=\"" << num(kX0 + plot_w + 20) << "\" y=\"" << num(ly - 8) << "\" width=\"12\" height=\"12\" fill=\""
            << kPalette[si % std::size(kPalette)] << "\"/><text x=\"" << num(kX0 + plot_w + 38) << "\" y=\""
            << num(ly + 2) << "\" font-size=\"11\">" << escape(names[si]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

ChartSet build_charts(const fs::path& run_dir) {
    const fs::path csv_dir = fs::is_directory(run_dir / "avg") ? run_dir / "avg" : run_dir;
    std::vector<fs::path> files;
    if (fs::is_directory(csv_dir)) {
        for (const auto& entry : fs::directory_iterator(csv_dir)) {
            if (entry.path().extension() == ".csv") files.push_back(entry.path());
        }
    }
    if (files.empty()) throw SchemaError("no averaged trace CSV files in " + csv_dir.string());
    std::sort(files.begin(), files.end());

    double rule = 0.01;
    for (const fs::path& m : {run_dir / "manifest.txt", csv_dir.parent_path() / "manifest.txt"}) {
        if (auto f = manifest_rich_fraction(m)) {
            rule = *f;
            break;
        }
    }

    std::vector<Trace> traces;
    for (const auto& f : files) traces.push_back(read_trace_csv(f));
    std::stable_sort(traces.begin(), traces.end(), [](const Trace& a, const Trace& b) {
        return a.meta.scenario < b.meta.scenario;
    });

    using Field = std::optional<double> MetricVector::*;
    const std::pair<const char*, Field> metrics[] = {{"Diameter (D)", &MetricVector::diameter},
                                                     {"Average path length (APL)", &MetricVector::apl},
                                                     {"Global efficiency (E)", &MetricVector::efficiency},
                                                     {"Global clustering (C)", &MetricVector::clustering}};

    std::map<std::string, PanelFigure> figures;
    std::map<std::string, BarGroup> variance;
    std::vector<std::string> variance_order;
    for (const Trace& t : traces) {
        const std::string stem = std::string(to_string(t.meta.strategy)) + "_" + t.meta.mode;
        PanelFigure& fig = figures[stem];
        if (fig.panels.empty()) {
            fig.title = std::string(t.meta.strategy == Strategy::Error ? "Error" : "Simultaneous attack") + ", " +
                        t.meta.mode + " thickening";
            fig.rule_x = rule;
            for (const auto& [title, field] : metrics) fig.panels.push_back({title, title, {}});
        }
        for (std::size_t p = 0; p < std::size(metrics); ++p) {
            ChartSeries s{t.meta.scenario, {}};
            for (const auto& pt : t.points) s.points.emplace_back(pt.removed_fraction, pt.metrics.*metrics[p].second);
            fig.panels[p].series.push_back(std::move(s));
        }
        // Baseline variance does not depend on strategy; take the first seen.
        if (!variance.contains(t.meta.scenario)) variance_order.push_back(t.meta.scenario);
        BarGroup& g = variance[t.meta.scenario];
        g.label = t.meta.scenario;
        const auto& base = t.points.front().metrics.degree_variance;
        const bool seen = std::any_of(g.bars.begin(), g.bars.end(), [&](const auto& b) { return b.first == t.meta.mode; });
        if (base && !seen) g.bars.emplace_back(t.meta.mode, *base);
    }

    ChartSet out;
    for (auto& [stem, fig] : figures) out.figures.emplace_back(stem, std::move(fig));
    for (const auto& label : variance_order) out.degree_variance.push_back(variance[label]);
    return out;
}

std::vector<fs::path> emit_charts(const fs::path& run_dir, const fs::path& out_dir) {
    const ChartSet charts = build_charts(run_dir);
    fs::create_directories(out_dir);
    std::vector<fs::path> written;
    const auto save = [&](const fs::path& path, const std::string& text) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << text;
        written.push_back(path);
    };
    for (const auto& [stem, fig] : charts.figures) save(out_dir / (stem + ".svg"), render_panel_svg(fig));
    save(out_dir / "degree_variance.svg",
         render_bar_svg("Degree variance after thickening", "variance of degree", charts.degree_variance));
    return written;
}

}  // namespace rcsim
