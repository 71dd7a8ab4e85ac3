#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "rcsim/charts.hpp"
#include "rcsim/errors.hpp"
#include "rcsim/experiment.hpp"
#include "rcsim/trace_csv.hpp"

using namespace rcsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rcsim-test-" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.gen.n = 200;
    cfg.rich_fraction = 0.05;
    cfg.instances = 2;
    cfg.replicas = 2;
    cfg.stride = 5;
    cfg.master_seed = 17;
    cfg.output_dir = out;
    return cfg;
}

std::size_t count_files(const fs::path& dir) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file();
    return n;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("scenario table") {
    const auto s = default_scenarios();
    REQUIRE(s.size() == 6);
    CHECK(s[0].label == "s1-d0");
    CHECK(s[1].label == "s2-default");
    CHECK_FALSE(s[1].target_density.has_value());
    CHECK(*s[5].target_density == 1.0);

    RichSet rs;
    for (NodeId i = 0; i < 50; ++i) rs.members.push_back(i);
    rs.internal_links = 112;
    CHECK(scenario_budget(rs, s[1]) == 0);
    CHECK(scenario_budget(rs, s[5]) == 1113);
    CHECK(scenario_budget(rs, s[0]) == -112);
}

TEST_CASE("config parsing") {
    ExperimentConfig cfg;
    std::istringstream text(
        "# comment\n"
        "n = 1000   # trailing\n"
        "scenarios = 0, default, 1\n"
        "modes = core\n"
        "strategies = attack\n"
        "seed = 9\n"
        "stride = auto\n"
        "clustering_low_degree = exclude\n");
    parse_config(cfg, text, "inline");
    CHECK(cfg.gen.n == 1000);
    REQUIRE(cfg.scenarios.size() == 3);
    CHECK(cfg.scenarios[2].label == "s3-d1");
    CHECK(cfg.modes == std::vector{ThickeningMode::Core});
    CHECK(cfg.strategies == std::vector{Strategy::AttackSimultaneous});
    CHECK(*cfg.master_seed == 9);
    CHECK_FALSE(cfg.stride.has_value());
    CHECK(cfg.metrics.low_degree == LowDegreeClustering::Exclude);
    CHECK_NOTHROW(validate(cfg));

    ExperimentConfig echoed;
    std::istringstream round(describe(cfg));
    parse_config(echoed, round, "echo");
    CHECK(describe(echoed) == describe(cfg));

    std::istringstream unknown("nodes = 5\n");
    try {
        parse_config(cfg, unknown, "bad.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bad.cfg:1") != std::string::npos);
        CHECK(std::string(e.what()).find("nodes") != std::string::npos);
    }
    std::istringstream no_eq("n 5\n");
    CHECK_THROWS_AS(parse_config(cfg, no_eq, "x"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "instances", "ten"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "modes", "middle"), ConfigError);

    try {
        load_config(cfg, "/nonexistent/missing.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/missing.cfg") != std::string::npos);
    }

    ExperimentConfig unseeded;
    CHECK_THROWS_AS(validate(unseeded), ConfigError);
    ExperimentConfig bad = small_config("x");
    bad.replicas = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = small_config("x");
    bad.scenarios = {{"s1-d2", 2.0}};
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("single trace run writes equal raw and averaged files") {
    const fs::path out = scratch("single");
    ExperimentConfig cfg = small_config(out);
    cfg.instances = 1;
    cfg.replicas = 1;
    cfg.scenarios = {default_scenarios()[5]};
    cfg.modes = {ThickeningMode::Core};
    cfg.strategies = {Strategy::AttackSimultaneous};
    const RunManifest m = run_experiment(cfg);
    CHECK(count_files(out / "raw") == 1);
    CHECK(count_files(out / "avg") == 1);
    REQUIRE(m.raw_traces.size() == 1);
    CHECK(slurp(out / m.raw_traces[0].file) == slurp(out / m.averaged_files[0]));
    CHECK(fs::exists(out / "manifest.txt"));
    fs::remove_all(out);
}

TEST_CASE("grid run: counts, determinism, averaging, scenario 2 equivalence") {
    const fs::path a = scratch("grid-a");
    const fs::path b = scratch("grid-b");
    ExperimentConfig cfg = small_config(a);
    const RunManifest m = run_experiment(cfg);
    CHECK(m.raw_traces.size() == 6 * 2 * 2 * 2 * 2);
    CHECK(m.averaged_files.size() == 6 * 2 * 2);
    CHECK(count_files(a / "raw") == 96);
    CHECK(count_files(a / "avg") == 24);

    cfg.output_dir = b;
    cfg.workers = 3;
    run_experiment(cfg);
    for (const auto& e : fs::directory_iterator(a / "raw")) CHECK(slurp(e.path()) == slurp(b / "raw" / e.path().filename()));
    for (const auto& e : fs::directory_iterator(a / "avg")) CHECK(slurp(e.path()) == slurp(b / "avg" / e.path().filename()));

    // averaged rows are the mean of the raw rows, up to the 6-digit output
    const Trace avg = read_trace_csv(a / "avg" / "s4-d0.5_periphery_error.csv");
    std::vector<Trace> raw;
    for (int i = 0; i < 2; ++i)
        for (int r = 0; r < 2; ++r)
            raw.push_back(read_trace_csv(a / "raw" / ("s4-d0.5_periphery_error_i" + std::to_string(i) + "_r" +
                                                      std::to_string(r) + ".csv")));
    const Trace mean = average_traces(raw);
    REQUIRE(mean.points.size() == avg.points.size());
    for (std::size_t p = 0; p < avg.points.size(); ++p) {
        const auto& x = avg.points[p].metrics;
        const auto& y = mean.points[p].metrics;
        CHECK(x.efficiency.has_value() == y.efficiency.has_value());
        if (x.efficiency) CHECK(*x.efficiency == doctest::Approx(*y.efficiency).epsilon(1e-5));
        if (x.apl) CHECK(*x.apl == doctest::Approx(*y.apl).epsilon(1e-5));
        if (x.clustering) CHECK(*x.clustering == doctest::Approx(*y.clustering).epsilon(1e-5));
    }

    // the default scenario is untouched in both modes
    for (const std::string strategy : {"error", "attack"}) {
        const Trace core = read_trace_csv(a / "avg" / ("s2-default_core_" + strategy + ".csv"));
        const Trace peri = read_trace_csv(a / "avg" / ("s2-default_periphery_" + strategy + ".csv"));
        REQUIRE(core.points.size() == peri.points.size());
        for (std::size_t p = 0; p < core.points.size(); ++p) CHECK(core.points[p].metrics == peri.points[p].metrics);
    }

    // every raw trace's seeds are listed in the manifest
    const std::string manifest = slurp(a / "manifest.txt");
    for (const auto& t : m.raw_traces) {
        CHECK(manifest.find(t.file + " = " + t.scenario) != std::string::npos);
        CHECK(manifest.find(std::to_string(t.seeds.replica_seed)) != std::string::npos);
    }
    CHECK(manifest.find("rich_fraction = 0.05") != std::string::npos);
    CHECK(count(manifest, "[instance ") == 2);
    CHECK(*manifest_rich_fraction(a / "manifest.txt") == 0.05);

    SUBCASE("charts from the run") {
        const ChartSet set = build_charts(a);
        REQUIRE(set.figures.size() == 4);
        for (const auto& [stem, fig] : set.figures) {
            CHECK(fig.panels.size() == 4);
            for (const auto& panel : fig.panels) CHECK(panel.series.size() == 6);
            CHECK(fig.rule_x == 0.05);
        }
        CHECK(set.degree_variance.size() == 6);
        const fs::path charts = scratch("charts");
        const auto written = emit_charts(a, charts);
        CHECK(written.size() == 5);
        const std::string svg = slurp(charts / "error_core.svg");
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(count(svg, "class=\"series\"") == 24);
        CHECK(svg.find("stroke-dasharray") != std::string::npos);
        CHECK(fs::exists(charts / "degree_variance.svg"));
        fs::remove_all(charts);
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("chart input errors") {
    const fs::path in = scratch("chart-in");
    const fs::path out = scratch("chart-out");
    fs::create_directories(in);
    CHECK_THROWS_AS(emit_charts(in, out), SchemaError);
    std::ofstream(in / "empty.csv").close();
    try {
        emit_charts(in, out);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("empty.csv") != std::string::npos);
    }
    CHECK_FALSE(fs::exists(out));
    std::ofstream(in / "empty.csv") << "scenario,mode\n";
    CHECK_THROWS_AS(emit_charts(in, out), SchemaError);
    CHECK_FALSE(fs::exists(out));
    fs::remove_all(in);
}

TEST_CASE("panel rendering") {
    PanelFigure fig;
    fig.title = "t";
    fig.rule_x = 0.01;
    for (int k = 0; k < 4; ++k) {
        ChartPanel panel{"p" + std::to_string(k), "y", {}};
        for (int s = 0; s < 6; ++s) {
            panel.series.push_back({"s" + std::to_string(s), {{0.0, 1.0}, {0.5, std::nullopt}, {1.0, 0.5}, {1.0, 0.0}}});
        }
        fig.panels.push_back(panel);
    }
    const std::string svg = render_panel_svg(fig);
    CHECK(count(svg, "class=\"series\"") == 24);
    CHECK(count(svg, "class=\"rich-rule\"") == 4);
    CHECK(svg.find("data-x=\"0.01\"") != std::string::npos);
}
