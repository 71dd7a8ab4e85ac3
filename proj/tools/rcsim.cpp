// rcsim: generate scale-free instances, thicken their core or periphery,
// measure them and run removal experiments.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rcsim/charts.hpp"
#include "rcsim/edge_list.hpp"
#include "rcsim/errors.hpp"
#include "rcsim/experiment.hpp"
#include "rcsim/random.hpp"
#include "rcsim/trace_csv.hpp"

namespace fs = std::filesystem;
using namespace rcsim;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Three decimals with trailing zeros dropped: 1.333, 0.833, 2, 0.
std::string short_number(const std::optional<double>& v) {
    if (!v) return "NA";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", *v);
    std::string s = buf;
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s == "-0" ? "0" : s;
}

// Options shared by every subcommand that reads experiment settings.
struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<double> mean_degree;
    std::optional<double> gamma;
    std::optional<std::size_t> k_min;
    std::optional<double> rich_fraction;
    std::optional<std::size_t> stride;
    std::optional<double> stop_fraction;
    std::string low_degree;

    ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        if (!config_path.empty()) load_config(cfg, config_path);
        if (seed) cfg.master_seed = *seed;
        if (n) cfg.gen.n = *n;
        if (mean_degree) cfg.gen.target_mean_degree = *mean_degree;
        if (gamma) cfg.gen.gamma = *gamma;
        if (k_min) cfg.gen.k_min = *k_min;
        if (rich_fraction) cfg.rich_fraction = *rich_fraction;
        if (stride) cfg.stride = *stride;
        if (stop_fraction) cfg.stop_fraction = *stop_fraction;
        if (!low_degree.empty()) apply_setting(cfg, "clustering_low_degree", low_degree);
        return cfg;
    }
};

std::uint64_t require_seed(const ExperimentConfig& cfg) {
    if (!cfg.master_seed) throw UsageError("--seed is required (or set master_seed in the config file)");
    return *cfg.master_seed;
}

void add_config(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "key = value settings file");
    cmd->add_option("--seed", c.seed, "master seed");
}

void add_generator(CLI::App* cmd, Common& c) {
    cmd->add_option("--n", c.n, "node count");
    cmd->add_option("--mean-degree", c.mean_degree, "target mean degree");
    cmd->add_option("--gamma", c.gamma, "power-law exponent");
    cmd->add_option("--k-min", c.k_min, "minimum degree");
}

int cmd_generate(const Common& common, std::size_t instances, const fs::path& out_dir) {
    ExperimentConfig cfg = common.resolve();
    require_seed(cfg);
    fs::create_directories(out_dir);
    GenConfig gen = cfg.gen;
    gen.seed = sequence_seed(cfg, 0);
    const DegreeSequence seq = powerlaw_degree_sequence(gen);
    write_degree_sequence(out_dir / "degrees.txt", seq);
    std::size_t stubs = 0;
    for (auto k : seq) stubs += k;
    for (std::size_t i = 0; i < instances; ++i) {
        const auto cm = configuration_model(seq, instance_seed(cfg, i));
        const auto path = out_dir / ("instance_" + std::to_string(i) + ".edges");
        write_edge_list(path, cm.graph);
        std::cout << path.string() << ": nodes=" << cm.graph.node_count() << " links=" << cm.graph.link_count()
                  << " erased_fraction=" << format_number(cm.erased_fraction(stubs)) << '\n';
    }
    return 0;
}

int cmd_thicken(const Common& common, const fs::path& edges, std::optional<double> target, bool use_default,
                const std::string& mode_text, std::optional<long long> budget, const fs::path& out,
                const fs::path& manifest_path) {
    if (target.has_value() == use_default) throw UsageError("give exactly one of --target-density or --default");
    ExperimentConfig cfg = common.resolve();
    const std::uint64_t seed = require_seed(cfg);
    const ThickeningMode mode = parse_mode(mode_text);
    Graph g = read_edge_list(edges);
    const RichSet rs = rich_nodes(g, cfg.rich_fraction, derive_seed(seed, "rich"));
    const ScenarioSpec spec{target ? "d" + format_number(*target) : "default", target};
    MutationReport report;
    if (budget) {
        if (mode != ThickeningMode::Periphery) throw UsageError("--budget only applies to --mode periphery");
        report = thicken_periphery(g, rs, *budget, derive_seed(seed, "thicken"));
    } else {
        report = apply_scenario(g, rs, spec, mode, derive_seed(seed, "thicken"));
    }
    if (!out.empty()) write_edge_list(out, g);

    std::ostringstream text;
    text << "input = " << edges.string() << '\n'
         << "scenario = " << spec.label << '\n'
         << "mode = " << to_string(mode) << '\n'
         << "rich_fraction = " << format_number(rs.fraction) << '\n'
         << "rich_size = " << rs.size() << '\n'
         << "default_internal_links = " << rs.internal_links << '\n'
         << "budget = " << report.budget << '\n'
         << "links_added = " << report.added << '\n'
         << "links_removed = " << report.removed << '\n'
         << "achieved_density = " << format_number(report.achieved_density) << '\n';
    if (!manifest_path.empty()) {
        std::ofstream m(manifest_path);
        if (!m) throw std::runtime_error("cannot write " + manifest_path.string());
        m << text.str();
    }
    std::cout << text.str();
    return 0;
}

int cmd_measure(const Common& common, const fs::path& edges) {
    const ExperimentConfig cfg = common.resolve();
    const Graph g = read_edge_list(edges);
    const MetricVector m = measure_point(g, cfg.metrics);
    std::cout << "D=" << short_number(m.diameter) << ", APL=" << short_number(m.apl)
              << ", E=" << short_number(m.efficiency) << ", C=" << short_number(m.clustering)
              << ", var=" << short_number(m.degree_variance) << '\n';
    return 0;
}

int cmd_trace(const Common& common, Strategy strategy, const fs::path& edges, const fs::path& out,
              const std::string& label) {
    const ExperimentConfig cfg = common.resolve();
    const std::uint64_t seed = require_seed(cfg);
    const Graph g = read_edge_list(edges);
    RemovalPlan plan = removal_order(g, strategy, seed);
    plan.stride = cfg.stride.value_or(default_stride(g.alive_count()));
    plan.stop_fraction = cfg.stop_fraction;
    Trace trace = run_removal(g, plan, cfg.metrics);
    trace.meta.scenario = label;
    trace.meta.mode = "none";
    trace.meta.sources = {{seed, seed}};
    if (out.empty()) {
        write_trace_csv(std::cout, trace);
    } else {
        write_trace_csv(out, trace);
    }
    return 0;
}

int cmd_scenario_run(const Common& common, std::optional<std::size_t> instances, std::optional<std::size_t> replicas,
                     std::optional<std::size_t> workers, const std::string& out_dir) {
    ExperimentConfig cfg = common.resolve();
    if (instances) cfg.instances = *instances;
    if (replicas) cfg.replicas = *replicas;
    if (workers) cfg.workers = *workers;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    require_seed(cfg);
    const RunManifest m = run_experiment(cfg);
    std::cout << "raw traces: " << m.raw_traces.size() << "\naveraged: " << m.averaged_files.size()
              << "\nmanifest: " << (cfg.output_dir / "manifest.txt").string() << '\n';
    return 0;
}

int cmd_plot(const fs::path& in, const fs::path& out) {
    for (const auto& p : emit_charts(in, out)) std::cout << p.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rcsim: rich-club and periphery thickening resilience experiments"};
    app.require_subcommand(1);

    Common common;

    auto* generate = app.add_subcommand("generate", "write a degree sequence and configuration-model edge lists");
    std::size_t gen_instances = 1;
    std::string gen_out;
    add_config(generate, common);
    add_generator(generate, common);
    generate->add_option("--instances", gen_instances, "graphs realized from the sequence");
    generate->add_option("--out", gen_out, "output directory")->required();

    auto* thicken = app.add_subcommand("thicken", "apply one scenario to an edge list");
    std::string th_edges, th_mode = "core", th_out, th_manifest;
    std::optional<double> th_target;
    std::optional<long long> th_budget;
    bool th_default = false;
    add_config(thicken, common);
    thicken->add_option("edges", th_edges, "input edge list")->required();
    thicken->add_option("--target-density", th_target, "core density that defines the link budget");
    thicken->add_flag("--default", th_default, "leave the instance untouched");
    thicken->add_option("--mode", th_mode, "core or periphery");
    thicken->add_option("--budget", th_budget, "explicit periphery budget (negative removes)");
    thicken->add_option("--rich-fraction", common.rich_fraction, "rich set fraction");
    thicken->add_option("--out", th_out, "write the thickened edge list here");
    thicken->add_option("--manifest", th_manifest, "write the mutation report here");

    auto* measure = app.add_subcommand("measure", "print D, APL, E, C and degree variance of an edge list");
    std::string me_edges;
    measure->add_option("--config", common.config_path, "key = value settings file");
    measure->add_option("edges", me_edges, "input edge list")->required();
    measure->add_option("--clustering-low-degree", common.low_degree, "zero or exclude");

    std::string tr_edges, tr_out, tr_label = "input";
    const auto add_trace = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        add_config(cmd, common);
        cmd->add_option("edges", tr_edges, "input edge list")->required();
        cmd->add_option("--stride", common.stride, "measure every N removals");
        cmd->add_option("--stop", common.stop_fraction, "stop after this fraction of nodes");
        cmd->add_option("--out", tr_out, "trace CSV (default stdout)");
        cmd->add_option("--label", tr_label, "scenario column value");
        cmd->add_option("--clustering-low-degree", common.low_degree, "zero or exclude");
        return cmd;
    };
    auto* attack = add_trace("attack", "simultaneous degree-targeted attack trace");
    auto* error = add_trace("error", "random-failure trace");

    auto* run = app.add_subcommand("scenario-run", "run the full scenario grid");
    std::optional<std::size_t> run_instances, run_replicas, run_workers;
    std::string run_out;
    add_config(run, common);
    add_generator(run, common);
    run->add_option("--instances", run_instances, "graphs per degree sequence");
    run->add_option("--replicas", run_replicas, "removal replicas per graph");
    run->add_option("--workers", run_workers, "worker threads");
    run->add_option("--stride", common.stride, "measure every N removals");
    run->add_option("--stop", common.stop_fraction, "stop after this fraction of nodes");
    run->add_option("--rich-fraction", common.rich_fraction, "rich set fraction");
    run->add_option("--out", run_out, "output directory");

    auto* plot = app.add_subcommand("plot", "render SVG charts from a scenario-run directory");
    std::string pl_in, pl_out;
    plot->add_option("--in", pl_in, "scenario-run output directory")->required();
    plot->add_option("--out", pl_out, "chart directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(common, gen_instances, gen_out);
        if (*thicken) {
            return cmd_thicken(common, th_edges, th_target, th_default, th_mode, th_budget, th_out, th_manifest);
        }
        if (*measure) return cmd_measure(common, me_edges);
        if (*attack) return cmd_trace(common, Strategy::AttackSimultaneous, tr_edges, tr_out, tr_label);
        if (*error) return cmd_trace(common, Strategy::Error, tr_edges, tr_out, tr_label);
        if (*run) return cmd_scenario_run(common, run_instances, run_replicas, run_workers, run_out);
        if (*plot) return cmd_plot(pl_in, pl_out);
    } catch (const UsageError& e) {
        std::cerr << "rcsim: " << e.what() << '\n' << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "rcsim: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}
