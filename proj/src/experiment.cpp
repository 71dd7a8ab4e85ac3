#include "rcsim/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "rcsim/errors.hpp"
#include "rcsim/parallel.hpp"
#include "rcsim/random.hpp"
#include "rcsim/trace_csv.hpp"

namespace rcsim {

namespace fs = std::filesystem;

std::string_view to_string(ThickeningMode m) {
    return m == ThickeningMode::Core ? "core" : "periphery";
}

ThickeningMode parse_mode(std::string_view text) {
    if (text == "core") return ThickeningMode::Core;
    if (text == "periphery") return ThickeningMode::Periphery;
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected core or periphery)");
}

std::string scenario_label(std::size_t index, std::optional<double> target_density) {
    std::string label = "s" + std::to_string(index + 1) + "-";
    return target_density ? label + "d" + format_number(*target_density) : label + "default";
}

std::vector<ScenarioSpec> default_scenarios() {
    const std::optional<double> densities[] = {0.0, std::nullopt, 0.25, 0.50, 0.75, 1.0};
    std::vector<ScenarioSpec> out;
    for (std::size_t i = 0; i < std::size(densities); ++i) out.push_back({scenario_label(i, densities[i]), densities[i]});
    return out;
}

long long scenario_budget(const RichSet& rs, const ScenarioSpec& spec) {
    return spec.target_density ? links_for_target(rs, *spec.target_density) : 0;
}

MutationReport apply_scenario(Graph& g, const RichSet& rs, const ScenarioSpec& spec, ThickeningMode mode,
                              std::uint64_t seed) {
    if (!spec.target_density) {
        MutationReport untouched;
        untouched.achieved_density = core_density(g, rs);
        return untouched;
    }
    if (mode == ThickeningMode::Core) return thicken_core(g, rs, *spec.target_density, seed);
    return thicken_periphery(g, rs, scenario_budget(rs, spec), seed);
}

// --- configuration -------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + std::string(key) + "': expected a non-negative integer, got '" +
                          std::string(value) + "'");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    try {
        std::size_t used = 0;
        const std::string text(value);
        const double out = std::stod(text, &used);
        if (used == text.size()) return out;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + std::string(key) + "': expected a number, got '" + std::string(value) + "'");
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config key '" + std::string(key) + "': expected true or false");
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "n") {
        cfg.gen.n = parse_integer<std::size_t>(key, value);
    } else if (key == "mean_degree") {
        cfg.gen.target_mean_degree = parse_real(key, value);
    } else if (key == "gamma") {
        cfg.gen.gamma = parse_real(key, value);
    } else if (key == "k_min") {
        cfg.gen.k_min = parse_integer<std::size_t>(key, value);
    } else if (key == "rich_fraction") {
        cfg.rich_fraction = parse_real(key, value);
    } else if (key == "scenarios") {
        cfg.scenarios.clear();
        for (auto item : split_list(value)) {
            const auto density = item == "default" ? std::nullopt : std::optional<double>(parse_real(key, item));
            cfg.scenarios.push_back({scenario_label(cfg.scenarios.size(), density), density});
        }
    } else if (key == "modes") {
        cfg.modes.clear();
        for (auto item : split_list(value)) cfg.modes.push_back(parse_mode(item));
    } else if (key == "strategies") {
        cfg.strategies.clear();
        for (auto item : split_list(value)) cfg.strategies.push_back(parse_strategy(item));
    } else if (key == "instances") {
        cfg.instances = parse_integer<std::size_t>(key, value);
    } else if (key == "replicas") {
        cfg.replicas = parse_integer<std::size_t>(key, value);
    } else if (key == "stride") {
        cfg.stride = value == "auto" ? std::nullopt : std::optional(parse_integer<std::size_t>(key, value));
    } else if (key == "stop_fraction") {
        cfg.stop_fraction = parse_real(key, value);
    } else if (key == "master_seed" || key == "seed") {
        cfg.master_seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "output_dir") {
        cfg.output_dir = std::string(value);
    } else if (key == "workers") {
        cfg.workers = parse_integer<std::size_t>(key, value);
    } else if (key == "fresh_sequence_per_instance") {
        cfg.fresh_sequence_per_instance = parse_bool(key, value);
    } else if (key == "attack_replica_ties") {
        cfg.attack_replica_ties = parse_bool(key, value);
    } else if (key == "clustering_low_degree") {
        if (value == "zero") {
            cfg.metrics.low_degree = LowDegreeClustering::Zero;
        } else if (value == "exclude") {
            cfg.metrics.low_degree = LowDegreeClustering::Exclude;
        } else {
            throw ConfigError("config key 'clustering_low_degree': expected zero or exclude");
        }
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void parse_config(ExperimentConfig& cfg, std::istream& in, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        try {
            apply_setting(cfg, text.substr(0, eq), text.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

void load_config(ExperimentConfig& cfg, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    parse_config(cfg, in, path.string());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.gen.n < 2) throw ConfigError("n must be at least 2");
    if (!(cfg.gen.gamma > 2.0)) throw ConfigError("gamma must be > 2");
    if (!(cfg.rich_fraction > 0.0 && cfg.rich_fraction <= 1.0)) throw ConfigError("rich_fraction must lie in (0, 1]");
    if (cfg.instances < 1) throw ConfigError("instances must be at least 1");
    if (cfg.replicas < 1) throw ConfigError("replicas must be at least 1");
    if (cfg.stride && *cfg.stride < 1) throw ConfigError("stride must be at least 1");
    if (!(cfg.stop_fraction > 0.0 && cfg.stop_fraction <= 1.0)) throw ConfigError("stop_fraction must lie in (0, 1]");
    if (!cfg.master_seed) throw ConfigError("master_seed is required (config key master_seed or --seed)");
    if (cfg.scenarios.empty()) throw ConfigError("scenarios must not be empty");
    if (cfg.modes.empty()) throw ConfigError("modes must not be empty");
    if (cfg.strategies.empty()) throw ConfigError("strategies must not be empty");
    for (const auto& s : cfg.scenarios) {
        if (s.target_density && !(*s.target_density >= 0.0 && *s.target_density <= 1.0)) {
            throw ConfigError("scenario " + s.label + ": target density must lie in [0, 1]");
        }
    }
}

std::string describe(const ExperimentConfig& cfg) {
    std::ostringstream out;
    const auto join = [](const auto& items, auto name) {
        std::string s;
        for (const auto& item : items) s += (s.empty() ? "" : ", ") + std::string(name(item));
        return s;
    };
    out << "n = " << cfg.gen.n << '\n'
        << "mean_degree = " << format_number(cfg.gen.target_mean_degree) << '\n'
        << "gamma = " << format_number(cfg.gen.gamma) << '\n'
        << "k_min = " << cfg.gen.k_min << '\n'
        << "rich_fraction = " << format_number(cfg.rich_fraction) << '\n'
        << "scenarios = "
        << join(cfg.scenarios,
                [](const ScenarioSpec& s) { return s.target_density ? format_number(*s.target_density) : "default"; })
        << '\n'
        << "modes = " << join(cfg.modes, [](ThickeningMode m) { return to_string(m); }) << '\n'
        << "strategies = " << join(cfg.strategies, [](Strategy s) { return to_string(s); }) << '\n'
        << "instances = " << cfg.instances << '\n'
        << "replicas = " << cfg.replicas << '\n'
        << "stride = " << (cfg.stride ? std::to_string(*cfg.stride) : "auto") << '\n'
        << "stop_fraction = " << format_number(cfg.stop_fraction) << '\n';
    if (cfg.master_seed) out << "master_seed = " << *cfg.master_seed << '\n';
    out << "output_dir = " << cfg.output_dir.string() << '\n'
        << "workers = " << cfg.workers << '\n'
        << "fresh_sequence_per_instance = " << (cfg.fresh_sequence_per_instance ? "true" : "false") << '\n'
        << "attack_replica_ties = " << (cfg.attack_replica_ties ? "true" : "false") << '\n'
        << "clustering_low_degree = " << (cfg.metrics.low_degree == LowDegreeClustering::Zero ? "zero" : "exclude")
        << '\n';
    return out.str();
}

// --- seeds and instances -------------------------------------------------

std::uint64_t sequence_seed(const ExperimentConfig& cfg, std::size_t instance) {
    const std::uint64_t master = cfg.master_seed.value_or(0);
    return cfg.fresh_sequence_per_instance ? derive_seed(master, "sequence", {instance}) : derive_seed(master, "sequence");
}

std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t instance) {
    return derive_seed(cfg.master_seed.value_or(0), "instance", {instance});
}

std::uint64_t replica_seed(std::uint64_t inst_seed, std::size_t replica) {
    return derive_seed(inst_seed, "replica", {replica});
}

std::uint64_t removal_seed(const ExperimentConfig& cfg, Strategy strategy, std::uint64_t inst_seed,
                           std::uint64_t rep_seed) {
    if (strategy == Strategy::AttackSimultaneous && !cfg.attack_replica_ties) return derive_seed(inst_seed, "attack-ties");
    return rep_seed;
}

std::vector<Instance> realize_instances(const ExperimentConfig& cfg) {
    std::vector<Instance> out;
    DegreeSequence shared;
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        if (i == 0 || cfg.fresh_sequence_per_instance) {
            GenConfig gen = cfg.gen;
            gen.seed = sequence_seed(cfg, i);
            shared = powerlaw_degree_sequence(gen);
        }
        Instance inst;
        inst.index = i;
        inst.seed = instance_seed(cfg, i);
        auto cm = configuration_model(shared, inst.seed);
        inst.graph = std::move(cm.graph);
        inst.erased_stubs = cm.erased_stubs;
        for (std::size_t k : shared) inst.total_stubs += k;
        inst.rich = rich_nodes(inst.graph, cfg.rich_fraction, derive_seed(inst.seed, "rich"));
        out.push_back(std::move(inst));
    }
    return out;
}

Graph scenario_variant(const Instance& inst, const ExperimentConfig& cfg, std::size_t scenario_index,
                       ThickeningMode mode, MutationReport* report) {
    Graph g = inst.graph;
    const auto seed = derive_seed(inst.seed, "thicken", {scenario_index, static_cast<std::uint64_t>(mode)});
    const auto r = apply_scenario(g, inst.rich, cfg.scenarios.at(scenario_index), mode, seed);
    if (report) *report = r;
    return g;
}

// --- runner --------------------------------------------------------------

namespace {

struct TraceTask {
    std::size_t scenario = 0;
    std::size_t mode = 0;
    std::size_t strategy = 0;
    std::size_t instance = 0;
    std::size_t replica = 0;
};

std::string group_stem(const ScenarioSpec& s, ThickeningMode m, Strategy st) {
    return s.label + "_" + std::string(to_string(m)) + "_" + std::string(to_string(st));
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto started = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(cfg.output_dir / "raw", ec);
    fs::create_directories(cfg.output_dir / "avg", ec);
    if (ec || !fs::is_directory(cfg.output_dir / "raw")) {
        throw std::runtime_error("cannot create output directory " + cfg.output_dir.string());
    }
    {
        const auto probe = cfg.output_dir / ".write-test";
        std::ofstream test(probe);
        if (!test) throw std::runtime_error("output directory not writable: " + cfg.output_dir.string());
        test.close();
        fs::remove(probe, ec);
    }

    RunManifest manifest;
    manifest.config_echo = describe(cfg);
    const auto instances = realize_instances(cfg);

    // variants[(instance * scenarios + scenario) * modes + mode]
    const std::size_t ns = cfg.scenarios.size();
    const std::size_t nm = cfg.modes.size();
    std::vector<Graph> variants;
    variants.reserve(instances.size() * ns * nm);
    for (const Instance& inst : instances) {
        InstanceRecord rec;
        rec.index = inst.index;
        rec.seed = inst.seed;
        rec.links = inst.graph.link_count();
        rec.erased_stubs = inst.erased_stubs;
        rec.rich_size = inst.rich.size();
        rec.default_internal_links = inst.rich.internal_links;
        rec.default_density = core_density(inst.graph, inst.rich);
        manifest.instances.push_back(rec);
        for (std::size_t s = 0; s < ns; ++s) {
            for (std::size_t m = 0; m < nm; ++m) {
                MutationReport report;
                variants.push_back(scenario_variant(inst, cfg, s, cfg.modes[m], &report));
                manifest.scenarios.push_back({inst.index, cfg.scenarios[s].label, cfg.modes[m], report});
            }
        }
    }

    std::vector<TraceTask> tasks;
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t m = 0; m < nm; ++m)
            for (std::size_t st = 0; st < cfg.strategies.size(); ++st)
                for (std::size_t i = 0; i < instances.size(); ++i)
                    for (std::size_t r = 0; r < cfg.replicas; ++r) tasks.push_back({s, m, st, i, r});

    std::vector<Trace> traces(tasks.size());
    parallel_for(tasks.size(), cfg.workers, [&](std::size_t t) {
        const TraceTask& task = tasks[t];
        const Instance& inst = instances[task.instance];
        const Graph& g = variants[(task.instance * ns + task.scenario) * nm + task.mode];
        const Strategy strategy = cfg.strategies[task.strategy];
        const SeedPair seeds{inst.seed, replica_seed(inst.seed, task.replica)};
        RemovalPlan plan = removal_order(g, strategy, removal_seed(cfg, strategy, seeds.instance_seed, seeds.replica_seed));
        plan.stride = cfg.stride.value_or(default_stride(g.alive_count()));
        plan.stop_fraction = cfg.stop_fraction;
        Trace trace = run_removal(g, plan, cfg.metrics);
        trace.meta.scenario = cfg.scenarios[task.scenario].label;
        trace.meta.mode = std::string(to_string(cfg.modes[task.mode]));
        trace.meta.sources = {seeds};
        traces[t] = std::move(trace);
    });

    // Tasks are laid out group-major, so each group is one contiguous block.
    const std::size_t per_group = instances.size() * cfg.replicas;
    for (std::size_t begin = 0; begin < tasks.size(); begin += per_group) {
        const TraceTask& head = tasks[begin];
        const std::string stem =
            group_stem(cfg.scenarios[head.scenario], cfg.modes[head.mode], cfg.strategies[head.strategy]);
        for (std::size_t t = begin; t < begin + per_group; ++t) {
            const std::string file = "raw/" + stem + "_i" + std::to_string(tasks[t].instance) + "_r" +
                                     std::to_string(tasks[t].replica) + ".csv";
            write_trace_csv(cfg.output_dir / file, traces[t]);
            manifest.raw_traces.push_back({file, traces[t].meta.scenario, cfg.modes[head.mode],
                                           cfg.strategies[head.strategy], traces[t].meta.sources.front()});
        }
        const Trace mean = average_traces(std::span(traces).subspan(begin, per_group));
        const std::string file = "avg/" + stem + ".csv";
        write_trace_csv(cfg.output_dir / file, mean);
        manifest.averaged_files.push_back(file);
    }

    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::ofstream out(cfg.output_dir / "manifest.txt");
    if (!out) throw std::runtime_error("cannot write " + (cfg.output_dir / "manifest.txt").string());
    write_manifest(out, manifest);
    return manifest;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
    out << "# rcsim run manifest\n"
        << "version = " << m.version << '\n'
        << "wall_clock_seconds = " << format_number(m.wall_clock_seconds) << '\n'
        << "\n[config]\n"
        << m.config_echo;
    for (const auto& inst : m.instances) {
        out << "\n[instance " << inst.index << "]\n"
            << "seed = " << inst.seed << '\n'
            << "links = " << inst.links << '\n'
            << "erased_stubs = " << inst.erased_stubs << '\n'
            << "rich_size = " << inst.rich_size << '\n'
            << "default_internal_links = " << inst.default_internal_links << '\n'
            << "default_density = " << format_number(inst.default_density) << '\n';
    }
    out << "\n[scenarios]\n# instance scenario mode = budget added removed achieved_density\n";
    for (const auto& s : m.scenarios) {
        out << s.instance << ' ' << s.scenario << ' ' << to_string(s.mode) << " = " << s.report.budget << ' '
            << s.report.added << ' ' << s.report.removed << ' ' << format_number(s.report.achieved_density) << '\n';
    }
    out << "\n[raw_traces]\n# file = scenario mode strategy instance_seed replica_seed\n";
    for (const auto& t : m.raw_traces) {
        out << t.file << " = " << t.scenario << ' ' << to_string(t.mode) << ' ' << to_string(t.strategy) << ' '
            << t.seeds.instance_seed << ' ' << t.seeds.replica_seed << '\n';
    }
    out << "\n[averaged]\n";
    for (const auto& f : m.averaged_files) out << f << '\n';
}

std::optional<double> manifest_rich_fraction(const fs::path& manifest) {
    std::ifstream in(manifest);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(std::string_view(line).substr(0, eq)) != "rich_fraction") continue;
        try {
            return std::stod(std::string(trim(std::string_view(line).substr(eq + 1))));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace rcsim
