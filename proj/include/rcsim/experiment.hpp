#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcsim/graph.hpp"
#include "rcsim/metrics.hpp"
#include "rcsim/netgen.hpp"
#include "rcsim/resilience.hpp"
#include "rcsim/richclub.hpp"

namespace rcsim {

inline constexpr std::string_view kVersion = "0.3.0";

enum class ThickeningMode { Core, Periphery };

std::string_view to_string(ThickeningMode m);
ThickeningMode parse_mode(std::string_view text);

/// One row of the scenario table. An empty target density is the default
/// case: the instance is measured as generated.
struct ScenarioSpec {
    std::string label;
    std::optional<double> target_density;

    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Label for the i-th scenario (0-based), e.g. "s3-d0.25" or "s2-default".
std::string scenario_label(std::size_t index, std::optional<double> target_density);

/// Core densities 0, default, 0.25, 0.5, 0.75, 1.
std::vector<ScenarioSpec> default_scenarios();

/// Link budget of a scenario on an instance: links_for_target for the
/// scenario density, 0 for the default case. Both modes spend this budget.
long long scenario_budget(const RichSet& rs, const ScenarioSpec& spec);

/// Applies the scenario budget to g inside the core or in the periphery.
MutationReport apply_scenario(Graph& g, const RichSet& rs, const ScenarioSpec& spec, ThickeningMode mode,
                              std::uint64_t seed);

struct ExperimentConfig {
    GenConfig gen;  ///< gen.seed is ignored; seeds derive from master_seed
    double rich_fraction = 0.01;
    std::vector<ScenarioSpec> scenarios = default_scenarios();
    std::vector<ThickeningMode> modes{ThickeningMode::Core, ThickeningMode::Periphery};
    std::vector<Strategy> strategies{Strategy::Error, Strategy::AttackSimultaneous};
    std::size_t instances = 10;
    std::size_t replicas = 10;
    std::optional<std::size_t> stride;  ///< empty: default_stride(n)
    double stop_fraction = 1.0;
    std::optional<std::uint64_t> master_seed;
    std::filesystem::path output_dir = "rcsim-out";
    std::size_t workers = 1;
    bool fresh_sequence_per_instance = false;
    bool attack_replica_ties = true;  ///< false: one attack tie order per instance
    MetricOptions metrics;
};

/// Throws ConfigError naming the offending key.
void validate(const ExperimentConfig& cfg);

/// Sets one `key = value` setting. Throws ConfigError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key = value` lines; '#' starts a comment. `source` names the input in errors.
void parse_config(ExperimentConfig& cfg, std::istream& in, const std::string& source);

/// Loads a config file on top of cfg. Throws ConfigError naming the path if unreadable.
void load_config(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Canonical `key = value` echo of every setting, readable by parse_config.
std::string describe(const ExperimentConfig& cfg);

// Seed derivation, documented so any trace can be regenerated in isolation:
//   sequence  = derive_seed(master, "sequence")      (or {i} per instance when fresh)
//   instance  = derive_seed(master, "instance", {i})  -> configuration model
//   rich ties = derive_seed(instance, "rich")
//   thicken   = derive_seed(instance, "thicken", {scenario index, mode index})
//   replica   = derive_seed(instance, "replica", {r}) -> removal order
//   attack ties without per-replica ties = derive_seed(instance, "attack-ties")
std::uint64_t sequence_seed(const ExperimentConfig& cfg, std::size_t instance);
std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t instance);
std::uint64_t replica_seed(std::uint64_t instance_seed, std::size_t replica);
std::uint64_t removal_seed(const ExperimentConfig& cfg, Strategy strategy, std::uint64_t instance_seed,
                           std::uint64_t replica_seed);

struct Instance {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Graph graph;
    RichSet rich;
    std::size_t erased_stubs = 0;
    std::size_t total_stubs = 0;
};

/// Draws the shared degree sequence and realizes cfg.instances graphs from it.
std::vector<Instance> realize_instances(const ExperimentConfig& cfg);

/// Copy of the instance with scenario `scenario_index` applied in `mode`.
Graph scenario_variant(const Instance& inst, const ExperimentConfig& cfg, std::size_t scenario_index,
                       ThickeningMode mode, MutationReport* report = nullptr);

struct InstanceRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t links = 0;
    std::size_t erased_stubs = 0;
    std::size_t rich_size = 0;
    std::size_t default_internal_links = 0;
    double default_density = 0.0;
};

struct ScenarioRecord {
    std::size_t instance = 0;
    std::string scenario;
    ThickeningMode mode = ThickeningMode::Core;
    MutationReport report;
};

struct TraceRecord {
    std::string file;  ///< relative to the output directory
    std::string scenario;
    ThickeningMode mode = ThickeningMode::Core;
    Strategy strategy = Strategy::Error;
    SeedPair seeds;
};

struct RunManifest {
    std::string config_echo;
    std::vector<InstanceRecord> instances;
    std::vector<ScenarioRecord> scenarios;
    std::vector<TraceRecord> raw_traces;
    std::vector<std::string> averaged_files;
    std::string version{kVersion};
    double wall_clock_seconds = 0.0;
};

/// Runs the full grid: one trace per (scenario, mode, strategy, instance,
/// replica) under output_dir/raw, one instance-and-replica average per
/// (scenario, mode, strategy) under output_dir/avg, and output_dir/manifest.txt.
/// CSV bytes depend only on the config, never on `workers`.
RunManifest run_experiment(const ExperimentConfig& cfg);

void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Reads `rich_fraction = x` from a manifest file; empty if absent.
std::optional<double> manifest_rich_fraction(const std::filesystem::path& manifest);

}  // namespace rcsim
