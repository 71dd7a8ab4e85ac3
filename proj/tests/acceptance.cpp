// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. `acceptance N` runs criterion N alone.
// Set RCSIM_ACCEPTANCE_FULL=1 to measure every removal in the N=5000 error
// experiment instead of every 25th (hours on one core).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rcsim/experiment.hpp"
#include "rcsim/metrics.hpp"
#include "rcsim/resilience.hpp"
#include "rcsim/richclub.hpp"

using namespace rcsim;
namespace fs = std::filesystem;

namespace {

// Tolerances, fixed here.
constexpr double kBudgetTolerance = 40.0;
constexpr double kDefaultDensity = 0.09;
constexpr double kDensityTolerance = 0.02;
constexpr double kOracleRelative = 1e-12;
constexpr double kDoublingFloor = 0.50;  // desk-scale threshold
constexpr double kDoublingStrict = 0.75;  // reported, not gated
constexpr std::uint64_t kMasterSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

ExperimentConfig desk_config(std::size_t n, std::size_t instances) {
    ExperimentConfig cfg;
    cfg.gen.n = n;
    cfg.instances = instances;
    cfg.master_seed = kMasterSeed;
    return cfg;
}

const std::vector<Instance>& paper_scale_instances() {
    static const std::vector<Instance> instances = realize_instances(desk_config(5000, 10));
    return instances;
}

Outcome budgets() {
    const auto& instances = paper_scale_instances();
    const auto scenarios = default_scenarios();
    const double expected[] = {-111, 0, 194, 500, 807, 1113};
    double density = 0.0;
    std::vector<double> mean(scenarios.size(), 0.0);
    bool sizes_ok = true;
    for (const Instance& inst : instances) {
        sizes_ok = sizes_ok && inst.rich.size() == 50 && inst.rich.max_links() == 1225;
        density += core_density(inst.graph, inst.rich) / static_cast<double>(instances.size());
        for (std::size_t s = 0; s < scenarios.size(); ++s)
            mean[s] += static_cast<double>(scenario_budget(inst.rich, scenarios[s])) / static_cast<double>(instances.size());
    }
    bool pass = sizes_ok && std::abs(density - kDefaultDensity) <= kDensityTolerance;
    std::ostringstream d;
    d << "rich set 50/1225 " << (sizes_ok ? "ok" : "WRONG") << "; default density " << fmt(density)
      << " (0.09 +/- 0.02); mean budgets";
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        pass = pass && std::abs(mean[s] - expected[s]) <= kBudgetTolerance;
        d << ' ' << scenarios[s].label << '=' << fmt(mean[s], 5) << " (" << expected[s] << ")";
    }
    return {pass, d.str()};
}

Outcome clique_triangles() {
    bool pass = true;
    std::ostringstream d;
    d << "core triangles after clique thickening:";
    for (std::size_t i = 0; i < 3; ++i) {
        const Instance& inst = paper_scale_instances()[i];
        Graph g = inst.graph;
        thicken_core(g, inst.rich, 1.0, derive_seed(inst.seed, "clique"));
        const long long triangles = oracle::triangle_count(induced_subgraph(g, inst.rich.members).graph);
        pass = pass && triangles == 19600;
        d << ' ' << triangles;
    }
    d << " (expected 19600)";
    return {pass, d.str()};
}

Outcome residual_equivalence() {
    ExperimentConfig cfg = desk_config(1000, 1);
    const Instance inst = realize_instances(cfg).front();
    const std::uint64_t seed = derive_seed(inst.seed, "attack");
    const std::optional<double> densities[] = {0.0, std::nullopt, 1.0};
    std::vector<Trace> traces;
    std::size_t last_rich = 0;
    for (std::size_t v = 0; v < 3; ++v) {
        Graph g = inst.graph;
        apply_scenario(g, inst.rich, {"v", densities[v]}, ThickeningMode::Core, derive_seed(inst.seed, "variant", {v}));
        RemovalPlan plan = removal_order(g, Strategy::AttackSimultaneous, seed);
        plan.stride = 1;
        for (std::size_t i = 0; i < plan.order.size(); ++i)
            if (std::binary_search(inst.rich.members.begin(), inst.rich.members.end(), plan.order[i]))
                last_rich = std::max(last_rich, i + 1);
        traces.push_back(run_removal(g, plan));
    }
    std::size_t compared = 0;
    std::size_t mismatched = 0;
    bool early_differs = false;
    for (std::size_t p = 0; p < traces[0].points.size(); ++p) {
        const bool after = p >= last_rich;
        const bool equal = traces[0].points[p].metrics == traces[1].points[p].metrics &&
                           traces[1].points[p].metrics == traces[2].points[p].metrics;
        if (after) {
            ++compared;
            mismatched += !equal;
        } else if (!equal) {
            early_differs = true;
        }
    }
    return {mismatched == 0 && compared > 0,
            "rich set gone after " + std::to_string(last_rich) + " removals; " + std::to_string(compared) +
                " later points compared, " + std::to_string(mismatched) + " differ" +
                (early_differs ? " (earlier points differ, as expected)" : "")};
}

// First removed fraction where the mean diameter reaches twice its baseline.
std::optional<double> doubling_fraction(std::size_t n, std::size_t replicas, std::size_t stride) {
    const Instance inst = realize_instances(desk_config(n, 1)).front();
    std::vector<Trace> traces;
    for (std::size_t r = 0; r < replicas; ++r) {
        RemovalPlan plan = removal_order(inst.graph, Strategy::Error, replica_seed(inst.seed, r));
        plan.stride = stride;
        traces.push_back(run_removal(inst.graph, plan));
    }
    const Trace mean = average_traces(traces);
    const double base = *mean.points.front().metrics.diameter;
    for (const TracePoint& p : mean.points)
        if (p.metrics.diameter && *p.metrics.diameter >= 2.0 * base) return p.removed_fraction;
    return std::nullopt;
}

Outcome error_stability() {
    const auto f = doubling_fraction(1000, 10, 1);
    std::ostringstream d;
    d << "N=1000, 10 error replicas: diameter doubles at fraction " << (f ? fmt(*f, 3) : "never")
      << " (gate >= " << kDoublingFloor << ")";
    const bool full = std::getenv("RCSIM_ACCEPTANCE_FULL") && std::string(std::getenv("RCSIM_ACCEPTANCE_FULL")) == "1";
    const std::size_t stride = full ? 1 : 25;
    const auto strict = doubling_fraction(5000, 10, stride);
    d << "; N=5000 stride " << stride << ": " << (strict ? fmt(*strict, 3) : "never") << " vs about "
      << kDoublingStrict;
    return {!f || *f >= kDoublingFloor, d.str()};
}

Outcome variance_ordering() {
    const auto scenarios = default_scenarios();
    std::size_t checks = 0;
    std::size_t core_above = 0;
    std::size_t default_above_periphery = 0;
    std::size_t monotone = 0;
    double worst_gap = 1e300;
    for (const Instance& inst : paper_scale_instances()) {
        const double base = degree_variance(inst.graph);
        double prev = base;
        bool rising = true;
        for (std::size_t s = 2; s < scenarios.size(); ++s) {
            Graph core = inst.graph;
            Graph peri = inst.graph;
            apply_scenario(core, inst.rich, scenarios[s], ThickeningMode::Core, derive_seed(inst.seed, "c5", {s}));
            apply_scenario(peri, inst.rich, scenarios[s], ThickeningMode::Periphery, derive_seed(inst.seed, "p5", {s}));
            const double vc = degree_variance(core);
            const double vp = degree_variance(peri);
            ++checks;
            core_above += vc > base;
            default_above_periphery += base > vp;
            worst_gap = std::min(worst_gap, base - vp);
            rising = rising && vc > prev;
            prev = vc;
        }
        monotone += rising;
    }
    const std::size_t n = paper_scale_instances().size();
    const bool pass = core_above == checks && default_above_periphery == checks && monotone == n;
    return {pass, "core > default in " + std::to_string(core_above) + "/" + std::to_string(checks) +
                      "; default > periphery in " + std::to_string(default_above_periphery) + "/" +
                      std::to_string(checks) + " (smallest default-periphery gap " + fmt(worst_gap) +
                      "); core rising in density on " + std::to_string(monotone) + "/" + std::to_string(n) +
                      " instances"};
}

Outcome clustering_ordering() {
    const auto scenarios = default_scenarios();
    // Scenarios in increasing density: d0, default, 0.25, 0.5, 0.75, 1.
    std::size_t increasing = 0;
    std::size_t periphery_lower = 0;
    double max_ratio = 0.0;
    for (const Instance& inst : paper_scale_instances()) {
        std::vector<double> c;
        for (std::size_t s = 0; s < scenarios.size(); ++s) {
            Graph g = inst.graph;
            apply_scenario(g, inst.rich, scenarios[s], ThickeningMode::Core, derive_seed(inst.seed, "c6", {s}));
            c.push_back(global_clustering(g));
        }
        increasing += std::adjacent_find(c.begin(), c.end(), std::greater_equal<>()) == c.end();
        Graph peri = inst.graph;
        apply_scenario(peri, inst.rich, scenarios[5], ThickeningMode::Periphery, derive_seed(inst.seed, "p6"));
        const double cp = global_clustering(peri);
        periphery_lower += cp < c[2];
        max_ratio = std::max(max_ratio, cp / c[2]);
    }
    const std::size_t n = paper_scale_instances().size();
    return {increasing == n && periphery_lower == n,
            "strictly increasing on " + std::to_string(increasing) + "/" + std::to_string(n) +
                " instances; periphery(largest budget) < core(d=0.25) on " + std::to_string(periphery_lower) + "/" +
                std::to_string(n) + " (largest ratio " + fmt(max_ratio) + ")"};
}

Outcome oracle_equivalence() {
    Rng rng(kMasterSeed);
    std::size_t graphs = 0;
    std::size_t bad = 0;
    while (graphs < 200) {
        const std::size_t n = 2 + rng.below(11);
        const Graph g = oracle::random_graph(n, 0.1 + 0.6 * rng.uniform(), rng.next());
        ++graphs;
        const auto o = oracle::pair_stats(g);
        bool ok = static_cast<double>(diameter(g)) == o.diameter &&
                  oracle::close_rel(global_efficiency(g), o.efficiency, kOracleRelative) &&
                  oracle::close_rel(global_clustering(g), oracle::clustering(g), kOracleRelative);
        if (o.reachable > 0) ok = ok && oracle::close_rel(average_path_length(g).apl, o.apl, kOracleRelative);
        bad += !ok;
    }
    return {bad == 0, std::to_string(graphs - bad) + "/" + std::to_string(graphs) +
                          " graphs match the matrix oracles at 1e-12 relative"};
}

Outcome monotone_efficiency() {
    std::size_t traces = 0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        ExperimentConfig cfg = desk_config(40 + 4 * i, 1);
        cfg.rich_fraction = 0.05;
        cfg.master_seed = derive_seed(kMasterSeed, "small", {i});
        const Instance inst = realize_instances(cfg).front();
        for (Strategy strategy : {Strategy::Error, Strategy::AttackSimultaneous}) {
            RemovalPlan plan = removal_order(inst.graph, strategy, derive_seed(inst.seed, "order"));
            plan.stride = 1;
            const Trace t = run_removal(inst.graph, plan);
            ++traces;
            for (std::size_t p = 1; p < t.points.size(); ++p)
                violations += *t.points[p].metrics.efficiency > *t.points[p - 1].metrics.efficiency;
        }
    }
    return {violations == 0, std::to_string(traces) + " traces, " + std::to_string(violations) + " increases"};
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[fs::relative(e.path(), root).string()] = s.str();
    }
    return out;
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / "rcsim-acceptance-determinism";
    fs::remove_all(base);
    ExperimentConfig cfg = desk_config(300, 2);
    cfg.rich_fraction = 0.05;
    cfg.replicas = 2;
    cfg.stride = 10;
    std::vector<std::map<std::string, std::string>> runs;
    for (std::size_t workers : {1, 4, 4}) {
        cfg.workers = workers;
        cfg.output_dir = base / ("run" + std::to_string(runs.size()));
        run_experiment(cfg);
        runs.push_back(read_tree(cfg.output_dir));
    }
    fs::remove_all(base);
    const bool pass = !runs[0].empty() && runs[0] == runs[1] && runs[1] == runs[2];
    return {pass, std::to_string(runs[0].size()) + " CSV files; workers 1 vs 4 and rerun " +
                      (pass ? "byte-identical" : "DIFFER")};
}

struct Criterion {
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"scenario budgets and default core density", budgets},
    {"clique core holds binom(50,3) triangles", clique_triangles},
    {"attack residuals coincide after the rich set is removed", residual_equivalence},
    {"error-case diameter doubling", error_stability},
    {"degree-variance ordering core > default > periphery", variance_ordering},
    {"baseline clustering ordering", clustering_ordering},
    {"metric oracle equivalence", oracle_equivalence},
    {"efficiency non-increasing along traces", monotone_efficiency},
    {"byte-identical CSVs across reruns and worker counts", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    std::size_t only = 0;
    if (argc > 1) only = std::strtoul(argv[1], nullptr, 10);
    int failures = 0;
    for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
        if (only != 0 && only != i + 1) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = kCriteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << kCriteria[i].name << " | "
                  << o.detail << " [" << fmt(secs, 3) << " s]" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
