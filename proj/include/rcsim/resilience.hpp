#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcsim/graph.hpp"
#include "rcsim/metrics.hpp"

namespace rcsim {

enum class Strategy {
    Error,                ///< uniformly random removal order
    AttackSimultaneous,   ///< descending initial degree, computed once
};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct RemovalPlan {
    Strategy strategy = Strategy::Error;
    std::vector<NodeId> order;  ///< permutation of the alive ids
    std::size_t stride = 1;     ///< measure every `stride` removals
    double stop_fraction = 1.0;
};

/// Measurement stride used when none is configured: 1 up to 2000 nodes,
/// else ceil(n / 500).
std::size_t default_stride(std::size_t n);

/// Error: seeded uniform permutation of the alive nodes.
/// Attack: alive nodes by initial degree, descending. Ties are ordered by the
/// per-node key hash(seed, id), so the relative order of any two nodes depends
/// only on their degrees, their ids and the seed. Two graphs that differ only
/// inside a node set S therefore order every node outside S identically.
RemovalPlan removal_order(const Graph& g, Strategy strategy, std::uint64_t seed);

struct SeedPair {
    std::uint64_t instance_seed = 0;
    std::uint64_t replica_seed = 0;

    friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

struct TraceMeta {
    std::string scenario;
    std::string mode;
    Strategy strategy = Strategy::Error;
    std::vector<SeedPair> sources;  ///< one entry per contributing trace
};

struct TracePoint {
    double removed_fraction = 0.0;
    MetricVector metrics;
};

struct Trace {
    std::vector<TracePoint> points;
    TraceMeta meta;
};

/// Baseline point, then one point after every `stride`-th removal and after
/// the last removal. Removal stops after floor(stop_fraction * N) nodes.
/// Works on a copy; undefined metrics become empty fields, not errors.
/// Efficiency is normalized by the pre-removal alive count throughout.
Trace run_removal(const Graph& g, const RemovalPlan& plan, MetricOptions opts = {});

/// Pointwise mean of traces on an identical fraction grid. Each field is
/// averaged over the traces where it is defined.
/// Throws PreconditionError on an empty list or mismatched grids.
Trace average_traces(std::span<const Trace> traces);

}  // namespace rcsim
