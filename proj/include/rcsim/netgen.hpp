#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rcsim/graph.hpp"

namespace rcsim {

using DegreeSequence = std::vector<std::size_t>;

struct GenConfig {
    std::size_t n = 5000;
    double target_mean_degree = 6.0;
    double gamma = 3.1;       ///< power-law exponent, > 2
    std::size_t k_min = 1;    ///< hard floor on every degree
    std::uint64_t seed = 1;
};

/// Relative tolerance on the empirical mean degree.
inline constexpr double kMeanDegreeTolerance = 0.02;

/// Power-law degree sequence with P(k) ~ k^-gamma on [k_min, n-1].
///
/// Each node gets floor(s * u^(-1/(gamma-1))), clamped to [k_min, n-1],
/// where the u are stratified uniforms (one per n-quantile, randomly
/// assigned to nodes) and the scale s is bisected until the empirical mean
/// hits target_mean_degree. An odd sum is repaired by adding one to a
/// uniformly chosen node. Pure function of cfg.
///
/// Throws ConfigError when no scale reaches the target within tolerance
/// (target below k_min or above n-1, or gamma <= 2).
DegreeSequence powerlaw_degree_sequence(const GenConfig& cfg);

/// Erdős–Gallai test for simple-graph realizability.
bool is_graphical(std::span<const std::size_t> degrees);

struct ConfigurationModel {
    Graph graph;
    std::size_t erased_stubs = 0;      ///< stubs left unmatched after repair
    std::size_t mismatched_nodes = 0;  ///< nodes whose realized degree differs from the target

    double erased_fraction(std::size_t total_stubs) const {
        return total_stubs == 0 ? 0.0 : static_cast<double>(erased_stubs) / static_cast<double>(total_stubs);
    }
};

/// Stub matching with erasure. Invalid pairings (self-loops, duplicates) are
/// first re-paired among themselves or swapped against a random existing
/// link; stubs still unmatched after a bounded number of attempts are erased.
/// Throws PreconditionError on odd sums or non-graphical sequences.
ConfigurationModel configuration_model(std::span<const std::size_t> degrees, std::uint64_t seed);

struct RewireResult {
    Graph graph;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// `swaps` attempted double-edge swaps (a,b),(c,d) -> (a,d),(c,b); the second
/// link's orientation is a fair coin. Swaps that would create a self-loop or
/// a duplicate link are rejected. Every degree is preserved.
RewireResult degree_preserving_rewire(const Graph& g, std::size_t swaps, std::uint64_t seed);

}  // namespace rcsim
