#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rcsim/graph.hpp"

namespace rcsim {

/// The top-fraction-by-degree node set ("rich club") of a graph.
struct RichSet {
    std::vector<NodeId> members;  ///< sorted ascending
    double fraction = 0.01;
    std::size_t internal_links = 0;  ///< links among members when identified

    std::size_t size() const noexcept { return members.size(); }
    /// binom(|members|, 2)
    std::size_t max_links() const noexcept { return members.size() * (members.size() - 1) / 2; }
};

/// Number of rich nodes for a graph of n nodes: round(fraction * n).
std::size_t rich_set_size(std::size_t n, double fraction);

/// The round(fraction * N_alive) highest-degree alive nodes. Ties at the
/// cutoff degree are resolved by a per-node key hash(seed, id), i.e. a
/// seeded uniform choice among tied nodes.
/// Throws PreconditionError when fewer than 2 nodes would be selected.
RichSet rich_nodes(const Graph& g, double fraction, std::uint64_t seed);

/// Current density of the subgraph induced by rs.members in g.
double core_density(const Graph& g, const RichSet& rs);

/// Signed number of links that takes the core from rs.internal_links to
/// round(target_density * binom(|members|, 2)). Negative means removal.
long long links_for_target(const RichSet& rs, double target_density);

struct MutationReport {
    long long budget = 0;  ///< requested; negative = removal
    std::size_t added = 0;
    std::size_t removed = 0;
    double achieved_density = 0.0;  ///< core density after the mutation
};

/// Adds or removes links strictly among rich pairs until the core density is
/// target_density. Pairs are sampled uniformly without replacement. Links
/// with a periphery endpoint are never touched.
MutationReport thicken_core(Graph& g, const RichSet& rs, double target_density, std::uint64_t seed);

/// Spends `budget` links on pairs with both endpoints outside the rich set:
/// positive adds links between non-adjacent periphery pairs, negative removes
/// periphery-periphery links. The core's induced subgraph is unchanged.
/// Throws PreconditionError if not enough candidate pairs exist.
MutationReport thicken_periphery(Graph& g, const RichSet& rs, long long budget, std::uint64_t seed);

/// phi(k) = 2 E / (N (N - 1)) over the N nodes of degree > k and the E links
/// among them. Throws UndefinedValueError if N < 2.
double rich_club_coefficient(const Graph& g, std::size_t k);

struct NormalizedRichClub {
    double rho = 0.0;  ///< phi / random_mean
    double phi = 0.0;
    double random_mean = 0.0;
    double random_stddev = 0.0;  ///< population standard deviation over the samples
};

/// rho(k) against `samples` degree-preserving rewirings of g, each running
/// swaps_per_link * m attempted swaps with seed derive_seed(seed, "rewire", {i}).
NormalizedRichClub normalized_rich_club(const Graph& g, std::size_t k, std::size_t samples, std::uint64_t seed,
                                        double swaps_per_link = 10.0);

}  // namespace rcsim
