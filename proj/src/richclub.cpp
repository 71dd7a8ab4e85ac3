#include "rcsim/richclub.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "rcsim/errors.hpp"
#include "rcsim/netgen.hpp"
#include "rcsim/random.hpp"

namespace rcsim {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    const Edge e = Edge::of(a, b);
    return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

// Below this fraction of absent pairs, rejection sampling is replaced by
// explicit enumeration.
constexpr double kEnumerateBelow = 0.05;
// Pools this small are always enumerated.
constexpr std::size_t kEnumeratePairs = 1u << 16;

/// Adds `count` links between non-adjacent pairs of `pool`, sampled uniformly
/// without replacement.
std::size_t add_random_links(Graph& g, const std::vector<NodeId>& pool, std::size_t present, std::size_t count,
                             Rng& rng) {
    const std::size_t k = pool.size();
    const std::size_t pairs = k < 2 ? 0 : k * (k - 1) / 2;
    const std::size_t absent = pairs - present;
    if (count > absent) {
        throw PreconditionError("cannot place " + std::to_string(count) + " links: only " + std::to_string(absent) +
                                " absent pairs");
    }
    if (count == 0) return 0;
    if (pairs <= kEnumeratePairs || static_cast<double>(absent) < kEnumerateBelow * static_cast<double>(pairs)) {
        std::vector<Edge> candidates;
        candidates.reserve(absent);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = a + 1; b < k; ++b) {
                if (!g.has_edge(pool[a], pool[b])) candidates.push_back({pool[a], pool[b]});
            }
        }
        rng.partial_shuffle(candidates, count);
        for (std::size_t i = 0; i < count; ++i) g.add_edge(candidates[i].u, candidates[i].v);
        return count;
    }
    std::unordered_set<std::uint64_t> chosen;
    std::size_t added = 0;
    while (added < count) {
        const NodeId a = pool[rng.below(k)];
        const NodeId b = pool[rng.below(k)];
        if (a == b || g.has_edge(a, b) || chosen.contains(pair_key(a, b))) continue;
        chosen.insert(pair_key(a, b));
        g.add_edge(a, b);
        ++added;
    }
    return added;
}

/// Removes `count` links uniformly chosen among `links`.
std::size_t remove_random_links(Graph& g, std::vector<Edge> links, std::size_t count, Rng& rng) {
    if (count > links.size()) {
        throw PreconditionError("cannot remove " + std::to_string(count) + " links: only " +
                                std::to_string(links.size()) + " present");
    }
    rng.partial_shuffle(links, count);
    for (std::size_t i = 0; i < count; ++i) g.remove_edge(links[i].u, links[i].v);
    return count;
}

std::vector<char> membership(const Graph& g, const RichSet& rs) {
    std::vector<char> in(g.node_count(), 0);
    for (NodeId v : rs.members) {
        if (!g.is_alive(v)) throw PreconditionError("rich set member " + std::to_string(v) + " is not alive");
        in[v] = 1;
    }
    return in;
}

}  // namespace

std::size_t rich_set_size(std::size_t n, double fraction) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

RichSet rich_nodes(const Graph& g, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw PreconditionError("rich_nodes: fraction must lie in (0, 1]");
    const std::size_t count = rich_set_size(g.alive_count(), fraction);
    if (count < 2) {
        throw PreconditionError("rich_nodes: fraction " + std::to_string(fraction) + " selects " +
                                std::to_string(count) + " node(s); need at least 2");
    }
    std::vector<NodeId> nodes = g.alive_nodes();
    const auto key = [&](NodeId v) { return mix64(seed ^ mix64(v)); };
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        if (key(a) != key(b)) return key(a) < key(b);
        return a < b;
    });
    RichSet rs;
    rs.fraction = fraction;
    rs.members.assign(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(rs.members.begin(), rs.members.end());
    rs.internal_links = count_internal_links(g, rs.members);
    return rs;
}

double core_density(const Graph& g, const RichSet& rs) {
    if (rs.size() < 2) throw PreconditionError("core_density: rich set needs at least 2 members");
    return static_cast<double>(count_internal_links(g, rs.members)) / static_cast<double>(rs.max_links());
}

long long links_for_target(const RichSet& rs, double target_density) {
    if (!(target_density >= 0.0 && target_density <= 1.0)) {
        throw PreconditionError("links_for_target: density must lie in [0, 1]");
    }
    const auto wanted = std::llround(target_density * static_cast<double>(rs.max_links()));
    return wanted - static_cast<long long>(rs.internal_links);
}

MutationReport thicken_core(Graph& g, const RichSet& rs, double target_density, std::uint64_t seed) {
    membership(g, rs);
    RichSet current = rs;
    current.internal_links = count_internal_links(g, rs.members);
    MutationReport report;
    report.budget = links_for_target(current, target_density);
    Rng rng(seed);
    if (report.budget > 0) {
        report.added = add_random_links(g, rs.members, current.internal_links,
                                        static_cast<std::size_t>(report.budget), rng);
    } else if (report.budget < 0) {
        std::vector<Edge> internal;
        for (std::size_t a = 0; a < rs.size(); ++a) {
            for (std::size_t b = a + 1; b < rs.size(); ++b) {
                if (g.has_edge(rs.members[a], rs.members[b])) internal.push_back({rs.members[a], rs.members[b]});
            }
        }
        report.removed = remove_random_links(g, std::move(internal), static_cast<std::size_t>(-report.budget), rng);
    }
    report.achieved_density = core_density(g, rs);
    return report;
}

MutationReport thicken_periphery(Graph& g, const RichSet& rs, long long budget, std::uint64_t seed) {
    const std::vector<char> rich = membership(g, rs);
    std::vector<NodeId> periphery;
    for (NodeId v : g.alive_nodes()) {
        if (!rich[v]) periphery.push_back(v);
    }
    std::vector<Edge> links;
    for (const Edge& e : g.edges()) {
        if (!rich[e.u] && !rich[e.v]) links.push_back(e);
    }
    MutationReport report;
    report.budget = budget;
    Rng rng(seed);
    if (budget > 0) {
        report.added = add_random_links(g, periphery, links.size(), static_cast<std::size_t>(budget), rng);
    } else if (budget < 0) {
        report.removed = remove_random_links(g, std::move(links), static_cast<std::size_t>(-budget), rng);
    }
    report.achieved_density = core_density(g, rs);
    return report;
}

double rich_club_coefficient(const Graph& g, std::size_t k) {
    std::vector<NodeId> club;
    for (NodeId v : g.alive_nodes()) {
        if (g.degree(v) > k) club.push_back(v);
    }
    if (club.size() < 2) {
        throw UndefinedValueError("rich_club_coefficient: fewer than 2 nodes with degree > " + std::to_string(k));
    }
    const double n = static_cast<double>(club.size());
    return 2.0 * static_cast<double>(count_internal_links(g, club)) / (n * (n - 1.0));
}

NormalizedRichClub normalized_rich_club(const Graph& g, std::size_t k, std::size_t samples, std::uint64_t seed,
                                        double swaps_per_link) {
    if (samples < 1) throw PreconditionError("normalized_rich_club: samples must be >= 1");
    NormalizedRichClub out;
    out.phi = rich_club_coefficient(g, k);
    const auto swaps = static_cast<std::size_t>(std::llround(swaps_per_link * static_cast<double>(g.link_count())));
    std::vector<double> phis(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        phis[i] = rich_club_coefficient(degree_preserving_rewire(g, swaps, derive_seed(seed, "rewire", {i})).graph, k);
    }
    const double n = static_cast<double>(samples);
    out.random_mean = std::accumulate(phis.begin(), phis.end(), 0.0) / n;
    double ss = 0.0;
    for (double p : phis) ss += (p - out.random_mean) * (p - out.random_mean);
    out.random_stddev = std::sqrt(ss / n);
    if (out.random_mean == 0.0) {
        throw UndefinedValueError("normalized_rich_club: randomized ensemble has phi = 0");
    }
    out.rho = out.phi / out.random_mean;
    return out;
}

}  // namespace rcsim
