#include "rcsim/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "rcsim/errors.hpp"
#include "rcsim/random.hpp"

namespace rcsim {

DegreeSequence powerlaw_degree_sequence(const GenConfig& cfg) {
    if (cfg.n < 2) throw ConfigError("generator: n must be at least 2");
    if (!(cfg.gamma > 2.0)) throw ConfigError("generator: gamma must be > 2");
    if (cfg.k_min < 1) throw ConfigError("generator: k_min must be at least 1");
    const double target = cfg.target_mean_degree;
    const std::size_t k_max = cfg.n - 1;
    if (!std::isfinite(target) || target < 1.0 || target < static_cast<double>(cfg.k_min) * (1 - kMeanDegreeTolerance) ||
        target > static_cast<double>(k_max) * (1 + kMeanDegreeTolerance) || cfg.k_min > k_max) {
        throw ConfigError("generator: mean degree " + std::to_string(target) + " unreachable with k_min=" +
                          std::to_string(cfg.k_min) + " and n=" + std::to_string(cfg.n));
    }

    Rng rng(cfg.seed);
    std::vector<std::size_t> strata(cfg.n);
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    rng.shuffle(strata);
    // Tail factors u^(-1/(gamma-1)) with u in (0, 1].
    const double inv_alpha = 1.0 / (cfg.gamma - 1.0);
    std::vector<double> tail(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        const double u = 1.0 - (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(cfg.n);
        // Flooring u at 1/n caps degrees at the natural cutoff s * n^(1/(gamma-1)).
        tail[i] = std::pow(std::max(u, 1.0 / static_cast<double>(cfg.n)), -inv_alpha);
    }

    const auto degrees_at = [&](double scale) {
        DegreeSequence d(cfg.n);
        for (std::size_t i = 0; i < cfg.n; ++i) {
            const double x = std::floor(scale * tail[i]);
            d[i] = x >= static_cast<double>(k_max) ? k_max : std::max(cfg.k_min, static_cast<std::size_t>(x));
        }
        return d;
    };
    const auto mean_of = [](const DegreeSequence& d) {
        return static_cast<double>(std::accumulate(d.begin(), d.end(), std::size_t{0})) / static_cast<double>(d.size());
    };

    // mean(scale) is a non-decreasing step function: k_min at 0, n-1 at n.
    double lo = 0.0;
    double hi = static_cast<double>(cfg.n);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_of(degrees_at(mid)) < target ? lo : hi) = mid;
    }
    DegreeSequence below = degrees_at(lo);
    DegreeSequence above = degrees_at(hi);
    DegreeSequence degrees =
        std::abs(mean_of(below) - target) < std::abs(mean_of(above) - target) ? std::move(below) : std::move(above);

    if (std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) % 2 == 1) {
        std::vector<std::size_t> room;
        for (std::size_t i = 0; i < cfg.n; ++i) {
            if (degrees[i] < k_max) room.push_back(i);
        }
        // n(n-1) is even, so an odd sum always leaves some node below n-1.
        ++degrees[room[rng.below(room.size())]];
    }

    const double mean = mean_of(degrees);
    if (std::abs(mean - target) > kMeanDegreeTolerance * target) {
        throw ConfigError("generator: mean degree " + std::to_string(mean) + " misses target " + std::to_string(target));
    }
    return degrees;
}

bool is_graphical(std::span<const std::size_t> degrees) {
    std::vector<std::size_t> d(degrees.begin(), degrees.end());
    std::sort(d.begin(), d.end(), std::greater<>());
    const std::size_t n = d.size();
    if (std::accumulate(d.begin(), d.end(), std::size_t{0}) % 2 != 0) return false;
    if (n > 0 && d.front() >= n) return false;
    // sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k), for every k.
    std::vector<std::size_t> suffix(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];
    std::size_t lhs = 0;
    std::size_t split = n;  // first index (descending order) with d < k
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += d[k - 1];
        while (split > k && d[split - 1] < k) --split;
        const std::size_t boundary = std::max(split, k);
        const std::size_t rhs = k * (k - 1) + k * (boundary - k) + suffix[boundary];
        if (lhs > rhs) return false;
    }
    return true;
}

ConfigurationModel configuration_model(std::span<const std::size_t> degrees, std::uint64_t seed) {
    const std::size_t n = degrees.size();
    const std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    if (total % 2 != 0) throw PreconditionError("configuration_model: degree sum is odd");
    if (!is_graphical(degrees)) throw PreconditionError("configuration_model: sequence is not graphical");

    Rng rng(seed);
    std::vector<NodeId> stubs;
    stubs.reserve(total);
    for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), degrees[i], i);
    rng.shuffle(stubs);

    ConfigurationModel out{Graph(n)};
    Graph& g = out.graph;
    std::vector<Edge> links;
    links.reserve(total / 2);
    std::vector<NodeId> leftover;
    for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) {
        const NodeId a = stubs[s];
        const NodeId b = stubs[s + 1];
        if (a != b && g.add_edge(a, b)) {
            links.push_back(Edge::of(a, b));
        } else {
            leftover.push_back(a);
            leftover.push_back(b);
        }
    }

    // Repair: re-pair the bad stubs, or swap a bad pair (a,b) with a random
    // link (x,y) into (a,x),(b,y).
    std::size_t budget = 50 * leftover.size() + 1000;
    while (!leftover.empty() && budget > 0) {
        rng.shuffle(leftover);
        std::vector<NodeId> still;
        for (std::size_t s = 0; s + 1 < leftover.size(); s += 2) {
            const NodeId a = leftover[s];
            const NodeId b = leftover[s + 1];
            if (budget == 0) {
                still.push_back(a);
                still.push_back(b);
                continue;
            }
            --budget;
            if (a != b && g.add_edge(a, b)) {
                links.push_back(Edge::of(a, b));
                continue;
            }
            bool placed = false;
            if (!links.empty()) {
                const std::size_t idx = rng.below(links.size());
                auto [x, y] = links[idx];
                if (rng.coin()) std::swap(x, y);
                if (a != x && b != y && !g.has_edge(a, x) && !g.has_edge(b, y) && Edge::of(a, x) != Edge::of(b, y)) {
                    g.remove_edge(x, y);
                    g.add_edge(a, x);
                    g.add_edge(b, y);
                    links[idx] = Edge::of(a, x);
                    links.push_back(Edge::of(b, y));
                    placed = true;
                }
            }
            if (!placed) {
                still.push_back(a);
                still.push_back(b);
            }
        }
        leftover = std::move(still);
    }
    out.erased_stubs = leftover.size();
    for (NodeId i = 0; i < n; ++i) out.mismatched_nodes += g.degree(i) != degrees[i];
    return out;
}

RewireResult degree_preserving_rewire(const Graph& g, std::size_t swaps, std::uint64_t seed) {
    RewireResult out{g};
    if (swaps == 0) return out;
    if (g.link_count() < 2) throw PreconditionError("degree_preserving_rewire: needs at least 2 links");
    Graph& h = out.graph;
    std::vector<Edge> links = h.edges();
    Rng rng(seed);
    for (std::size_t s = 0; s < swaps; ++s) {
        const std::size_t i = rng.below(links.size());
        const std::size_t j = rng.below(links.size());
        auto [a, b] = links[i];
        auto [c, d] = links[j];
        if (rng.coin()) std::swap(c, d);
        if (i == j || a == d || c == b || h.has_edge(a, d) || h.has_edge(c, b)) {
            ++out.rejected;
            continue;
        }
        h.remove_edge(a, b);
        h.remove_edge(c, d);
        h.add_edge(a, d);
        h.add_edge(c, b);
        links[i] = Edge::of(a, d);
        links[j] = Edge::of(c, b);
        ++out.accepted;
    }
    return out;
}

}  // namespace rcsim
