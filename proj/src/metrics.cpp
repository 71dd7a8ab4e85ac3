#include "rcsim/metrics.hpp"

#include <algorithm>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

void require_pairs(const Graph& g, const char* what) {
    if (g.alive_count() < 2) throw PreconditionError(std::string(what) + ": needs at least 2 alive nodes");
}

double ordered_pairs(std::size_t alive) {
    return static_cast<double>(alive) * static_cast<double>(alive - 1);
}

// Links among the neighbors of v, by merging sorted neighbor lists.
std::size_t triangles_at(const Graph& g, NodeId v) {
    const auto nv = g.neighbors(v);
    std::size_t twice = 0;
    for (NodeId w : nv) {
        const auto nw = g.neighbors(w);
        auto a = nv.begin();
        auto b = nw.begin();
        while (a != nv.end() && b != nw.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ++twice;
                ++a;
                ++b;
            }
        }
    }
    return twice / 2;
}

}  // namespace

DistanceHistogram distance_histogram(const Graph& g) {
    DistanceHistogram h;
    h.alive = g.alive_count();
    BfsWorkspace ws(g.node_count());
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (!g.is_alive(s)) continue;
        std::uint64_t reached = 0;
        ws.run(g, s, [&](NodeId, std::uint32_t d) {
            if (d >= h.counts.size()) h.counts.resize(d + 1, 0);
            ++h.counts[d];
            ++reached;
        });
        h.reachable_pairs += reached;
        h.unreachable_pairs += (h.alive - 1) - reached;
    }
    return h;
}

std::uint32_t histogram_diameter(const DistanceHistogram& h) {
    for (std::size_t d = h.counts.size(); d-- > 1;) {
        if (h.counts[d] != 0) return static_cast<std::uint32_t>(d);
    }
    return 0;
}

std::optional<double> histogram_apl(const DistanceHistogram& h) {
    if (h.reachable_pairs == 0) return std::nullopt;
    std::uint64_t total = 0;
    for (std::size_t d = 1; d < h.counts.size(); ++d) total += d * h.counts[d];
    return static_cast<double>(total) / static_cast<double>(h.reachable_pairs);
}

double histogram_efficiency(const DistanceHistogram& h, std::size_t population) {
    if (population == 0) population = h.alive;
    if (population < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t d = 1; d < h.counts.size(); ++d) {
        sum += static_cast<double>(h.counts[d]) / static_cast<double>(d);
    }
    return sum / ordered_pairs(population);
}

double histogram_reachable_fraction(const DistanceHistogram& h) {
    if (h.alive < 2) return 0.0;
    return static_cast<double>(h.reachable_pairs) / ordered_pairs(h.alive);
}

std::uint32_t diameter(const Graph& g) {
    require_pairs(g, "diameter");
    return histogram_diameter(distance_histogram(g));
}

PathLength average_path_length(const Graph& g) {
    require_pairs(g, "average_path_length");
    const auto h = distance_histogram(g);
    const auto apl = histogram_apl(h);
    if (!apl) throw UndefinedValueError("average_path_length: no reachable pair");
    return {*apl, histogram_reachable_fraction(h)};
}

double global_efficiency(const Graph& g) {
    require_pairs(g, "global_efficiency");
    return histogram_efficiency(distance_histogram(g));
}

std::vector<double> local_clustering(const Graph& g) {
    std::vector<double> c(g.node_count(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        if (k < 2) continue;
        c[v] = 2.0 * static_cast<double>(triangles_at(g, v)) / (k * (k - 1.0));
    }
    return c;
}

double global_clustering(const Graph& g, const MetricOptions& opts) {
    if (g.alive_count() == 0) throw PreconditionError("global_clustering: no alive node");
    const auto c = local_clustering(g);
    double sum = 0.0;
    std::size_t counted = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!g.is_alive(v)) continue;
        if (opts.low_degree == LowDegreeClustering::Exclude && g.degree(v) < 2) continue;
        sum += c[v];
        ++counted;
    }
    return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

double degree_variance(const Graph& g) {
    if (g.alive_count() == 0) throw PreconditionError("degree_variance: no alive node");
    const double n = static_cast<double>(g.alive_count());
    const double mean = 2.0 * static_cast<double>(g.link_count()) / n;
    double ss = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!g.is_alive(v)) continue;
        const double dev = static_cast<double>(g.degree(v)) - mean;
        ss += dev * dev;
    }
    return ss / n;
}

MetricVector measure_point(const Graph& g, const MetricOptions& opts) {
    MetricVector m;
    m.alive_n = g.alive_count();
    if (m.alive_n >= 1) {
        m.clustering = global_clustering(g, opts);
        m.degree_variance = degree_variance(g);
    }
    if (m.alive_n >= 2) {
        const auto h = distance_histogram(g);
        m.diameter = histogram_diameter(h);
        m.apl = histogram_apl(h);
        m.efficiency = histogram_efficiency(h, opts.efficiency_population);
        m.reachable_pair_fraction = histogram_reachable_fraction(h);
    } else if (opts.efficiency_population >= 2) {
        m.efficiency = 0.0;
    }
    return m;
}

MetricVector measure_all(const Graph& g, const MetricOptions& opts) {
    require_pairs(g, "measure_all");
    MetricVector m = measure_point(g, opts);
    if (!m.apl) throw UndefinedValueError("measure_all: no reachable pair, average path length undefined");
    return m;
}

}  // namespace rcsim
