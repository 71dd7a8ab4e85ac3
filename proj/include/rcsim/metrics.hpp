#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rcsim/graph.hpp"

namespace rcsim {

/// How nodes of degree < 2 enter the mean local clustering coefficient.
enum class LowDegreeClustering {
    Zero,     ///< C_i = 0, node counts in the average
    Exclude,  ///< node left out of the average
};

struct MetricOptions {
    LowDegreeClustering low_degree = LowDegreeClustering::Zero;
    /// Node count whose ordered pairs normalize efficiency; 0 means the alive
    /// count. Removal traces pass the pre-removal count, so removed nodes
    /// enter as unreachable and efficiency cannot rise as nodes disappear.
    std::size_t efficiency_population = 0;
};

/// Ordered-pair shortest-path counts over alive nodes.
/// counts[d] = number of ordered pairs (i, j), i != j, at distance d >= 1.
struct DistanceHistogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t reachable_pairs = 0;
    std::uint64_t unreachable_pairs = 0;
    std::size_t alive = 0;
};

/// One BFS per alive source. Integer counts, so the result does not depend
/// on traversal or reduction order.
DistanceHistogram distance_histogram(const Graph& g);

/// Global measures of one graph state. Absent fields are undefined for that
/// state (e.g. fewer than two alive nodes, or no reachable pair for APL).
struct MetricVector {
    std::optional<double> diameter;
    std::optional<double> apl;
    std::optional<double> efficiency;
    std::optional<double> clustering;
    std::optional<double> degree_variance;
    std::size_t alive_n = 0;
    std::optional<double> reachable_pair_fraction;

    friend bool operator==(const MetricVector&, const MetricVector&) = default;
};

/// Largest finite distance over alive pairs; 0 if no pair is reachable.
/// Throws PreconditionError below two alive nodes.
std::uint32_t diameter(const Graph& g);

struct PathLength {
    double apl = 0.0;
    double reachable_pair_fraction = 0.0;
};

/// Mean distance over reachable ordered pairs of alive nodes.
/// Throws UndefinedValueError if no pair is reachable.
PathLength average_path_length(const Graph& g);

/// Sum over alive ordered pairs of 1/d (0 when unreachable) / (N (N - 1)).
double global_efficiency(const Graph& g);

/// Local clustering C_i = 2 T_i / (k_i (k_i - 1)) per alive node.
std::vector<double> local_clustering(const Graph& g);

/// Mean local clustering over alive nodes.
double global_clustering(const Graph& g, const MetricOptions& opts = {});

/// Population variance of alive-node degrees.
double degree_variance(const Graph& g);

/// All measures from a single all-pairs sweep. Throws like the individual
/// operations (two alive nodes, at least one reachable pair).
MetricVector measure_all(const Graph& g, const MetricOptions& opts = {});

/// Like measure_all but never throws: undefined values are left empty.
MetricVector measure_point(const Graph& g, const MetricOptions& opts = {});

// Derived from a histogram; shared by the single-metric operations and the
// sweep so that both produce bit-identical values.
std::uint32_t histogram_diameter(const DistanceHistogram& h);
std::optional<double> histogram_apl(const DistanceHistogram& h);
double histogram_efficiency(const DistanceHistogram& h, std::size_t population = 0);
double histogram_reachable_fraction(const DistanceHistogram& h);

}  // namespace rcsim
