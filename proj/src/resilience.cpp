#include "rcsim/resilience.hpp"

#include <algorithm>
#include <cmath>

#include "rcsim/errors.hpp"
#include "rcsim/random.hpp"

namespace rcsim {

std::string_view to_string(Strategy s) {
    return s == Strategy::Error ? "error" : "attack";
}

Strategy parse_strategy(std::string_view text) {
    if (text == "error") return Strategy::Error;
    if (text == "attack") return Strategy::AttackSimultaneous;
    throw ConfigError("unknown strategy '" + std::string(text) + "' (expected error or attack)");
}

std::size_t default_stride(std::size_t n) {
    return n <= 2000 ? 1 : (n + 499) / 500;
}

RemovalPlan removal_order(const Graph& g, Strategy strategy, std::uint64_t seed) {
    RemovalPlan plan;
    plan.strategy = strategy;
    plan.stride = default_stride(g.alive_count());
    plan.order = g.alive_nodes();
    if (strategy == Strategy::Error) {
        Rng rng(seed);
        rng.shuffle(plan.order);
        return plan;
    }
    std::vector<std::uint64_t> key(g.node_count());
    for (NodeId v : plan.order) key[v] = mix64(seed ^ mix64(v));
    std::sort(plan.order.begin(), plan.order.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        if (key[a] != key[b]) return key[a] < key[b];
        return a < b;
    });
    return plan;
}

Trace run_removal(const Graph& g, const RemovalPlan& plan, MetricOptions opts) {
    if (plan.stride < 1) throw PreconditionError("run_removal: stride must be >= 1");
    if (!(plan.stop_fraction > 0.0 && plan.stop_fraction <= 1.0)) {
        throw PreconditionError("run_removal: stop_fraction must lie in (0, 1]");
    }
    const std::size_t n = g.alive_count();
    std::vector<char> seen(g.node_count(), 0);
    for (NodeId v : plan.order) {
        if (!g.is_alive(v) || seen[v]) throw PreconditionError("run_removal: order is not a permutation of alive nodes");
        seen[v] = 1;
    }
    if (plan.order.size() != n) throw PreconditionError("run_removal: order is not a permutation of alive nodes");

    const auto total = std::min(n, static_cast<std::size_t>(std::floor(plan.stop_fraction * static_cast<double>(n) + 1e-9)));
    opts.efficiency_population = n;
    Graph work = g;
    Trace trace;
    trace.meta.strategy = plan.strategy;
    trace.points.push_back({0.0, measure_point(work, opts)});
    for (std::size_t r = 1; r <= total; ++r) {
        work.remove_node(plan.order[r - 1]);
        if (r % plan.stride == 0 || r == total) {
            trace.points.push_back({static_cast<double>(r) / static_cast<double>(n), measure_point(work, opts)});
        }
    }
    return trace;
}

namespace {

using Field = std::optional<double> MetricVector::*;
constexpr Field kFields[] = {&MetricVector::diameter,   &MetricVector::apl,
                             &MetricVector::efficiency, &MetricVector::clustering,
                             &MetricVector::degree_variance, &MetricVector::reachable_pair_fraction};

}  // namespace

Trace average_traces(std::span<const Trace> traces) {
    if (traces.empty()) throw PreconditionError("average_traces: no traces");
    const Trace& first = traces.front();
    for (const Trace& t : traces) {
        if (t.points.size() != first.points.size()) throw PreconditionError("average_traces: grids differ in length");
        for (std::size_t p = 0; p < t.points.size(); ++p) {
            if (t.points[p].removed_fraction != first.points[p].removed_fraction) {
                throw PreconditionError("average_traces: fraction grids do not align");
            }
        }
    }
    Trace out;
    out.meta = first.meta;
    out.meta.sources.clear();
    for (const Trace& t : traces) {
        out.meta.sources.insert(out.meta.sources.end(), t.meta.sources.begin(), t.meta.sources.end());
    }
    out.points.resize(first.points.size());
    for (std::size_t p = 0; p < first.points.size(); ++p) {
        TracePoint& pt = out.points[p];
        pt.removed_fraction = first.points[p].removed_fraction;
        pt.metrics.alive_n = first.points[p].metrics.alive_n;
        for (Field f : kFields) {
            double sum = 0.0;
            std::size_t defined = 0;
            for (const Trace& t : traces) {
                if (const auto& v = t.points[p].metrics.*f) {
                    sum += *v;
                    ++defined;
                }
            }
            if (defined > 0) pt.metrics.*f = sum / static_cast<double>(defined);
        }
    }
    return out;
}

}  // namespace rcsim
