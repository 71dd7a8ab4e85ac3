#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace rcsim {

using NodeId = std::uint32_t;

/// Undirected link with u < v.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    static Edge of(NodeId a, NodeId b) noexcept { return a < b ? Edge{a, b} : Edge{b, a}; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph over a fixed id range 0..n-1.
///
/// Neighbor sets are sorted vectors: membership is a binary search and BFS
/// walks contiguous memory. Removing a node marks it dead and strips its
/// links; ids never shift, so removal traces can refer to original ids.
///
/// Not synchronized. Concurrent const access is safe.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t alive_count() const noexcept { return alive_count_; }
    std::size_t link_count() const noexcept { return links_; }

    bool is_alive(NodeId i) const noexcept { return i < alive_.size() && alive_[i] != 0; }
    std::size_t degree(NodeId i) const { return adjacency_.at(i).size(); }
    std::span<const NodeId> neighbors(NodeId i) const { return adjacency_.at(i); }

    bool has_edge(NodeId i, NodeId j) const;

    /// Returns false if the link already exists. Throws PreconditionError on
    /// self-loops and on dead or out-of-range endpoints.
    bool add_edge(NodeId i, NodeId j);

    /// Returns false if the link was absent.
    bool remove_edge(NodeId i, NodeId j);

    /// Marks i dead and deletes its links; returns how many were deleted.
    std::size_t remove_node(NodeId i);

    std::vector<Edge> edges() const;
    std::vector<NodeId> alive_nodes() const;
    std::vector<std::size_t> degrees() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void require_alive(NodeId i, const char* what) const;

    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<char> alive_;
    std::size_t alive_count_ = 0;
    std::size_t links_ = 0;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Hop distances from one source; kUnreachable for dead or disconnected nodes.
struct DistanceRow {
    NodeId source = 0;
    std::vector<std::uint32_t> dist;
};

DistanceRow bfs_distances(const Graph& g, NodeId source);

/// Reusable scratch for repeated BFS sweeps. `visit` receives each reached
/// node (excluding the source) with its distance, in BFS order.
class BfsWorkspace {
public:
    explicit BfsWorkspace(std::size_t n) : dist_(n, kUnreachable) { queue_.reserve(n); }

    template <class Visit>
    void run(const Graph& g, NodeId source, Visit&& visit) {
        for (NodeId v : queue_) dist_[v] = kUnreachable;
        queue_.clear();
        dist_[source] = 0;
        queue_.push_back(source);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const NodeId u = queue_[head];
            const std::uint32_t next = dist_[u] + 1;
            for (NodeId w : g.neighbors(u)) {
                if (dist_[w] == kUnreachable) {
                    dist_[w] = next;
                    queue_.push_back(w);
                    visit(w, next);
                }
            }
        }
    }

    std::span<const std::uint32_t> distances() const noexcept { return dist_; }

private:
    std::vector<std::uint32_t> dist_;
    std::vector<NodeId> queue_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<NodeId> original_ids;  ///< new id -> id in the parent graph
};

/// Relabels `nodes` (in the given order) to 0..k-1. Duplicates are ignored.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Number of links of g with both endpoints in `nodes`.
std::size_t count_internal_links(const Graph& g, std::span<const NodeId> nodes);

/// Components over alive nodes, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

}  // namespace rcsim
