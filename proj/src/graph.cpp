#include "rcsim/graph.hpp"

#include <algorithm>
#include <string>

#include "rcsim/errors.hpp"

namespace rcsim {

Graph::Graph(std::size_t n) : adjacency_(n), alive_(n, 1), alive_count_(n) {
    if (n >= kUnreachable) throw PreconditionError("graph too large");
}

void Graph::require_alive(NodeId i, const char* what) const {
    if (i >= node_count()) {
        throw PreconditionError(std::string(what) + ": node " + std::to_string(i) + " out of range");
    }
    if (!alive_[i]) {
        throw PreconditionError(std::string(what) + ": node " + std::to_string(i) + " was removed");
    }
}

bool Graph::has_edge(NodeId i, NodeId j) const {
    if (i >= node_count() || j >= node_count()) return false;
    const auto& a = adjacency_[i].size() <= adjacency_[j].size() ? adjacency_[i] : adjacency_[j];
    const NodeId other = &a == &adjacency_[i] ? j : i;
    return std::binary_search(a.begin(), a.end(), other);
}

bool Graph::add_edge(NodeId i, NodeId j) {
    require_alive(i, "add_edge");
    require_alive(j, "add_edge");
    if (i == j) throw PreconditionError("add_edge: self-loop on node " + std::to_string(i));
    auto& ai = adjacency_[i];
    auto pos = std::lower_bound(ai.begin(), ai.end(), j);
    if (pos != ai.end() && *pos == j) return false;
    ai.insert(pos, j);
    auto& aj = adjacency_[j];
    aj.insert(std::lower_bound(aj.begin(), aj.end(), i), i);
    ++links_;
    return true;
}

bool Graph::remove_edge(NodeId i, NodeId j) {
    if (i >= node_count() || j >= node_count() || i == j) return false;
    auto& ai = adjacency_[i];
    auto pos = std::lower_bound(ai.begin(), ai.end(), j);
    if (pos == ai.end() || *pos != j) return false;
    ai.erase(pos);
    auto& aj = adjacency_[j];
    aj.erase(std::lower_bound(aj.begin(), aj.end(), i));
    --links_;
    return true;
}

std::size_t Graph::remove_node(NodeId i) {
    require_alive(i, "remove_node");
    auto& ai = adjacency_[i];
    for (NodeId j : ai) {
        auto& aj = adjacency_[j];
        aj.erase(std::lower_bound(aj.begin(), aj.end(), i));
    }
    const std::size_t removed = ai.size();
    links_ -= removed;
    ai.clear();
    ai.shrink_to_fit();
    alive_[i] = 0;
    --alive_count_;
    return removed;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(links_);
    for (NodeId i = 0; i < node_count(); ++i) {
        for (auto it = std::upper_bound(adjacency_[i].begin(), adjacency_[i].end(), i);
             it != adjacency_[i].end(); ++it) {
            out.push_back({i, *it});
        }
    }
    return out;
}

std::vector<NodeId> Graph::alive_nodes() const {
    std::vector<NodeId> out;
    out.reserve(alive_count_);
    for (NodeId i = 0; i < node_count(); ++i) {
        if (alive_[i]) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> out(node_count());
    for (NodeId i = 0; i < node_count(); ++i) out[i] = adjacency_[i].size();
    return out;
}

DistanceRow bfs_distances(const Graph& g, NodeId source) {
    if (!g.is_alive(source)) {
        throw PreconditionError("bfs_distances: source " + std::to_string(source) + " is not alive");
    }
    BfsWorkspace ws(g.node_count());
    ws.run(g, source, [](NodeId, std::uint32_t) {});
    const auto d = ws.distances();
    return {source, {d.begin(), d.end()}};
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<NodeId> local(g.node_count(), kUnreachable);
    InducedSubgraph out;
    for (NodeId v : nodes) {
        if (!g.is_alive(v)) {
            throw PreconditionError("induced_subgraph: node " + std::to_string(v) + " is not alive");
        }
        if (local[v] != kUnreachable) continue;
        local[v] = static_cast<NodeId>(out.original_ids.size());
        out.original_ids.push_back(v);
    }
    out.graph = Graph(out.original_ids.size());
    for (NodeId a = 0; a < out.original_ids.size(); ++a) {
        for (NodeId w : g.neighbors(out.original_ids[a])) {
            const NodeId b = local[w];
            if (b != kUnreachable && a < b) out.graph.add_edge(a, b);
        }
    }
    return out;
}

std::size_t count_internal_links(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<char> member(g.node_count(), 0);
    for (NodeId v : nodes) member.at(v) = 1;
    std::size_t twice = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!member[v]) continue;
        for (NodeId w : g.neighbors(v)) twice += member[w];
    }
    return twice / 2;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (!g.is_alive(s) || seen[s]) continue;
        std::vector<NodeId> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace rcsim
