#include "rcsim/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

bool skippable(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '#';
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

Graph read_edge_list(std::istream& in, std::size_t min_nodes) {
    std::vector<Edge> links;
    std::size_t n = min_nodes;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skippable(line)) {
            // Header written by write_edge_list keeps trailing isolated nodes.
            std::istringstream header(line);
            std::string hash, key;
            std::size_t count = 0;
            if (header >> hash >> key >> count && hash == "#" && key == "nodes") n = std::max(n, count);
            continue;
        }
        std::istringstream fields(line);
        long long a = -1;
        long long b = -1;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0) {
            throw SchemaError("edge list line " + std::to_string(lineno) + ": expected two non-negative ids");
        }
        if (a == b) throw SchemaError("edge list line " + std::to_string(lineno) + ": self-loop");
        links.push_back(Edge::of(static_cast<NodeId>(a), static_cast<NodeId>(b)));
        n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(a, b)) + 1);
    }
    Graph g(n);
    for (const Edge& e : links) {
        if (!g.add_edge(e.u, e.v)) {
            throw SchemaError("edge list: duplicate link " + std::to_string(e.u) + " " + std::to_string(e.v));
        }
    }
    return g;
}

Graph read_edge_list(const std::filesystem::path& path, std::size_t min_nodes) {
    auto in = open_in(path);
    try {
        return read_edge_list(in, min_nodes);
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# nodes " << g.node_count() << " links " << g.link_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    auto out = open_out(path);
    write_edge_list(out, g);
}

std::vector<std::size_t> read_degree_sequence(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::size_t> out;
    std::string line;
    while (std::getline(in, line)) {
        if (skippable(line)) continue;
        std::istringstream fields(line);
        long long k = -1;
        if (!(fields >> k) || k < 0) throw SchemaError(path.string() + ": bad degree '" + line + "'");
        out.push_back(static_cast<std::size_t>(k));
    }
    return out;
}

void write_degree_sequence(const std::filesystem::path& path, const std::vector<std::size_t>& degrees) {
    auto out = open_out(path);
    for (std::size_t k : degrees) out << k << '\n';
}

}  // namespace rcsim
