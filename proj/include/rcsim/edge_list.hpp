#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rcsim/graph.hpp"

namespace rcsim {

// Edge list: one link per line, "u v" as zero-based ids, '#' lines ignored.
// The node count is max id + 1 unless a larger one is given.

Graph read_edge_list(std::istream& in, std::size_t min_nodes = 0);
Graph read_edge_list(const std::filesystem::path& path, std::size_t min_nodes = 0);

/// Writes a "# nodes N links M" comment then the sorted links of g.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

// Degree-sequence file: one non-negative integer per line.

std::vector<std::size_t> read_degree_sequence(const std::filesystem::path& path);
void write_degree_sequence(const std::filesystem::path& path, const std::vector<std::size_t>& degrees);

}  // namespace rcsim
