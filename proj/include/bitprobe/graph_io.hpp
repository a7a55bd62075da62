#pragma once

#include <iosfwd>
#include <string>

#include "bitprobe/graph.hpp"

namespace bitprobe {

// Text format: first line "N M", then M lines "u v" with 0 <= u < v < N,
// sorted lexicographically. The reader is strict and rejects files that
// deviate from the format.
Graph read_graph_text(std::istream& in);
void write_graph_text(const Graph& g, std::ostream& out);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

}  // namespace bitprobe
