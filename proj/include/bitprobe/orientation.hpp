#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bitprobe/graph.hpp"

namespace bitprobe {

// Graph plus a RED/GREEN edge coloring. GREEN edges are the ones that carry
// stored elements; everything else is RED.
struct ColoredGraph {
    Graph graph;
    std::vector<uint8_t> green;  // one flag per edge

    int green_count() const;
    std::vector<int> green_edges() const;  // ascending edge indices
};

ColoredGraph make_colored_graph(Graph g, const std::vector<int>& green_edge_indices);

// Per-edge direction: 0 points the edge at its smaller endpoint, 1 at its
// larger endpoint.
struct Orientation {
    std::vector<uint8_t> direction;
};

inline int edge_head(const Edge& e, int dir) { return dir ? e.v : e.u; }

enum class VertexMark : uint8_t { Unvisited, Red, Green };

// Forest produced by the color-constrained BFS: a GREEN-marked vertex
// explores all incident edges, a RED-marked vertex only its GREEN edges, so
// no root-to-leaf tree path contains two consecutive RED edges.
struct BFSForest {
    std::vector<int> parent;       // -1 for roots and unvisited vertices
    std::vector<int> parent_edge;  // -1 likewise
    std::vector<VertexMark> mark;
    std::vector<uint8_t> tree_edge;  // one flag per edge
    std::vector<int> roots;
    std::vector<int> visit_order;  // queue pop order
};

// Roots are marked GREEN and enqueued in the given order; neighbors are
// enqueued in ascending vertex order.
BFSForest constrained_bfs(const ColoredGraph& h, const std::vector<int>& roots);

// A non-tree edge blocks the away-from-root orientation if it is GREEN with
// both endpoints visited, or RED with both endpoints marked GREEN.
bool is_blocking_edge(const ColoredGraph& h, const BFSForest& f, int edge_index);
std::optional<int> find_blocking_edge(const ColoredGraph& h, const BFSForest& f);

// Cycle in which all but at most one RED edge is cyclically followed by a
// GREEN edge (equivalently: at most one adjacent RED-RED pair).
bool is_green_dominated(const ColoredGraph& h, const std::vector<int>& cycle);

// Searches by running the constrained BFS from every vertex and closing a
// blocking edge through tree paths to the lowest common ancestor. Returns
// the cycle as a vertex sequence.
std::optional<std::vector<int>> find_green_dominated_cycle(const ColoredGraph& h);

// Safety: every vertex with an incoming GREEN edge has total in-degree
// exactly one.
bool is_safe(const ColoredGraph& h, const Orientation& o);

struct SafeOrientReport {
    Orientation orientation;
    bool brute_force_fallback = false;
    std::vector<std::string> steps;  // one entry per peeling round
};

// Constructive safe orientation for graphs of even girth g >= 4 (or acyclic)
// with at most floor(3g/4) GREEN edges. The output is re-validated with
// is_safe; if the case analysis ever fails (which the preconditions rule
// out), the exhaustive search below is used and the report says so.
SafeOrientReport safe_orient_detailed(const ColoredGraph& h);
Orientation safe_orient(const ColoredGraph& h);

// Tries all 2^M orientations in lexicographic order (edge 0 is the least
// significant bit) and returns the first safe one. Refuses above max_edges.
std::optional<Orientation> brute_force_safe_orient(const ColoredGraph& h, int max_edges = 24);

}  // namespace bitprobe
