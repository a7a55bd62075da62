#pragma once

#include <stdexcept>
#include <vector>

#include "bitprobe/graph.hpp"

namespace bitprobe {

// The substrate graph cannot support the requested construction (dense core
// overflow, forest partition failure); callers regenerate the graph.
struct substrate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Disjoint split of an edge set into two acyclic halves.
struct ForestPartition {
    std::vector<int> forest1;  // edge indices into the parent graph
    std::vector<int> forest2;
};

struct DenseCoreStep {
    int vertex;
    std::vector<int> witness_edges;  // edges into the set at addition time
};

// Closure of the seed set under "add any vertex with at least two edges into
// the current set", with the addition order recorded.
struct DenseCore {
    std::vector<int> vertices;  // sorted
    std::vector<DenseCoreStep> growth_trace;
};

// Grows from seed_vertices (the GREEN edge endpoints, at most 2n of them),
// scanning candidates in ascending vertex order each round. Throws
// substrate_error once more than 2n vertices have been added: on a
// (4n, 5/4)-locally sparse graph the growth always stops earlier.
DenseCore grow_dense_core(const Graph& g, const std::vector<int>& seed_vertices, int n);

// Same, with an explicit candidate scan order (first eligible wins).
DenseCore grow_dense_core(const Graph& g, const std::vector<int>& seed_vertices, int n,
                          const std::vector<int>& scan_order);

// true iff the edge subset contains no cycle.
bool is_forest(const Graph& g, const std::vector<int>& edge_subset);

// Partitions the edges induced by vertex_subset into two forests: greedy
// insertion with breadth-first augmenting reassignment across the two
// forests. Succeeds whenever every subset X of the induced subgraph spans
// at most 2(|X|-1) edges; the output is re-verified and failures throw.
ForestPartition two_forest_partition(const Graph& g, const std::vector<int>& vertex_subset);

}  // namespace bitprobe
