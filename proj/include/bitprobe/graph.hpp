#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bitprobe {

// Undirected simple graph over vertices [0, vertex_count). Edges are stored
// as (u, v) with u < v, sorted lexicographically, no duplicates.
struct Edge {
    int u = 0;
    int v = 0;

    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }
};

struct Graph {
    int vertex_count = 0;
    std::vector<Edge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
};

// Normalizes endpoint order, sorts the edge list, and validates the Graph
// invariants. Throws std::invalid_argument on self-loops, duplicates, or
// out-of-range endpoints.
Graph make_graph(int vertex_count, std::vector<Edge> edges);

// Per-vertex list of (neighbor, edge index), neighbors ascending.
std::vector<std::vector<std::pair<int, int>>> adjacency(const Graph& g);

std::optional<int> find_edge_index(const Graph& g, int u, int v);

// Number of edges with both endpoints in `vertex_set`.
int count_induced_edges(const Graph& g, const std::vector<int>& vertex_set);

struct GirthCertificate {
    std::optional<int> girth;        // nullopt: acyclic (infinite girth)
    std::vector<int> witness_cycle;  // vertex sequence, empty when infinite

    bool is_infinite() const { return !girth.has_value(); }
};

// Length of the shortest simple cycle, with a verified witness. BFS from
// every vertex; the minimum over all non-tree closing edges is exact.
GirthCertificate girth(const Graph& g);

// K_{a,a}: 2a vertices, a^2 edges, girth 4. Requires a >= 2.
Graph complete_bipartite(int a);

// Point-line incidence graph of the projective plane of prime order q:
// bipartite, 2(q^2+q+1) vertices, (q+1)(q^2+q+1) edges, girth 6.
Graph projective_plane_incidence(int q);

// Bipartite graph on two copies of F_p^k (2p^k vertices, p^{k+1} edges);
// for k = 3 the girth is at least 8. Requires p prime and k in {2, 3}.
Graph wenger_graph(int k, int p);

// Deletes one edge of a detected short cycle until girth >= target_girth.
// Cycle detection scans roots in a seed-shuffled order; within a detected
// cycle the lexicographically smallest edge is removed.
Graph prune_to_girth(const Graph& g, int target_girth, uint64_t seed);

// G(N, p) with p = (1/50) N^{-5/6}; identical output for identical
// (n_vertices, seed) on every platform. Requires n_vertices >= 16.
Graph random_locally_sparse(int n_vertices, uint64_t seed);

enum class SparsityMode { Exact, Sampled };

// Exact fraction, used so sparsity thresholds never touch floating point.
struct Rational {
    long long num = 0;
    long long den = 1;
};

struct SparsityReport {
    bool satisfied = true;
    std::vector<int> violating_set;  // empty when satisfied
    int induced_edge_count = 0;
    SparsityMode mode = SparsityMode::Exact;
    int trials = 0;      // Sampled only
    uint64_t seed = 0;   // Sampled only
};

// (k, alpha)-local sparsity: every vertex subset of size 4..k induces at
// most alpha * |subset| edges. Exact mode enumerates subsets (k capped at
// exact_cap, error beyond); Sampled mode draws random connected subsets.
// A returned violating_set is always a true violation.
SparsityReport check_local_sparsity(const Graph& g, int k, Rational alpha, SparsityMode mode,
                                    int trials = 2000, uint64_t seed = 0, int exact_cap = 10);

// Every non-empty vertex subset X must induce at most 2(|X|-1) edges
// (the condition for a partition into two forests). Exact enumeration;
// vertex count capped at exact_cap.
SparsityReport check_nash_williams_condition(const Graph& g, int exact_cap = 22);

bool is_prime(long long x);
long long next_prime_at_least(long long lo);

}  // namespace bitprobe
