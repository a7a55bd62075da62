#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitprobe/graph.hpp"
#include "bitprobe/memory.hpp"

namespace bitprobe {

enum class SchemeId {
    ClassicalAdaptive,    // ca: edge bit orients the second probe
    QuantumAdaptive,      // qa: edge bit selects one of two XOR tables
    Qn22,                 // qn22: two non-adaptive XOR probes, n <= 2
    Qn23,                 // qn23: three non-adaptive XOR probes, n <= 2
    AppendixNonAdaptive,  // appx: edge bit AND one XOR probe, non-adaptive
    CharVec,              // cv: characteristic vector baseline
};

std::string scheme_code(SchemeId id);
std::optional<SchemeId> scheme_from_code(const std::string& code);

struct scheme_config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The stored set: distinct universe elements.
struct QuerySet {
    std::vector<uint64_t> elements;  // sorted, unique

    int size() const { return static_cast<int>(elements.size()); }
};

QuerySet make_query_set(std::vector<uint64_t> elements);

// Smallest even girth g with n <= floor(3g/4); defined for n >= 2.
int g_min(int n);

// Universe packing for the graph-based schemes: x <-> (edge x/K, slice x%K).
struct ElementCode {
    int edge_index = 0;
    int slice = 0;
};

inline ElementCode encode_element(uint64_t x, int K) {
    return {static_cast<int>(x / static_cast<uint64_t>(K)),
            static_cast<int>(x % static_cast<uint64_t>(K))};
}
inline uint64_t decode_element(ElementCode code, int K) {
    return static_cast<uint64_t>(code.edge_index) * static_cast<uint64_t>(K) +
           static_cast<uint64_t>(code.slice);
}

struct SchemeInstance {
    SchemeId id = SchemeId::CharVec;
    uint64_t m = 0;  // universe size
    int n = 0;       // capacity bound on |S|
    int t = 1;       // probe budget per query
    int K = 0;       // slices per edge (graph-based schemes)
    ProbeClass probe_class = ProbeClass::NonAdaptive;
    Graph graph;                          // empty for non-graph schemes
    int side_a = 0, side_b = 0, side_c = 0;  // product-universe side sizes
    BitStore store;
};

// Stores: each builds a fresh sealed instance for the given set. Universe
// elements must lie in [0, m) and |S| must fit the scheme's capacity.
SchemeInstance classical_adaptive_store(const Graph& g, int K, uint64_t m, int n,
                                        const QuerySet& s);
SchemeInstance quantum_adaptive_store(const Graph& g, int K, uint64_t m, int n,
                                      const QuerySet& s);
SchemeInstance qn22_store(uint64_t m, const QuerySet& s);
SchemeInstance qn23_store(uint64_t m, const QuerySet& s);
SchemeInstance appendix_nonadaptive_store(const Graph& g, int K, uint64_t m, int n,
                                          const QuerySet& s);
SchemeInstance charvec_store(uint64_t m, const QuerySet& s);

// Queries: append probes to the session's transcript and return membership.
bool classical_adaptive_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool quantum_adaptive_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool qn22_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool qn23_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool appendix_nonadaptive_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool charvec_query(const SchemeInstance&, uint64_t x, ProbeSession&);

bool scheme_query(const SchemeInstance&, uint64_t x, ProbeSession&);
bool scheme_query(const SchemeInstance&, uint64_t x);

// Re-runs the query under an injected result script (adaptivity audits).
ProbeTranscript scheme_replay(const SchemeInstance&, uint64_t x,
                              const std::vector<int>& injected);

// Closed-form space of the scheme's layout; always equals store.total_bits().
uint64_t expected_space_bits(const SchemeInstance&);

// Substrate policy for a requested (m, n): the registered family with girth
// g_min(n) (complete bipartite for 4, projective plane for 6, Wenger for 8),
// pruned random graphs beyond that.
Graph select_graph_for(uint64_t m, int n, uint64_t seed = 1);

// Default slices-per-edge: ceil(m / M).
int default_K(const Graph& g, uint64_t m);

uint64_t ceil_isqrt(uint64_t m);
uint64_t ceil_icbrt(uint64_t m);

// State file: one line of JSON (scheme id, parameters, graph, region table)
// followed by the raw payload bits; bit-exact across platforms.
void save_scheme(const SchemeInstance&, const std::string& path);
SchemeInstance load_scheme(const std::string& path);

}  // namespace bitprobe
