#include "bitprobe/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <random>

#include "json.hpp"

#include "bitprobe/forests.hpp"
#include "bitprobe/orientation.hpp"

namespace bitprobe {

std::string scheme_code(SchemeId id) {
    switch (id) {
        case SchemeId::ClassicalAdaptive: return "ca";
        case SchemeId::QuantumAdaptive: return "qa";
        case SchemeId::Qn22: return "qn22";
        case SchemeId::Qn23: return "qn23";
        case SchemeId::AppendixNonAdaptive: return "appx";
        case SchemeId::CharVec: return "cv";
    }
    return "?";
}

std::optional<SchemeId> scheme_from_code(const std::string& code) {
    for (SchemeId id : {SchemeId::ClassicalAdaptive, SchemeId::QuantumAdaptive, SchemeId::Qn22,
                        SchemeId::Qn23, SchemeId::AppendixNonAdaptive, SchemeId::CharVec})
        if (scheme_code(id) == code) return id;
    return std::nullopt;
}

QuerySet make_query_set(std::vector<uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return QuerySet{std::move(elements)};
}

int g_min(int n) {
    if (n < 2) throw std::invalid_argument("g_min requires n >= 2");
    int r = (n + 2) / 3;
    return n % 3 == 1 ? 4 * r - 2 : 4 * r;
}

uint64_t ceil_isqrt(uint64_t m) {
    if (m == 0) return 0;
    auto s = static_cast<uint64_t>(std::floor(std::sqrt(static_cast<double>(m))));
    while (s * s >= m) --s;
    while (s * s < m) ++s;
    return s;
}

uint64_t ceil_icbrt(uint64_t m) {
    if (m == 0) return 0;
    auto s = static_cast<uint64_t>(std::floor(std::cbrt(static_cast<double>(m))));
    while (s > 0 && s * s * s >= m) --s;
    while (s * s * s < m) ++s;
    return s;
}

int default_K(const Graph& g, uint64_t m) {
    uint64_t edges = std::max<uint64_t>(1, static_cast<uint64_t>(g.edge_count()));
    return static_cast<int>(std::max<uint64_t>(1, (m + edges - 1) / edges));
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw scheme_config_error(what);
}

void check_set(const QuerySet& s, uint64_t m, int capacity) {
    require(s.size() <= capacity, "stored set exceeds the scheme capacity");
    for (uint64_t x : s.elements) require(x < m, "stored element outside the universe");
}

// Per-edge sorted slice lists for the stored set.
std::vector<std::vector<int>> slices_by_edge(const QuerySet& s, int edge_count, int K) {
    std::vector<std::vector<int>> out(edge_count);
    for (uint64_t x : s.elements) {
        ElementCode code = encode_element(x, K);
        out[code.edge_index].push_back(code.slice);
    }
    return out;
}

std::vector<int> green_edges_of(const std::vector<std::vector<int>>& slices) {
    std::vector<int> greens;
    for (int e = 0; e < static_cast<int>(slices.size()); ++e)
        if (!slices[e].empty()) greens.push_back(e);
    return greens;
}

bool slice_stored(const std::vector<std::vector<int>>& slices, int e, int i) {
    const auto& list = slices[e];
    return std::binary_search(list.begin(), list.end(), i);
}

// Assigns vertex-array values so that out[v0*K+i] ^ out[v1*K+i] equals the
// stored-indicator of (e, i) for every edge e of the acyclic subset: each
// component is rooted at its lowest vertex with value 0 and propagated.
void solve_xor_forest(const Graph& g, const std::vector<int>& edge_subset, int K,
                      const std::vector<std::vector<int>>& slices, std::vector<uint8_t>& out) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);
    for (int e : edge_subset) {
        adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
        adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
    }
    std::vector<char> visited(g.vertex_count, 0);
    for (int root = 0; root < g.vertex_count; ++root) {
        if (visited[root] || adj[root].empty()) continue;
        visited[root] = 1;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [w, e] : adj[v]) {
                if (visited[w]) continue;
                visited[w] = 1;
                for (int i = 0; i < K; ++i) {
                    int rhs = slice_stored(slices, e, i) ? 1 : 0;
                    out[static_cast<size_t>(w) * K + i] =
                        static_cast<uint8_t>(out[static_cast<size_t>(v) * K + i] ^ rhs);
                }
                queue.push_back(w);
            }
        }
    }
}

void blit(BitStore& store, int region, const std::vector<uint8_t>& bits) {
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) store.set_bit({region, i}, 1);
}

void check_universe(const SchemeInstance& inst, uint64_t x) {
    if (x >= inst.m) throw std::domain_error("query element outside the universe");
}

}  // namespace

SchemeInstance classical_adaptive_store(const Graph& g, int K, uint64_t m, int n,
                                        const QuerySet& s) {
    require(K >= 1, "K must be positive");
    require(static_cast<uint64_t>(g.edge_count()) * static_cast<uint64_t>(K) >= m,
            "M*K must cover the universe");
    check_set(s, m, n);
    GirthCertificate cert = girth(g);
    if (!cert.is_infinite()) {
        require(*cert.girth % 2 == 0, "substrate girth must be even");
        require(n <= (3 * *cert.girth) / 4, "capacity n exceeds floor(3g/4) for this girth");
    }

    auto slices = slices_by_edge(s, g.edge_count(), K);
    ColoredGraph colored = make_colored_graph(g, green_edges_of(slices));
    Orientation orientation = safe_orient(colored);

    SchemeInstance inst;
    inst.id = SchemeId::ClassicalAdaptive;
    inst.m = m;
    inst.n = n;
    inst.t = 2;
    inst.K = K;
    inst.probe_class = ProbeClass::Adaptive;
    inst.graph = g;
    int region_a = inst.store.add_region("A", static_cast<uint64_t>(g.edge_count()));
    int region_b = inst.store.add_region("B", static_cast<uint64_t>(g.vertex_count) * K);
    for (int e = 0; e < g.edge_count(); ++e)
        if (orientation.direction[e]) inst.store.set_bit({region_a, static_cast<uint64_t>(e)}, 1);
    for (uint64_t x : s.elements) {
        ElementCode code = encode_element(x, K);
        int head = edge_head(g.edges[code.edge_index], orientation.direction[code.edge_index]);
        inst.store.set_bit(
            {region_b, static_cast<uint64_t>(head) * K + static_cast<uint64_t>(code.slice)}, 1);
    }
    inst.store.seal();
    return inst;
}

bool classical_adaptive_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    ElementCode code = encode_element(x, inst.K);
    const Edge& e = inst.graph.edges[code.edge_index];
    int a = session.read_bit({0, static_cast<uint64_t>(code.edge_index)});
    int head = a ? e.v : e.u;
    int bit = session.read_bit(
        {1, static_cast<uint64_t>(head) * inst.K + static_cast<uint64_t>(code.slice)});
    return bit == 1;
}

SchemeInstance quantum_adaptive_store(const Graph& g, int K, uint64_t m, int n,
                                      const QuerySet& s) {
    require(K >= 1, "K must be positive");
    require(static_cast<uint64_t>(g.edge_count()) * static_cast<uint64_t>(K) >= m,
            "M*K must cover the universe");
    check_set(s, m, n);

    auto slices = slices_by_edge(s, g.edge_count(), K);
    std::vector<int> greens = green_edges_of(slices);
    std::vector<int> seeds;
    for (int e : greens) {
        seeds.push_back(g.edges[e].u);
        seeds.push_back(g.edges[e].v);
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    DenseCore core = grow_dense_core(g, seeds, n);
    ForestPartition partition = two_forest_partition(g, core.vertices);

    std::vector<char> in_core(g.vertex_count, 0);
    for (int v : core.vertices) in_core[v] = 1;
    std::vector<char> in_f1(g.edge_count(), 0);
    for (int e : partition.forest1) in_f1[e] = 1;

    // A[e] = 0 for forest-1 edges and core-boundary edges; everything else
    // (forest 2, edges fully outside the core) reads 1.
    std::vector<uint8_t> a_bits(g.edge_count(), 0);
    std::vector<int> zero_side;
    for (int e = 0; e < g.edge_count(); ++e) {
        int inside = (in_core[g.edges[e].u] ? 1 : 0) + (in_core[g.edges[e].v] ? 1 : 0);
        bool zero = (inside == 2 && in_f1[e]) || inside == 1;
        a_bits[e] = zero ? 0 : 1;
        if (zero) zero_side.push_back(e);
    }
    if (!is_forest(g, zero_side))
        throw substrate_error("quantum store: the A=0 side acquired a cycle");

    std::vector<uint8_t> b0(static_cast<size_t>(g.vertex_count) * K, 0);
    std::vector<uint8_t> b1(static_cast<size_t>(g.vertex_count) * K, 0);
    solve_xor_forest(g, zero_side, K, slices, b0);
    solve_xor_forest(g, partition.forest2, K, slices, b1);

    SchemeInstance inst;
    inst.id = SchemeId::QuantumAdaptive;
    inst.m = m;
    inst.n = n;
    inst.t = 2;
    inst.K = K;
    inst.probe_class = ProbeClass::Adaptive;
    inst.graph = g;
    int region_a = inst.store.add_region("A", static_cast<uint64_t>(g.edge_count()));
    int region_b0 = inst.store.add_region("B0", static_cast<uint64_t>(g.vertex_count) * K);
    int region_b1 = inst.store.add_region("B1", static_cast<uint64_t>(g.vertex_count) * K);
    for (int e = 0; e < g.edge_count(); ++e)
        if (a_bits[e]) inst.store.set_bit({region_a, static_cast<uint64_t>(e)}, 1);
    blit(inst.store, region_b0, b0);
    blit(inst.store, region_b1, b1);
    inst.store.seal();
    return inst;
}

bool quantum_adaptive_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    ElementCode code = encode_element(x, inst.K);
    const Edge& e = inst.graph.edges[code.edge_index];
    int a = session.read_bit({0, static_cast<uint64_t>(code.edge_index)});
    int region = 1 + a;  // B0 or B1
    int bit = session.read_xor(
        {region, static_cast<uint64_t>(e.u) * inst.K + static_cast<uint64_t>(code.slice)},
        {region, static_cast<uint64_t>(e.v) * inst.K + static_cast<uint64_t>(code.slice)});
    return bit == 1;
}

namespace {

void flip(std::vector<uint8_t>& arr, uint64_t at) { arr[at] ^= 1; }
void fill_ones(std::vector<uint8_t>& arr) { std::fill(arr.begin(), arr.end(), 1); }

}  // namespace

SchemeInstance qn22_store(uint64_t m, const QuerySet& s) {
    require(s.size() <= 2, "qn22 stores at most two elements");
    for (uint64_t x : s.elements) require(x < m, "stored element outside the universe");
    const uint64_t side = ceil_isqrt(m);

    std::vector<uint8_t> x1(side, 0), x2(side, 0), y1(side, 0), y2(side, 0);
    auto a_of = [&](uint64_t x) { return x / side; };
    auto b_of = [&](uint64_t x) { return x % side; };

    if (s.size() == 1) {
        x1[a_of(s.elements[0])] = 1;
        y2[b_of(s.elements[0])] = 1;
    } else if (s.size() == 2) {
        uint64_t a = a_of(s.elements[0]), b = b_of(s.elements[0]);
        uint64_t a2 = a_of(s.elements[1]), b2 = b_of(s.elements[1]);
        if (a == a2) {
            x1[a] = 1;
            flip(y2, b);
            flip(y2, b2);
        } else if (b == b2) {
            flip(x1, a);
            flip(x1, a2);
            y2[b] = 1;
        } else {
            x1[a] = 1;
            y1[b2] = 1;
            x2[a2] = 1;
            y2[b] = 1;
        }
    }

    SchemeInstance inst;
    inst.id = SchemeId::Qn22;
    inst.m = m;
    inst.n = 2;
    inst.t = 2;
    inst.probe_class = ProbeClass::NonAdaptive;
    inst.side_a = static_cast<int>(side);
    inst.side_b = static_cast<int>(side);
    int rx1 = inst.store.add_region("X1", side);
    int rx2 = inst.store.add_region("X2", side);
    int ry1 = inst.store.add_region("Y1", side);
    int ry2 = inst.store.add_region("Y2", side);
    blit(inst.store, rx1, x1);
    blit(inst.store, rx2, x2);
    blit(inst.store, ry1, y1);
    blit(inst.store, ry2, y2);
    inst.store.seal();
    return inst;
}

bool qn22_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    const uint64_t side = static_cast<uint64_t>(inst.side_b);
    uint64_t a = x / side, b = x % side;
    int p1 = session.read_xor({0, a}, {2, b});  // X1[a] ^ Y1[b]
    int p2 = session.read_xor({1, a}, {3, b});  // X2[a] ^ Y2[b]
    return (p1 & p2) == 1;
}

SchemeInstance qn23_store(uint64_t m, const QuerySet& s) {
    require(s.size() <= 2, "qn23 stores at most two elements");
    for (uint64_t x : s.elements) require(x < m, "stored element outside the universe");
    const uint64_t side = ceil_icbrt(m);

    std::vector<uint8_t> x1(side, 0), x2(side, 0), y1(side, 0), y3(side, 0), z2(side, 0),
        z3(side, 0);
    auto a_of = [&](uint64_t x) { return x / (side * side); };
    auto b_of = [&](uint64_t x) { return (x / side) % side; };
    auto c_of = [&](uint64_t x) { return x % side; };

    if (s.size() == 1) {
        x1[a_of(s.elements[0])] = 1;
        z2[c_of(s.elements[0])] = 1;
        y3[b_of(s.elements[0])] = 1;
    } else if (s.size() == 2) {
        uint64_t a = a_of(s.elements[0]), b = b_of(s.elements[0]), c = c_of(s.elements[0]);
        uint64_t a2 = a_of(s.elements[1]), b2 = b_of(s.elements[1]), c2 = c_of(s.elements[1]);
        int agree = (a == a2) + (b == b2) + (c == c2);
        if (agree == 2) {
            if (a == a2 && b == b2) {  // c differs
                x1[a] = 1;
                flip(z2, c);
                flip(z2, c2);
                y3[b] = 1;
            } else if (a == a2 && c == c2) {  // b differs
                x1[a] = 1;
                z2[c] = 1;
                flip(y3, b);
                flip(y3, b2);
            } else {  // a differs
                flip(x1, a);
                flip(x1, a2);
                z2[c] = 1;
                y3[b] = 1;
            }
        } else if (agree == 1) {
            if (a == a2) {
                // (1 + da + db + db2)(1 + da + dc + dc2)(db + dc2)
                fill_ones(x1);
                flip(x1, a);
                flip(y1, b);
                flip(y1, b2);
                fill_ones(x2);
                flip(x2, a);
                flip(z2, c);
                flip(z2, c2);
                y3[b] = 1;
                z3[c2] = 1;
            } else if (b == b2) {
                // (da + da2 + 1 + db)(da + dc2)(1 + db + dc + dc2)
                flip(x1, a);
                flip(x1, a2);
                fill_ones(y1);
                flip(y1, b);
                x2[a] = 1;
                z2[c2] = 1;
                fill_ones(y3);
                flip(y3, b);
                flip(z3, c);
                flip(z3, c2);
            } else {  // c == c2
                // (da + db2)(da + da2 + 1 + dc)(db + db2 + 1 + dc)
                x1[a] = 1;
                y1[b2] = 1;
                flip(x2, a);
                flip(x2, a2);
                fill_ones(z2);
                flip(z2, c);
                flip(y3, b);
                flip(y3, b2);
                fill_ones(z3);
                flip(z3, c);
            }
        } else {
            // All coordinates differ: (da + db2)(da2 + dc)(db + dc2).
            x1[a] = 1;
            y1[b2] = 1;
            x2[a2] = 1;
            z2[c] = 1;
            y3[b] = 1;
            z3[c2] = 1;
        }
    }

    SchemeInstance inst;
    inst.id = SchemeId::Qn23;
    inst.m = m;
    inst.n = 2;
    inst.t = 3;
    inst.probe_class = ProbeClass::NonAdaptive;
    inst.side_a = static_cast<int>(side);
    inst.side_b = static_cast<int>(side);
    inst.side_c = static_cast<int>(side);
    int rx1 = inst.store.add_region("X1", side);
    int rx2 = inst.store.add_region("X2", side);
    int ry1 = inst.store.add_region("Y1", side);
    int ry3 = inst.store.add_region("Y3", side);
    int rz2 = inst.store.add_region("Z2", side);
    int rz3 = inst.store.add_region("Z3", side);
    blit(inst.store, rx1, x1);
    blit(inst.store, rx2, x2);
    blit(inst.store, ry1, y1);
    blit(inst.store, ry3, y3);
    blit(inst.store, rz2, z2);
    blit(inst.store, rz3, z3);
    inst.store.seal();
    return inst;
}

bool qn23_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    const uint64_t side = static_cast<uint64_t>(inst.side_c);
    uint64_t a = x / (side * side), b = (x / side) % side, c = x % side;
    int p1 = session.read_xor({0, a}, {2, b});  // X1[a] ^ Y1[b]
    int p2 = session.read_xor({1, a}, {4, c});  // X2[a] ^ Z2[c]
    int p3 = session.read_xor({3, b}, {5, c});  // Y3[b] ^ Z3[c]
    return (p1 & p2 & p3) == 1;
}

SchemeInstance appendix_nonadaptive_store(const Graph& g, int K, uint64_t m, int n,
                                          const QuerySet& s) {
    require(K >= 1, "K must be positive");
    require(static_cast<uint64_t>(g.edge_count()) * static_cast<uint64_t>(K) >= m,
            "M*K must cover the universe");
    check_set(s, m, n);
    GirthCertificate cert = girth(g);
    if (!cert.is_infinite())
        require(n < *cert.girth, "capacity n must stay below the substrate girth");

    auto slices = slices_by_edge(s, g.edge_count(), K);
    std::vector<int> greens = green_edges_of(slices);
    if (!is_forest(g, greens))
        throw scheme_config_error("appendix store: GREEN edges contain a cycle");

    std::vector<uint8_t> b_bits(static_cast<size_t>(g.vertex_count) * K, 0);
    solve_xor_forest(g, greens, K, slices, b_bits);

    SchemeInstance inst;
    inst.id = SchemeId::AppendixNonAdaptive;
    inst.m = m;
    inst.n = n;
    inst.t = 2;
    inst.K = K;
    inst.probe_class = ProbeClass::NonAdaptive;
    inst.graph = g;
    int region_a = inst.store.add_region("A", static_cast<uint64_t>(g.edge_count()));
    int region_b = inst.store.add_region("B", static_cast<uint64_t>(g.vertex_count) * K);
    for (int e : greens) inst.store.set_bit({region_a, static_cast<uint64_t>(e)}, 1);
    blit(inst.store, region_b, b_bits);
    inst.store.seal();
    return inst;
}

bool appendix_nonadaptive_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    ElementCode code = encode_element(x, inst.K);
    const Edge& e = inst.graph.edges[code.edge_index];
    int a = session.read_bit({0, static_cast<uint64_t>(code.edge_index)});
    int parity = session.read_xor(
        {1, static_cast<uint64_t>(e.u) * inst.K + static_cast<uint64_t>(code.slice)},
        {1, static_cast<uint64_t>(e.v) * inst.K + static_cast<uint64_t>(code.slice)});
    return (a & parity) == 1;
}

SchemeInstance charvec_store(uint64_t m, const QuerySet& s) {
    for (uint64_t x : s.elements) require(x < m, "stored element outside the universe");
    SchemeInstance inst;
    inst.id = SchemeId::CharVec;
    inst.m = m;
    inst.n = static_cast<int>(std::min<uint64_t>(m, 1u << 30));
    inst.t = 1;
    inst.probe_class = ProbeClass::NonAdaptive;
    int region = inst.store.add_region("V", m);
    for (uint64_t x : s.elements) inst.store.set_bit({region, x}, 1);
    inst.store.seal();
    return inst;
}

bool charvec_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    check_universe(inst, x);
    return session.read_bit({0, x}) == 1;
}

bool scheme_query(const SchemeInstance& inst, uint64_t x, ProbeSession& session) {
    switch (inst.id) {
        case SchemeId::ClassicalAdaptive: return classical_adaptive_query(inst, x, session);
        case SchemeId::QuantumAdaptive: return quantum_adaptive_query(inst, x, session);
        case SchemeId::Qn22: return qn22_query(inst, x, session);
        case SchemeId::Qn23: return qn23_query(inst, x, session);
        case SchemeId::AppendixNonAdaptive: return appendix_nonadaptive_query(inst, x, session);
        case SchemeId::CharVec: return charvec_query(inst, x, session);
    }
    throw std::logic_error("unknown scheme");
}

bool scheme_query(const SchemeInstance& inst, uint64_t x) {
    ProbeSession session(inst.store);
    session.reset(inst.probe_class);
    return scheme_query(inst, x, session);
}

ProbeTranscript scheme_replay(const SchemeInstance& inst, uint64_t x,
                              const std::vector<int>& injected) {
    ProbeSession session(inst.store, injected);
    session.reset(inst.probe_class);
    scheme_query(inst, x, session);
    return session.transcript();
}

uint64_t expected_space_bits(const SchemeInstance& inst) {
    const uint64_t M = static_cast<uint64_t>(inst.graph.edge_count());
    const uint64_t N = static_cast<uint64_t>(inst.graph.vertex_count);
    switch (inst.id) {
        case SchemeId::ClassicalAdaptive: return M + N * inst.K;
        case SchemeId::QuantumAdaptive: return M + 2 * N * inst.K;
        case SchemeId::Qn22: return 2ull * (inst.side_a + inst.side_b);
        case SchemeId::Qn23: return 2ull * (inst.side_a + inst.side_b + inst.side_c);
        case SchemeId::AppendixNonAdaptive: return M + N * inst.K;
        case SchemeId::CharVec: return inst.m;
    }
    throw std::logic_error("unknown scheme");
}

Graph select_graph_for(uint64_t m, int n, uint64_t seed) {
    int g = g_min(std::max(n, 2));
    if (g == 4) {
        int a = std::max<int>(2, static_cast<int>(std::llround(std::cbrt(static_cast<double>(m)))));
        return complete_bipartite(a);
    }
    if (g == 6) {
        auto q = next_prime_at_least(
            std::max<long long>(2, std::llround(std::pow(static_cast<double>(m), 0.25))));
        return projective_plane_incidence(static_cast<int>(q));
    }
    if (g == 8) {
        auto p = next_prime_at_least(
            std::max<long long>(2, std::llround(std::pow(static_cast<double>(m), 0.2))));
        return wenger_graph(3, static_cast<int>(p));
    }
    // No explicit family registered beyond girth 8: prune a seeded random
    // graph of average degree ~4 down to the requested girth.
    int n_vertices =
        std::max<int>(16, static_cast<int>(std::llround(std::pow(static_cast<double>(m), 0.75))));
    std::mt19937_64 rng(seed);
    const uint64_t threshold =
        static_cast<uint64_t>(4.0 / n_vertices * 18446744073709551616.0);
    std::vector<Edge> edges;
    for (int u = 0; u < n_vertices; ++u)
        for (int v = u + 1; v < n_vertices; ++v)
            if (rng() < threshold) edges.push_back({u, v});
    return prune_to_girth(make_graph(n_vertices, std::move(edges)), g, seed);
}

void save_scheme(const SchemeInstance& inst, const std::string& path) {
    nlohmann::json header;
    header["format"] = "bitprobe-state-v1";
    header["scheme"] = scheme_code(inst.id);
    header["m"] = inst.m;
    header["n"] = inst.n;
    header["t"] = inst.t;
    header["K"] = inst.K;
    header["probe_class"] = probe_class_name(inst.probe_class);
    header["sides"] = {inst.side_a, inst.side_b, inst.side_c};
    if (inst.graph.vertex_count > 0) {
        nlohmann::json edges = nlohmann::json::array();
        for (const Edge& e : inst.graph.edges) edges.push_back({e.u, e.v});
        header["graph"] = {{"vertices", inst.graph.vertex_count}, {"edges", edges}};
    } else {
        header["graph"] = nullptr;
    }
    nlohmann::json regions = nlohmann::json::array();
    for (int i = 0; i < inst.store.region_count(); ++i)
        regions.push_back({{"name", inst.store.region(i).name}, {"bits", inst.store.region(i).bits}});
    header["regions"] = regions;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    out << header.dump() << '\n';
    auto payload = inst.store.payload_bytes();
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
}

SchemeInstance load_scheme(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("state file: missing header");
    nlohmann::json header = nlohmann::json::parse(line);
    if (header.value("format", "") != "bitprobe-state-v1")
        throw std::runtime_error("state file: unknown format");

    SchemeInstance inst;
    auto id = scheme_from_code(header.at("scheme").get<std::string>());
    if (!id) throw std::runtime_error("state file: unknown scheme");
    inst.id = *id;
    inst.m = header.at("m").get<uint64_t>();
    inst.n = header.at("n").get<int>();
    inst.t = header.at("t").get<int>();
    inst.K = header.at("K").get<int>();
    inst.probe_class = header.at("probe_class").get<std::string>() == "adaptive"
                           ? ProbeClass::Adaptive
                           : ProbeClass::NonAdaptive;
    auto sides = header.at("sides");
    inst.side_a = sides.at(0).get<int>();
    inst.side_b = sides.at(1).get<int>();
    inst.side_c = sides.at(2).get<int>();
    if (!header.at("graph").is_null()) {
        std::vector<Edge> edges;
        for (const auto& e : header.at("graph").at("edges"))
            edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        inst.graph = make_graph(header.at("graph").at("vertices").get<int>(), std::move(edges));
    }
    std::vector<BitStoreRegion> regions;
    for (const auto& r : header.at("regions"))
        regions.push_back({r.at("name").get<std::string>(), r.at("bits").get<uint64_t>()});
    std::vector<uint8_t> payload((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
    inst.store = BitStore::from_payload(std::move(regions), payload);
    return inst;
}

}  // namespace bitprobe
