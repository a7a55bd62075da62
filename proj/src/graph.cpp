#include "bitprobe/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace bitprobe {

Graph make_graph(int vertex_count, std::vector<Edge> edges) {
    if (vertex_count < 0) throw std::invalid_argument("vertex_count must be non-negative");
    for (auto& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("self-loop");
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= vertex_count) throw std::invalid_argument("endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    return Graph{vertex_count, std::move(edges)};
}

std::vector<std::vector<std::pair<int, int>>> adjacency(const Graph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);
    for (int e = 0; e < g.edge_count(); ++e) {
        adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
        adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

std::optional<int> find_edge_index(const Graph& g, int u, int v) {
    if (u > v) std::swap(u, v);
    Edge key{u, v};
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), key);
    if (it != g.edges.end() && *it == key) return static_cast<int>(it - g.edges.begin());
    return std::nullopt;
}

int count_induced_edges(const Graph& g, const std::vector<int>& vertex_set) {
    std::vector<char> in(g.vertex_count, 0);
    for (int v : vertex_set) {
        if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("vertex out of range");
        in[v] = 1;
    }
    int count = 0;
    for (const Edge& e : g.edges)
        if (in[e.u] && in[e.v]) ++count;
    return count;
}

namespace {

// BFS from `root`; returns the shortest simple cycle found via a non-tree
// closing edge, provided it is shorter than `bound`. Minimizing over all
// roots yields the exact girth: a root on a shortest cycle always produces
// a simple closing walk of exactly that length.
struct RootScan {
    int length = 0;
    std::vector<int> cycle;
};

std::optional<RootScan> scan_root(const Graph& g,
                                  const std::vector<std::vector<std::pair<int, int>>>& adj,
                                  int root, int bound) {
    std::vector<int> dist(g.vertex_count, -1), parent(g.vertex_count, -1),
        parent_edge(g.vertex_count, -1);
    std::deque<int> queue;
    dist[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [w, e] : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }
    std::optional<RootScan> best;
    int best_len = bound;
    for (int e = 0; e < g.edge_count(); ++e) {
        int u = g.edges[e].u, v = g.edges[e].v;
        if (dist[u] < 0 || dist[v] < 0) continue;
        if (parent_edge[u] == e || parent_edge[v] == e) continue;  // tree edge
        int cand = dist[u] + dist[v] + 1;
        if (cand >= best_len) continue;
        auto path_to_root = [&](int x) {
            std::vector<int> path;
            for (int cur = x; cur != -1; cur = parent[cur]) path.push_back(cur);
            return path;  // x .. root
        };
        std::vector<int> pu = path_to_root(u), pv = path_to_root(v);
        // Candidate cycle: root..u (down), edge, v..root (up). Only simple
        // reconstructions count; non-simple ones always hide a shorter cycle
        // that another candidate will produce.
        std::vector<int> cycle(pu.rbegin(), pu.rend());
        cycle.insert(cycle.end(), pv.begin(), pv.end() - 1);
        std::set<int> uniq(cycle.begin(), cycle.end());
        if (static_cast<int>(uniq.size()) != cand) continue;
        best_len = cand;
        best = RootScan{cand, std::move(cycle)};
    }
    return best;
}

}  // namespace

GirthCertificate girth(const Graph& g) {
    auto adj = adjacency(g);
    GirthCertificate cert;
    int bound = g.edge_count() + 1;
    for (int root = 0; root < g.vertex_count; ++root) {
        auto hit = scan_root(g, adj, root, bound);
        if (hit) {
            bound = hit->length;
            cert.girth = hit->length;
            cert.witness_cycle = std::move(hit->cycle);
        }
    }
    return cert;
}

Graph complete_bipartite(int a) {
    if (a < 2) throw std::invalid_argument("complete_bipartite requires a >= 2");
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(a) * a);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) edges.push_back({i, a + j});
    return make_graph(2 * a, std::move(edges));
}

Graph projective_plane_incidence(int q) {
    if (!is_prime(q)) throw std::invalid_argument("projective plane order must be prime");
    // Homogeneous triples over F_q, normalized so the first nonzero
    // coordinate is 1; q^2 + q + 1 points and as many lines.
    std::vector<std::array<int, 3>> reps;
    reps.push_back({0, 0, 1});
    for (int z = 0; z < q; ++z) reps.push_back({0, 1, z});
    for (int y = 0; y < q; ++y)
        for (int z = 0; z < q; ++z) reps.push_back({1, y, z});
    std::sort(reps.begin(), reps.end());
    const int P = static_cast<int>(reps.size());
    std::vector<Edge> edges;
    for (int pi = 0; pi < P; ++pi) {
        for (int li = 0; li < P; ++li) {
            long long dot = 0;
            for (int c = 0; c < 3; ++c) dot += static_cast<long long>(reps[pi][c]) * reps[li][c];
            if (dot % q == 0) edges.push_back({pi, P + li});
        }
    }
    return make_graph(2 * P, std::move(edges));
}

Graph wenger_graph(int k, int p) {
    if (k != 2 && k != 3) throw std::invalid_argument("wenger_graph supports k in {2, 3}");
    if (!is_prime(p)) throw std::invalid_argument("wenger_graph requires p prime");
    const long long side = [&] {
        long long s = 1;
        for (int i = 0; i < k; ++i) s *= p;
        return s;
    }();
    // Vertices are k-tuples over F_p, encoded base p (coordinate 0 least
    // significant): points in [0, side), lines in [side, 2*side).
    // A point a and a line b are adjacent iff b[i+1] = a[1]*b[i] - a[i+1]
    // (mod p) for i = 1..k-1; each point has one neighbor per b[1].
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(side) * p);
    std::vector<int> a(k), b(k);
    for (long long ai = 0; ai < side; ++ai) {
        long long rest = ai;
        for (int i = 0; i < k; ++i) {
            a[i] = static_cast<int>(rest % p);
            rest /= p;
        }
        for (int b0 = 0; b0 < p; ++b0) {
            b[0] = b0;
            for (int i = 0; i + 1 < k; ++i) b[i + 1] = ((a[0] * b[i] - a[i + 1]) % p + p) % p;
            long long bi = 0;
            for (int i = k - 1; i >= 0; --i) bi = bi * p + b[i];
            edges.push_back({static_cast<int>(ai), static_cast<int>(side + bi)});
        }
    }
    return make_graph(static_cast<int>(2 * side), std::move(edges));
}

namespace {

// Implementation-pinned shuffle so seeded runs agree across standard
// libraries.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng() % i]);
}

// First simple cycle shorter than `bound`, scanning BFS roots in the given
// order. Exactness argument mirrors girth(): if the girth is below the
// bound, some root yields a simple reconstruction.
std::optional<std::vector<int>> find_short_cycle(const Graph& g, int bound,
                                                 const std::vector<int>& root_order) {
    auto adj = adjacency(g);
    for (int root : root_order) {
        auto hit = scan_root(g, adj, root, bound);
        if (hit) return hit->cycle;
    }
    return std::nullopt;
}

}  // namespace

Graph prune_to_girth(const Graph& g, int target_girth, uint64_t seed) {
    if (target_girth < 4) throw std::invalid_argument("target girth must be >= 4");
    std::mt19937_64 rng(seed);
    Graph cur = g;
    for (;;) {
        std::vector<int> roots(cur.vertex_count);
        std::iota(roots.begin(), roots.end(), 0);
        deterministic_shuffle(roots, rng);
        auto cycle = find_short_cycle(cur, target_girth, roots);
        if (!cycle) return cur;
        Edge victim{cur.vertex_count, cur.vertex_count};
        const auto& seq = *cycle;
        for (size_t i = 0; i < seq.size(); ++i) {
            int u = seq[i], v = seq[(i + 1) % seq.size()];
            Edge e{std::min(u, v), std::max(u, v)};
            if (e < victim) victim = e;
        }
        std::vector<Edge> kept;
        kept.reserve(cur.edges.size() - 1);
        for (const Edge& e : cur.edges)
            if (!(e == victim)) kept.push_back(e);
        cur = Graph{cur.vertex_count, std::move(kept)};
    }
}

Graph random_locally_sparse(int n_vertices, uint64_t seed) {
    if (n_vertices < 16) throw std::invalid_argument("random_locally_sparse requires N >= 16");
    const double p = (1.0 / 50.0) * std::pow(static_cast<double>(n_vertices), -5.0 / 6.0);
    // Threshold comparison against raw 64-bit draws keeps the generator
    // independent of std::distribution implementations.
    const auto threshold = static_cast<uint64_t>(p * 18446744073709551616.0);
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n_vertices; ++u)
        for (int v = u + 1; v < n_vertices; ++v)
            if (rng() < threshold) edges.push_back({u, v});
    return make_graph(n_vertices, std::move(edges));
}

namespace {

bool violates(long long edge_count, long long size, Rational alpha) {
    return edge_count * alpha.den > alpha.num * size;
}

// Depth-first enumeration of subsets of `pool` with incremental induced
// edge counting; returns the first subset of size in [4, k] that violates
// alpha-sparsity (sizes explored in ascending order).
struct SubsetEnumerator {
    const Graph& g;
    const std::vector<std::vector<std::pair<int, int>>>& adj;
    const std::vector<int>& pool;
    Rational alpha;
    int target_size;
    std::vector<char> chosen;
    std::vector<int> current;
    int edge_count = 0;

    SubsetEnumerator(const Graph& g_, const std::vector<std::vector<std::pair<int, int>>>& adj_,
                     const std::vector<int>& pool_, Rational alpha_, int target_size_)
        : g(g_), adj(adj_), pool(pool_), alpha(alpha_), target_size(target_size_),
          chosen(g_.vertex_count, 0) {}

    std::optional<std::pair<std::vector<int>, int>> run(size_t from = 0) {
        if (static_cast<int>(current.size()) == target_size) {
            if (violates(edge_count, target_size, alpha)) return std::make_pair(current, edge_count);
            return std::nullopt;
        }
        int missing = target_size - static_cast<int>(current.size());
        for (size_t i = from; i + missing <= pool.size(); ++i) {
            int v = pool[i];
            int gained = 0;
            for (auto [w, e] : adj[v]) {
                (void)e;
                if (chosen[w]) ++gained;
            }
            chosen[v] = 1;
            current.push_back(v);
            edge_count += gained;
            if (auto hit = run(i + 1)) return hit;
            edge_count -= gained;
            current.pop_back();
            chosen[v] = 0;
        }
        return std::nullopt;
    }
};

std::vector<int> two_core(const Graph& g) {
    auto adj = adjacency(g);
    std::vector<int> degree(g.vertex_count);
    for (int v = 0; v < g.vertex_count; ++v) degree[v] = static_cast<int>(adj[v].size());
    std::vector<char> removed(g.vertex_count, 0);
    std::deque<int> queue;
    for (int v = 0; v < g.vertex_count; ++v)
        if (degree[v] < 2) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (removed[v]) continue;
        removed[v] = 1;
        for (auto [w, e] : adj[v]) {
            (void)e;
            if (!removed[w] && --degree[w] < 2) queue.push_back(w);
        }
    }
    std::vector<int> core;
    for (int v = 0; v < g.vertex_count; ++v)
        if (!removed[v]) core.push_back(v);
    return core;
}

}  // namespace

SparsityReport check_local_sparsity(const Graph& g, int k, Rational alpha, SparsityMode mode,
                                    int trials, uint64_t seed, int exact_cap) {
    if (k < 4) throw std::invalid_argument("local sparsity requires k >= 4");
    if (alpha.den <= 0 || alpha.num < 0) throw std::invalid_argument("alpha must be non-negative");
    auto adj = adjacency(g);
    SparsityReport report;
    report.mode = mode;
    if (mode == SparsityMode::Exact) {
        if (k > exact_cap)
            throw std::invalid_argument("exact sparsity check refused: k exceeds cap; use sampled mode");
        // For alpha >= 1 every minimal violating set has minimum induced
        // degree 2, so the search can be confined to the 2-core.
        std::vector<int> pool;
        if (alpha.num >= alpha.den) {
            pool = two_core(g);
        } else {
            pool.resize(g.vertex_count);
            std::iota(pool.begin(), pool.end(), 0);
        }
        for (int size = 4; size <= std::min<int>(k, static_cast<int>(pool.size())); ++size) {
            SubsetEnumerator enumerator(g, adj, pool, alpha, size);
            if (auto hit = enumerator.run()) {
                report.satisfied = false;
                report.violating_set = hit->first;
                report.induced_edge_count = hit->second;
                return report;
            }
        }
        return report;
    }
    report.trials = trials;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    if (g.vertex_count < 4) return report;
    for (int t = 0; t < trials; ++t) {
        int target = 4 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, k - 3)));
        int start = static_cast<int>(rng() % static_cast<uint64_t>(g.vertex_count));
        std::vector<int> subset{start};
        std::vector<char> in(g.vertex_count, 0);
        in[start] = 1;
        std::vector<int> frontier;
        for (auto [w, e] : adj[start]) {
            (void)e;
            frontier.push_back(w);
        }
        while (static_cast<int>(subset.size()) < target && !frontier.empty()) {
            size_t pick = rng() % frontier.size();
            int v = frontier[pick];
            frontier.erase(frontier.begin() + static_cast<long>(pick));
            if (in[v]) continue;
            in[v] = 1;
            subset.push_back(v);
            for (auto [w, e] : adj[v]) {
                (void)e;
                if (!in[w]) frontier.push_back(w);
            }
        }
        if (static_cast<int>(subset.size()) < 4) continue;
        int count = count_induced_edges(g, subset);
        if (violates(count, static_cast<long long>(subset.size()), alpha)) {
            std::sort(subset.begin(), subset.end());
            report.satisfied = false;
            report.violating_set = subset;
            report.induced_edge_count = count;
            return report;
        }
    }
    return report;
}

SparsityReport check_nash_williams_condition(const Graph& g, int exact_cap) {
    if (g.vertex_count > exact_cap || g.vertex_count > 62)
        throw std::invalid_argument("nash-williams check refused: too many vertices for exact enumeration");
    std::vector<uint64_t> adj_mask(g.vertex_count, 0);
    for (const Edge& e : g.edges) {
        adj_mask[e.u] |= uint64_t{1} << e.v;
        adj_mask[e.v] |= uint64_t{1} << e.u;
    }
    SparsityReport report;
    report.mode = SparsityMode::Exact;
    const uint64_t full = g.vertex_count >= 1 ? (uint64_t{1} << g.vertex_count) : 1;
    for (uint64_t mask = 1; mask < full; ++mask) {
        int size = std::popcount(mask);
        int edges = 0;
        for (uint64_t rest = mask; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            edges += std::popcount(adj_mask[v] & mask & ((uint64_t{1} << v) - 1));
        }
        if (edges > 2 * (size - 1)) {
            report.satisfied = false;
            report.induced_edge_count = edges;
            for (int v = 0; v < g.vertex_count; ++v)
                if (mask & (uint64_t{1} << v)) report.violating_set.push_back(v);
            return report;
        }
    }
    return report;
}

bool is_prime(long long x) {
    if (x < 2) return false;
    for (long long d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

long long next_prime_at_least(long long lo) {
    long long x = std::max<long long>(lo, 2);
    while (!is_prime(x)) ++x;
    return x;
}

}  // namespace bitprobe
