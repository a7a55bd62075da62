#include "bitprobe/forests.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>

namespace bitprobe {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

DenseCore grow_dense_core(const Graph& g, const std::vector<int>& seed_vertices, int n) {
    std::vector<int> order(g.vertex_count);
    std::iota(order.begin(), order.end(), 0);
    return grow_dense_core(g, seed_vertices, n, order);
}

DenseCore grow_dense_core(const Graph& g, const std::vector<int>& seed_vertices, int n,
                          const std::vector<int>& scan_order) {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    if (static_cast<int>(seed_vertices.size()) > 2 * n)
        throw std::invalid_argument("seed set larger than 2n");
    std::vector<char> in(g.vertex_count, 0);
    for (int v : seed_vertices) {
        if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("seed vertex out of range");
        in[v] = 1;
    }
    auto adj = adjacency(g);
    DenseCore core;
    int added = 0;
    for (;;) {
        int pick = -1;
        std::vector<int> witnesses;
        for (int v : scan_order) {
            if (in[v]) continue;
            witnesses.clear();
            for (auto [w, e] : adj[v])
                if (in[w]) witnesses.push_back(e);
            if (static_cast<int>(witnesses.size()) >= 2) {
                pick = v;
                break;
            }
        }
        if (pick < 0) break;
        if (++added > 2 * n)
            throw substrate_error("dense core growth exceeded 2n additions: graph is not locally sparse enough");
        in[pick] = 1;
        core.growth_trace.push_back({pick, witnesses});
    }
    for (int v = 0; v < g.vertex_count; ++v)
        if (in[v]) core.vertices.push_back(v);
    return core;
}

bool is_forest(const Graph& g, const std::vector<int>& edge_subset) {
    UnionFind uf(g.vertex_count);
    for (int e : edge_subset) {
        if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("edge index out of range");
        if (!uf.unite(g.edges[e].u, g.edges[e].v)) return false;
    }
    return true;
}

namespace {

// Forest membership maintained as per-vertex adjacency over member edges.
struct ForestState {
    const Graph& g;
    std::vector<char> member;                               // per edge
    std::vector<std::vector<std::pair<int, int>>> adj;      // vertex -> (neighbor, edge)

    explicit ForestState(const Graph& graph)
        : g(graph), member(graph.edge_count(), 0), adj(graph.vertex_count) {}

    void insert(int e) {
        member[e] = 1;
        adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
        adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
    }
    void erase(int e) {
        member[e] = 0;
        auto drop = [&](int v) {
            auto& list = adj[v];
            for (size_t i = 0; i < list.size(); ++i) {
                if (list[i].second == e) {
                    list.erase(list.begin() + static_cast<long>(i));
                    return;
                }
            }
        };
        drop(g.edges[e].u);
        drop(g.edges[e].v);
    }

    // Edges on the tree path between the endpoints of `e`, empty if the
    // endpoints are in different components (so `e` is insertable).
    std::vector<int> path_between_endpoints(int e) const {
        int src = g.edges[e].u, dst = g.edges[e].v;
        std::vector<int> parent_edge(g.vertex_count, -1), parent(g.vertex_count, -2);
        parent[src] = -1;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (v == dst) break;
            for (auto [w, we] : adj[v]) {
                if (parent[w] != -2) continue;
                parent[w] = v;
                parent_edge[w] = we;
                queue.push_back(w);
            }
        }
        std::vector<int> path;
        if (parent[dst] == -2) return path;
        for (int x = dst; parent[x] != -1; x = parent[x]) path.push_back(parent_edge[x]);
        return path;
    }

    bool insertable(int e) const { return path_between_endpoints(e).empty(); }
};

}  // namespace

ForestPartition two_forest_partition(const Graph& g, const std::vector<int>& vertex_subset) {
    std::vector<char> in(g.vertex_count, 0);
    for (int v : vertex_subset) {
        if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("vertex out of range");
        in[v] = 1;
    }
    std::vector<int> induced;
    for (int e = 0; e < g.edge_count(); ++e)
        if (in[g.edges[e].u] && in[g.edges[e].v]) induced.push_back(e);

    std::array<ForestState, 2> forest{ForestState(g), ForestState(g)};
    std::vector<int> home(g.edge_count(), -1);

    for (int e : induced) {
        int placed = -1;
        for (int f = 0; f < 2 && placed < 0; ++f)
            if (forest[f].insertable(e)) placed = f;
        if (placed >= 0) {
            forest[placed].insert(e);
            home[e] = placed;
            continue;
        }
        // Both forests refuse: breadth-first search over exchange moves
        // "evict y from the cycle that x closes, re-home y in the other
        // forest". Shortest exchange sequences compose safely.
        struct Move {
            int edge;
            int target;  // forest the edge wants to enter
            int prev;    // index into the move log, -1 for roots
        };
        std::vector<Move> log;
        std::vector<char> seen(g.edge_count(), 0);
        std::deque<int> queue;
        for (int f = 0; f < 2; ++f) {
            log.push_back({e, f, -1});
            queue.push_back(static_cast<int>(log.size()) - 1);
        }
        int success = -1;
        while (!queue.empty() && success < 0) {
            int cur = queue.front();
            queue.pop_front();
            Move mv = log[cur];
            if (forest[mv.target].insertable(mv.edge)) {
                success = cur;
                break;
            }
            for (int y : forest[mv.target].path_between_endpoints(mv.edge)) {
                if (seen[y]) continue;
                seen[y] = 1;
                log.push_back({y, 1 - mv.target, cur});
                queue.push_back(static_cast<int>(log.size()) - 1);
            }
        }
        if (success < 0)
            throw substrate_error("two_forest_partition: no augmenting reassignment; "
                                  "the induced subgraph violates the two-forest condition");
        for (int cur = success; cur != -1; cur = log[cur].prev) {
            const Move& mv = log[cur];
            if (home[mv.edge] >= 0) forest[home[mv.edge]].erase(mv.edge);
            forest[mv.target].insert(mv.edge);
            home[mv.edge] = mv.target;
        }
        for (int f = 0; f < 2; ++f) {
            std::vector<int> members;
            for (int x = 0; x < g.edge_count(); ++x)
                if (forest[f].member[x]) members.push_back(x);
            if (!is_forest(g, members))
                throw std::runtime_error("two_forest_partition: augmenting step broke acyclicity");
        }
    }

    ForestPartition partition;
    for (int e : induced) {
        if (home[e] == 0)
            partition.forest1.push_back(e);
        else
            partition.forest2.push_back(e);
    }
    if (!is_forest(g, partition.forest1) || !is_forest(g, partition.forest2))
        throw std::runtime_error("two_forest_partition: verification failed");
    return partition;
}

}  // namespace bitprobe
