#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "bitprobe/harness.hpp"
#include "bitprobe/orientation.hpp"

using namespace bitprobe;

namespace {

ColoredGraph colored(int n, std::vector<std::pair<Edge, bool>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Edge> edges;
    std::vector<int> greens;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
        edges.push_back(entries[static_cast<size_t>(i)].first);
        if (entries[static_cast<size_t>(i)].second) greens.push_back(i);
    }
    return make_colored_graph(make_graph(n, std::move(edges)), greens);
}

ColoredGraph cycle_colored(int n, const std::vector<bool>& green_pattern) {
    std::vector<std::pair<Edge, bool>> entries;
    for (int i = 0; i < n; ++i) {
        int u = std::min(i, (i + 1) % n), v = std::max(i, (i + 1) % n);
        entries.push_back({{u, v}, green_pattern[static_cast<size_t>(i)]});
    }
    return colored(n, std::move(entries));
}

// No two consecutive RED edges on any root-to-vertex tree path.
bool forest_alternation_holds(const ColoredGraph& h, const BFSForest& f) {
    for (int v = 0; v < h.graph.vertex_count; ++v) {
        if (f.parent[v] < 0 || !h.green.size()) continue;
        int p = f.parent[v];
        if (f.parent_edge[v] < 0 || f.parent_edge[p] < 0) continue;
        if (!h.green[f.parent_edge[v]] && !h.green[f.parent_edge[p]]) return false;
    }
    return true;
}

// Test-side oracle: enumerate every simple cycle and look for a
// GREEN-dominated one.
bool dominated_cycle_exists_brute(const ColoredGraph& h) {
    const int n = h.graph.vertex_count;
    auto adj = adjacency(h.graph);
    std::vector<int> path;
    std::vector<char> on_path(n, 0);
    bool found = false;
    auto dfs = [&](auto&& self, int start, int v) -> void {
        if (found) return;
        for (auto [w, e] : adj[v]) {
            (void)e;
            if (found) return;
            if (w == start && path.size() >= 3 && path[1] < path.back()) {
                if (is_green_dominated(h, path)) found = true;
                continue;
            }
            if (w <= start || on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (int start = 0; start < n && !found; ++start) {
        path = {start};
        std::fill(on_path.begin(), on_path.end(), 0);
        on_path[start] = 1;
        dfs(dfs, start, start);
    }
    return found;
}

}  // namespace

TEST_CASE("constrained bfs: RED vertices expand only GREEN edges") {
    // all-RED star from the center: children marked RED, no grandchildren
    ColoredGraph star = colored(5, {{{0, 1}, false}, {{0, 2}, false}, {{0, 3}, false},
                                    {{1, 4}, false}});
    BFSForest f = constrained_bfs(star, {0});
    CHECK(f.mark[1] == VertexMark::Red);
    CHECK(f.mark[2] == VertexMark::Red);
    CHECK(f.mark[3] == VertexMark::Red);
    CHECK(f.mark[4] == VertexMark::Unvisited);  // behind a RED vertex's RED edge

    // alternating G-R-G-R path: everything visited, alternating marks
    ColoredGraph path = colored(5, {{{0, 1}, true}, {{1, 2}, false}, {{2, 3}, true},
                                    {{3, 4}, false}});
    BFSForest g = constrained_bfs(path, {0});
    CHECK(g.mark[1] == VertexMark::Green);
    CHECK(g.mark[2] == VertexMark::Red);
    CHECK(g.mark[3] == VertexMark::Green);
    CHECK(g.mark[4] == VertexMark::Red);
    CHECK(forest_alternation_holds(path, g));

    CHECK_THROWS_AS(constrained_bfs(path, {}), std::invalid_argument);
}

TEST_CASE("bfs trace, blocking edges, queue order") {
    ColoredGraph h = bfs_trace_graph();
    BFSForest f = constrained_bfs(h, {0});
    CHECK(f.mark[1] == VertexMark::Green);
    CHECK(f.mark[2] == VertexMark::Red);
    CHECK(f.mark[5] == VertexMark::Green);
    CHECK(f.mark[7] == VertexMark::Green);
    CHECK(f.mark[6] == VertexMark::Unvisited);
    CHECK(forest_alternation_holds(h, f));
    CHECK(f.visit_order[0] == 0);

    CHECK(is_blocking_edge(h, f, *find_edge_index(h.graph, 2, 4)));
    CHECK(is_blocking_edge(h, f, *find_edge_index(h.graph, 5, 7)));
    CHECK_FALSE(is_blocking_edge(h, f, *find_edge_index(h.graph, 1, 2)));
    // lowest-index blocking edge and direct-scan agreement
    auto first = find_blocking_edge(h, f);
    REQUIRE(first);
    for (int e = 0; e < *first; ++e) CHECK_FALSE(is_blocking_edge(h, f, e));
}

TEST_CASE("blocking edge on a tree is NONE") {
    ColoredGraph tree = colored(4, {{{0, 1}, true}, {{1, 2}, false}, {{1, 3}, true}});
    BFSForest f = constrained_bfs(tree, {0});
    CHECK_FALSE(find_blocking_edge(tree, f));
}

TEST_CASE("green dominated cycles") {
    CHECK(is_green_dominated(cycle_colored(6, {1, 1, 1, 1, 1, 1}),
                             std::vector<int>{0, 1, 2, 3, 4, 5}));
    CHECK_FALSE(is_green_dominated(cycle_colored(6, {0, 0, 0, 0, 0, 0}),
                                   std::vector<int>{0, 1, 2, 3, 4, 5}));
    // R G R G R around a 5-cycle: exactly one RED-RED adjacency
    CHECK(is_green_dominated(cycle_colored(5, {0, 1, 0, 1, 0}),
                             std::vector<int>{0, 1, 2, 3, 4}));

    auto all_green = find_green_dominated_cycle(cycle_colored(6, {1, 1, 1, 1, 1, 1}));
    REQUIRE(all_green);
    CHECK(all_green->size() == 6);
    CHECK_FALSE(find_green_dominated_cycle(cycle_colored(6, {0, 0, 0, 0, 0, 0})));

    ColoredGraph trace = blocking_cycle_graph();
    auto cycle = find_green_dominated_cycle(trace);
    REQUIRE(cycle);
    CHECK(*cycle == std::vector<int>{0, 1, 5, 6, 2});
    CHECK(is_green_dominated(trace, *cycle));
}

TEST_CASE("dominated-cycle search agrees with brute enumeration on even-girth inputs") {
    std::mt19937_64 rng(2024);
    int disagreements = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        ColoredGraph h = random_colored_instance(rng);
        bool found = find_green_dominated_cycle(h).has_value();
        bool exists = dominated_cycle_exists_brute(h);
        if (found) CHECK(exists);  // found cycles are always real
        if (found != exists) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("is_safe") {
    // two GREEN edges into the same vertex
    ColoredGraph h = colored(3, {{{0, 2}, true}, {{1, 2}, true}});
    Orientation bad{{1, 1}};  // both point at 2
    CHECK_FALSE(is_safe(h, bad));
    Orientation good{{1, 0}};  // (0,2) -> 2, (1,2) -> 1
    CHECK(is_safe(h, good));

    // all RED: any orientation is safe
    ColoredGraph red_cycle = cycle_colored(4, {0, 0, 0, 0});
    CHECK(is_safe(red_cycle, Orientation{{0, 0, 0, 0}}));
    CHECK(is_safe(red_cycle, Orientation{{1, 0, 1, 0}}));

    CHECK_THROWS_AS(is_safe(h, Orientation{{1}}), std::invalid_argument);
}

TEST_CASE("brute force safe orientation") {
    ColoredGraph empty = make_colored_graph(make_graph(0, {}), {});
    auto none = brute_force_safe_orient(empty);
    REQUIRE(none);
    CHECK(none->direction.empty());

    // lexicographically first safe orientation for a single GREEN edge
    ColoredGraph single = colored(2, {{{0, 1}, true}});
    auto o = brute_force_safe_orient(single);
    REQUIRE(o);
    CHECK(o->direction == std::vector<uint8_t>{0});

    ColoredGraph big = make_colored_graph(complete_bipartite(5), {});
    CHECK_THROWS_AS(brute_force_safe_orient(big, 24), std::invalid_argument);
}

TEST_CASE("safe_orient basics") {
    // zero GREEN edges: anything passes, including the constructed one
    ColoredGraph red = make_colored_graph(complete_bipartite(3), {});
    CHECK(is_safe(red, safe_orient(red)));
    // all-toward-larger is safe when nothing is GREEN
    CHECK(is_safe(red, Orientation{std::vector<uint8_t>(9, 1)}));

    // single GREEN edge in C4
    ColoredGraph c4 = cycle_colored(4, {1, 0, 0, 0});
    CHECK(brute_force_safe_orient(c4).has_value());
    SafeOrientReport report = safe_orient_detailed(c4);
    CHECK(is_safe(c4, report.orientation));
    CHECK_FALSE(report.brute_force_fallback);

    // forests are fine
    ColoredGraph tree = colored(4, {{{0, 1}, true}, {{1, 2}, false}, {{1, 3}, true}});
    CHECK(is_safe(tree, safe_orient(tree)));
}

TEST_CASE("safe_orient rejects bad preconditions") {
    // odd girth
    ColoredGraph triangle = cycle_colored(3, {0, 0, 0});
    CHECK_THROWS_AS(safe_orient(triangle), std::invalid_argument);

    // tight example: 7 GREEN edges at girth 8 exceed floor(3*8/4) = 6
    ColoredGraph tight = tightness_graph(2, false);
    CHECK(tight.green_count() == 7);
    CHECK_THROWS_AS(safe_orient(tight), std::invalid_argument);
}

TEST_CASE("safe_orient matches the exhaustive oracle on random instances") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        ColoredGraph h = random_colored_instance(rng);
        SafeOrientReport report = safe_orient_detailed(h);
        CHECK(is_safe(h, report.orientation));
        CHECK_FALSE(report.brute_force_fallback);
        CHECK(brute_force_safe_orient(h, 12).has_value());
    }
}

TEST_CASE("safe_orient never falls back on the scheme substrates") {
    // K_{4,4}: every GREEN subset of size <= 3
    Graph k44 = complete_bipartite(4);
    std::vector<std::vector<int>> subsets;
    for (int a = 0; a < 16; ++a) {
        subsets.push_back({a});
        for (int b = a + 1; b < 16; ++b) {
            subsets.push_back({a, b});
            for (int c = b + 1; c < 16; ++c) subsets.push_back({a, b, c});
        }
    }
    for (const auto& greens : subsets) {
        ColoredGraph h = make_colored_graph(k44, greens);
        SafeOrientReport report = safe_orient_detailed(h);
        CHECK(is_safe(h, report.orientation));
        CHECK_FALSE(report.brute_force_fallback);
    }

    // girth-6 and girth-8 substrates with random GREEN sets at full capacity
    std::mt19937_64 rng(17);
    for (auto [graph, cap] : {std::pair<Graph, int>{projective_plane_incidence(3), 4},
                              std::pair<Graph, int>{wenger_graph(3, 3), 6}}) {
        for (int trial = 0; trial < 150; ++trial) {
            std::vector<int> greens;
            while (static_cast<int>(greens.size()) < cap) {
                int e = static_cast<int>(rng() % static_cast<uint64_t>(graph.edge_count()));
                if (std::find(greens.begin(), greens.end(), e) == greens.end())
                    greens.push_back(e);
            }
            ColoredGraph h = make_colored_graph(graph, greens);
            SafeOrientReport report = safe_orient_detailed(h);
            CHECK(is_safe(h, report.orientation));
            CHECK_FALSE(report.brute_force_fallback);
        }
    }
}

TEST_CASE("safe_orient handles multi-component colorings") {
    // two GREEN C4s sharing nothing plus an isolated vertex
    std::vector<std::pair<Edge, bool>> entries;
    auto add_c4 = [&](int base, bool green) {
        entries.push_back({{base, base + 1}, green});
        entries.push_back({{base + 1, base + 2}, false});
        entries.push_back({{base + 2, base + 3}, false});
        entries.push_back({{base, base + 3}, green});
    };
    add_c4(0, true);   // two GREEN edges here
    add_c4(4, false);  // all RED over there
    ColoredGraph h = colored(9, std::move(entries));
    CHECK(h.green_count() == 2);  // within floor(3*4/4) = 3
    CHECK(is_safe(h, safe_orient(h)));
}
