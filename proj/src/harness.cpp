#include "bitprobe/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "bitprobe/forests.hpp"

namespace bitprobe {

uint64_t enumeration_budget() {
    if (const char* env = std::getenv("BITPROBE_ENUM_BUDGET")) {
        char* end = nullptr;
        double parsed = std::strtod(env, &end);
        if (end != env && parsed > 0) return static_cast<uint64_t>(parsed);
    }
    return 100000000ull;  // 1e8 (set, query) pairs
}

std::optional<uint64_t> all_sets_feasible(uint64_t m, int n, uint64_t budget) {
    long double total = 0, binom = 1;
    for (int k = 0; k <= n; ++k) {
        total += binom;
        if (total * static_cast<long double>(std::max<uint64_t>(m, 1)) >
            static_cast<long double>(budget))
            return std::nullopt;
        binom = binom * static_cast<long double>(m - k) / static_cast<long double>(k + 1);
        if (static_cast<uint64_t>(k) >= m) break;
    }
    return static_cast<uint64_t>(total);
}

namespace {

// Implementation-pinned shuffle so seeded runs agree across standard
// libraries.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng() % i]);
}

// Visits every subset of [m] with size <= n, in size order then
// lexicographic order, as a sorted element vector.
template <typename Fn>
void for_each_subset_upto(uint64_t m, int n, Fn&& fn) {
    std::vector<uint64_t> subset;
    fn(subset);
    for (int k = 1; k <= n && static_cast<uint64_t>(k) <= m; ++k) {
        subset.resize(static_cast<size_t>(k));
        std::iota(subset.begin(), subset.end(), uint64_t{0});
        for (;;) {
            fn(subset);
            int i = k - 1;
            while (i >= 0 && subset[static_cast<size_t>(i)] == m - static_cast<uint64_t>(k - i))
                --i;
            if (i < 0) break;
            ++subset[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
        }
    }
}

SchemeInstance build_instance(const VerifyJob& job, const Graph* graph, int K,
                              const QuerySet& set) {
    switch (job.scheme) {
        case SchemeId::ClassicalAdaptive:
            return classical_adaptive_store(*graph, K, job.m, job.n, set);
        case SchemeId::QuantumAdaptive:
            return quantum_adaptive_store(*graph, K, job.m, job.n, set);
        case SchemeId::Qn22: return qn22_store(job.m, set);
        case SchemeId::Qn23: return qn23_store(job.m, set);
        case SchemeId::AppendixNonAdaptive:
            return appendix_nonadaptive_store(*graph, K, job.m, job.n, set);
        case SchemeId::CharVec: return charvec_store(job.m, set);
    }
    throw std::logic_error("unknown scheme");
}

}  // namespace

QuerySet random_query_set(std::mt19937_64& rng, uint64_t m, int max_size) {
    int size = m == 0 ? 0 : static_cast<int>(rng() % static_cast<uint64_t>(max_size + 1));
    std::vector<uint64_t> elements;
    while (static_cast<int>(elements.size()) < size) {
        uint64_t x = rng() % m;
        if (std::find(elements.begin(), elements.end(), x) == elements.end())
            elements.push_back(x);
    }
    return make_query_set(std::move(elements));
}

VerificationReport verify_scheme(const VerifyJob& job) {
    const auto started = std::chrono::steady_clock::now();
    const bool graph_scheme = job.scheme == SchemeId::ClassicalAdaptive ||
                              job.scheme == SchemeId::QuantumAdaptive ||
                              job.scheme == SchemeId::AppendixNonAdaptive;
    if (graph_scheme && !job.graph)
        throw std::invalid_argument("verify: this scheme needs a substrate graph");
    const Graph* graph = job.graph ? &*job.graph : nullptr;
    const int K = graph_scheme && job.K == 0 ? default_K(*graph, job.m) : job.K;

    VerificationReport report;
    report.scheme = scheme_code(job.scheme);
    report.m = job.m;
    report.n = job.n;
    report.seed = job.seed;

    VerifyMode mode = job.mode;
    std::optional<uint64_t> total_sets;
    if (mode != VerifyMode::Sampled) {
        total_sets = all_sets_feasible(job.m, job.n, enumeration_budget());
        if (!total_sets) {
            if (mode == VerifyMode::AllSets)
                throw std::invalid_argument(
                    "verify: exhaustive enumeration exceeds the budget; use sampled mode");
            mode = VerifyMode::Sampled;
        } else {
            mode = VerifyMode::AllSets;
        }
    }
    report.mode_used = mode == VerifyMode::AllSets
                           ? "all-sets"
                           : (job.mode == VerifyMode::Auto ? "sampled(auto)" : "sampled");

    auto run_set = [&](const QuerySet& set) {
        SchemeInstance inst = build_instance(job, graph, K, set);
        report.t = inst.t;
        report.space_bits = inst.store.total_bits();
        report.formula_bits = expected_space_bits(inst);
        ++report.sets_tested;
        ProbeSession session(inst.store);
        for (uint64_t x = 0; x < job.m; ++x) {
            session.reset(inst.probe_class);
            bool answer = scheme_query(inst, x, session);
            bool expected = std::binary_search(set.elements.begin(), set.elements.end(), x);
            if (answer && !expected) ++report.false_positives;
            if (!answer && expected) ++report.false_negatives;
            report.max_probes_seen =
                std::max(report.max_probes_seen, session.transcript().probe_count());
            ++report.queries_tested;
            if (job.audit_every_query && report.adaptivity_verdict == "PASS") {
                AuditVerdict verdict = audit_transcript(
                    session.transcript(), inst.t, inst.probe_class,
                    [&](const std::vector<int>& injected) {
                        return scheme_replay(inst, x, injected);
                    });
                if (!verdict.pass) report.adaptivity_verdict = "FAIL: " + verdict.detail;
            }
        }
    };

    if (mode == VerifyMode::AllSets) {
        for_each_subset_upto(job.m, job.n, [&](const std::vector<uint64_t>& subset) {
            run_set(QuerySet{subset});
        });
    } else {
        std::mt19937_64 rng(job.seed);
        for (uint64_t i = 0; i < job.sample_count; ++i)
            run_set(random_query_set(rng, job.m, job.n));
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

ScalingResult scaling_experiment(SchemeId scheme, const std::vector<uint64_t>& m_values, int n,
                                 uint64_t seed) {
    ScalingResult result;
    for (uint64_t m : m_values) {
        QuerySet set = m > 0 ? make_query_set({0}) : QuerySet{};
        SchemeInstance inst;
        switch (scheme) {
            case SchemeId::ClassicalAdaptive: {
                Graph g = select_graph_for(m, n, seed);
                inst = classical_adaptive_store(g, default_K(g, m), m, n, set);
                break;
            }
            case SchemeId::QuantumAdaptive: {
                int vertices = std::max<int>(
                    16, static_cast<int>(std::llround(std::pow(static_cast<double>(m), 0.75))));
                Graph g = random_locally_sparse(vertices, seed);
                inst = quantum_adaptive_store(g, default_K(g, m), m, n, set);
                break;
            }
            case SchemeId::Qn22: inst = qn22_store(m, set); break;
            case SchemeId::Qn23: inst = qn23_store(m, set); break;
            case SchemeId::AppendixNonAdaptive: {
                Graph g = select_graph_for(m, std::max(n + 1, 2), seed);
                inst = appendix_nonadaptive_store(g, default_K(g, m), m, n, set);
                break;
            }
            case SchemeId::CharVec: inst = charvec_store(m, set); break;
        }
        uint64_t space = inst.store.total_bits();
        uint64_t formula = expected_space_bits(inst);
        if (space != formula)
            throw std::logic_error("scaling: stored bits disagree with the closed form");
        result.rows.push_back({scheme_code(scheme), m, n, space, formula});
    }
    // Ordinary least squares on log-log rows.
    const size_t count = result.rows.size();
    if (count >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : result.rows) {
            double x = std::log(static_cast<double>(row.m));
            double y = std::log(static_cast<double>(row.space_bits));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = count * sxx - sx * sx;
        result.slope = (count * sxy - sx * sy) / denom;
        double intercept = (sy - result.slope * sx) / count;
        double ss = 0;
        for (const auto& row : result.rows) {
            double x = std::log(static_cast<double>(row.m));
            double y = std::log(static_cast<double>(row.space_bits));
            double r = y - (result.slope * x + intercept);
            ss += r * r;
        }
        result.residual = std::sqrt(ss / count);
    }
    return result;
}

ColoredGraph bfs_trace_graph() {
    std::vector<std::pair<Edge, bool>> colored = {
        {{0, 1}, true},  {{0, 2}, false}, {{1, 2}, false}, {{1, 3}, false},
        {{1, 4}, false}, {{2, 4}, true},  {{2, 5}, true},  {{2, 6}, false},
        {{2, 7}, true},  {{4, 8}, false}, {{4, 9}, false}, {{5, 7}, false},
    };
    std::vector<Edge> edges;
    std::vector<int> greens;
    for (int i = 0; i < static_cast<int>(colored.size()); ++i) {
        edges.push_back(colored[static_cast<size_t>(i)].first);
        if (colored[static_cast<size_t>(i)].second) greens.push_back(i);
    }
    return make_colored_graph(make_graph(10, std::move(edges)), greens);
}

ColoredGraph blocking_cycle_graph() {
    std::vector<std::pair<Edge, bool>> colored = {
        {{0, 1}, false}, {{0, 2}, false}, {{1, 3}, true},  {{1, 4}, false},
        {{1, 5}, true},  {{2, 6}, true},  {{2, 7}, false}, {{4, 8}, false},
        {{4, 9}, false}, {{5, 6}, false},
    };
    std::vector<Edge> edges;
    std::vector<int> greens;
    for (int i = 0; i < static_cast<int>(colored.size()); ++i) {
        edges.push_back(colored[static_cast<size_t>(i)].first);
        if (colored[static_cast<size_t>(i)].second) greens.push_back(i);
    }
    return make_colored_graph(make_graph(10, std::move(edges)), greens);
}

ColoredGraph tightness_graph(int k, bool odd_length) {
    if (k < 1) throw std::invalid_argument("tightness_graph requires k >= 1");
    const int path_len = odd_length ? 2 * k + 1 : 2 * k;
    const int internals = path_len - 1;
    const int s = 0;
    const int t = 1 + 3 * internals;
    auto path_vertex = [&](int path, int pos) {  // pos in [0, path_len]
        if (pos == 0) return s;
        if (pos == path_len) return t;
        return 1 + path * internals + (pos - 1);
    };
    auto edge_green = [&](int path, int pos) {  // edge from pos to pos+1
        if (odd_length) return path < 2 ? pos % 2 == 0 : pos % 2 == 1;
        if (path == 0) return pos % 2 == 0;
        if (path == 1) return pos < 2 ? true : pos % 2 == 1;
        return pos % 2 == 1;
    };
    std::vector<std::pair<Edge, bool>> colored;
    for (int path = 0; path < 3; ++path) {
        for (int pos = 0; pos < path_len; ++pos) {
            int u = path_vertex(path, pos), v = path_vertex(path, pos + 1);
            colored.push_back({{std::min(u, v), std::max(u, v)}, edge_green(path, pos)});
        }
    }
    std::sort(colored.begin(), colored.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Edge> edges;
    std::vector<int> greens;
    for (int i = 0; i < static_cast<int>(colored.size()); ++i) {
        edges.push_back(colored[static_cast<size_t>(i)].first);
        if (colored[static_cast<size_t>(i)].second) greens.push_back(i);
    }
    return make_colored_graph(make_graph(t + 1, std::move(edges)), greens);
}

ColoredGraph random_colored_instance(std::mt19937_64& rng) {
    for (;;) {
        int n = 3 + static_cast<int>(rng() % 7);  // 3..9 vertices
        std::vector<Edge> all_pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
        deterministic_shuffle(all_pairs, rng);
        int m = 1 + static_cast<int>(rng() % 12);  // 1..12 edges
        m = std::min<int>(m, static_cast<int>(all_pairs.size()));
        std::vector<Edge> edges(all_pairs.begin(), all_pairs.begin() + m);
        Graph graph = make_graph(n, std::move(edges));
        GirthCertificate cert = girth(graph);
        if (!cert.is_infinite() && *cert.girth % 2 != 0) continue;
        int bound = cert.is_infinite() ? m : (3 * *cert.girth) / 4;
        int green_count = static_cast<int>(rng() % static_cast<uint64_t>(std::min(bound, m) + 1));
        std::vector<int> indices(static_cast<size_t>(m));
        std::iota(indices.begin(), indices.end(), 0);
        deterministic_shuffle(indices, rng);
        indices.resize(static_cast<size_t>(green_count));
        return make_colored_graph(std::move(graph), indices);
    }
}

namespace {

void check(FixtureReport& report, const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
}

}  // namespace

bool FixtureReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.pass; });
}

FixtureReport run_fixtures() {
    FixtureReport report;

    {
        ColoredGraph h = bfs_trace_graph();
        BFSForest f = constrained_bfs(h, {0});
        auto mark_is = [&](int v, VertexMark m) { return f.mark[v] == m; };
        bool marks_ok = mark_is(0, VertexMark::Green) && mark_is(1, VertexMark::Green) &&
                        mark_is(2, VertexMark::Red) && mark_is(3, VertexMark::Red) &&
                        mark_is(4, VertexMark::Red) && mark_is(5, VertexMark::Green) &&
                        mark_is(7, VertexMark::Green) && mark_is(6, VertexMark::Unvisited) &&
                        mark_is(8, VertexMark::Unvisited) && mark_is(9, VertexMark::Unvisited);
        check(report, "bfs-trace-marks", marks_ok, "constrained BFS trace from v0");
        int e_24 = *find_edge_index(h.graph, 2, 4);
        int e_57 = *find_edge_index(h.graph, 5, 7);
        int e_12 = *find_edge_index(h.graph, 1, 2);
        bool blocking_ok = is_blocking_edge(h, f, e_24) && is_blocking_edge(h, f, e_57) &&
                           !is_blocking_edge(h, f, e_12);
        check(report, "bfs-trace-blocking-edges", blocking_ok,
              "(v2,v4) and (v5,v7) block, (v1,v2) does not");
        auto first = find_blocking_edge(h, f);
        check(report, "bfs-trace-first-blocking", first && *first == e_24, "lowest blocking index");
    }

    {
        ColoredGraph h = blocking_cycle_graph();
        BFSForest f = constrained_bfs(h, {0});
        auto blocking = find_blocking_edge(h, f);
        int e_56 = *find_edge_index(h.graph, 5, 6);
        check(report, "blocking-cycle-edge", blocking && *blocking == e_56, "(v5,v6) blocks");
        auto cycle = find_green_dominated_cycle(h);
        bool cycle_ok = cycle && *cycle == std::vector<int>{0, 1, 5, 6, 2};
        check(report, "blocking-cycle-extraction", cycle_ok, "cycle (v0,v1,v5,v6,v2)");
    }

    for (bool odd : {false, true}) {
        for (int k = 1; k <= 3; ++k) {
            ColoredGraph h = tightness_graph(k, odd);
            auto found = brute_force_safe_orient(h, h.graph.edge_count());
            std::string name = "tightness-" + std::string(odd ? "odd" : "even") + "-k" +
                               std::to_string(k);
            check(report, name, !found.has_value(),
                  std::to_string(h.green_count()) + " GREEN edges defeat every orientation");
        }
    }

    {
        // Same topologies, GREEN budget back inside the bound: orientable.
        std::mt19937_64 rng(7);
        bool ok = true;
        for (bool odd : {false, true}) {
            ColoredGraph tight = tightness_graph(2, odd);
            GirthCertificate cert = girth(tight.graph);
            int bound = (3 * *cert.girth) / 4;
            for (int trial = 0; trial < 5 && ok; ++trial) {
                std::vector<int> indices(static_cast<size_t>(tight.graph.edge_count()));
                std::iota(indices.begin(), indices.end(), 0);
                deterministic_shuffle(indices, rng);
                indices.resize(static_cast<size_t>(bound));
                ColoredGraph h = make_colored_graph(tight.graph, indices);
                ok = brute_force_safe_orient(h, h.graph.edge_count()).has_value() &&
                     is_safe(h, safe_orient(h));
            }
        }
        check(report, "tightness-within-bound", ok, "floor(3g/4) GREEN edges stay orientable");
    }

    return report;
}

std::string verification_report_json(const VerificationReport& report) {
    nlohmann::json j;
    j["scheme"] = report.scheme;
    j["m"] = report.m;
    j["n"] = report.n;
    j["t"] = report.t;
    j["sets_tested"] = report.sets_tested;
    j["queries_tested"] = report.queries_tested;
    j["false_positives"] = report.false_positives;
    j["false_negatives"] = report.false_negatives;
    j["max_probes_seen"] = report.max_probes_seen;
    j["adaptivity_verdict"] = report.adaptivity_verdict;
    j["space_bits"] = report.space_bits;
    j["formula_bits"] = report.formula_bits;
    j["elapsed_seconds"] = report.elapsed_seconds;
    j["mode"] = report.mode_used;
    j["seed"] = report.seed;
    j["pass"] = report.pass();
    return j.dump();
}

std::string scaling_csv(const ScalingResult& result) {
    std::ostringstream out;
    out << "scheme,m,n,space_bits,formula_bits\n";
    for (const auto& row : result.rows)
        out << row.scheme << ',' << row.m << ',' << row.n << ',' << row.space_bits << ','
            << row.formula_bits << '\n';
    return out.str();
}

std::string scaling_summary_json(const ScalingResult& result) {
    nlohmann::json j;
    j["rows"] = result.rows.size();
    j["slope"] = result.slope;
    j["residual"] = result.residual;
    return j.dump();
}

std::string fixture_report_json(const FixtureReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    nlohmann::json j;
    j["checks"] = checks;
    j["pass"] = report.all_pass();
    return j.dump();
}

}  // namespace bitprobe
