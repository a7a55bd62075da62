// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bitprobe/forests.hpp"
#include "bitprobe/graph.hpp"
#include "bitprobe/harness.hpp"
#include "bitprobe/orientation.hpp"
#include "bitprobe/schemes.hpp"

using namespace bitprobe;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string describe(const VerificationReport& r) {
    std::ostringstream out;
    out << r.scheme << " m=" << r.m << " n=" << r.n << ": " << r.sets_tested << " sets, "
        << r.queries_tested << " queries, fp=" << r.false_positives
        << " fn=" << r.false_negatives << ", probes<=" << r.max_probes_seen << "/" << r.t
        << ", audit=" << (r.adaptivity_verdict == "PASS" ? "PASS" : "FAIL") << ", space="
        << r.space_bits << ", " << static_cast<int>(r.elapsed_seconds * 10) / 10.0 << "s";
    return out.str();
}

// 1. Classical adaptive, exhaustive on K_{4,4}: all |S| <= 3, all 96
//    queries, zero errors, <= 2 adaptive probes, space exactly 64 bits,
//    under 120 seconds.
void criterion_1() {
    VerifyJob job;
    job.scheme = SchemeId::ClassicalAdaptive;
    job.m = 96;
    job.n = 3;
    job.K = 6;
    job.graph = complete_bipartite(4);
    job.mode = VerifyMode::AllSets;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && r.space_bits == 64 && r.sets_tested == 147537 &&
                r.max_probes_seen <= 2 && r.elapsed_seconds < 120.0;
    report(1, pass, describe(r));
}

// 2. Classical adaptive at girth 6: projective plane q=3, n=4, m=52*4,
//    10^4 seeded random sets, zero errors.
void criterion_2() {
    VerifyJob job;
    job.scheme = SchemeId::ClassicalAdaptive;
    job.graph = projective_plane_incidence(3);
    job.m = 52 * 4;
    job.n = 4;
    job.K = 4;
    job.mode = VerifyMode::Sampled;
    job.sample_count = 10000;
    job.seed = 2;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && job.graph->vertex_count == 26 && job.graph->edge_count() == 52;
    report(2, pass, describe(r));
}

// 3. Classical adaptive at girth 8: Wenger k=3 p=3 (computed girth >= 8),
//    n=6, 10^4 seeded random sets, zero errors.
void criterion_3() {
    Graph g = wenger_graph(3, 3);
    GirthCertificate cert = girth(g);
    VerifyJob job;
    job.scheme = SchemeId::ClassicalAdaptive;
    job.graph = g;
    job.m = static_cast<uint64_t>(g.edge_count()) * 4;
    job.n = 6;
    job.K = 4;
    job.mode = VerifyMode::Sampled;
    job.sample_count = 10000;
    job.seed = 3;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && !cert.is_infinite() && *cert.girth >= 8;
    report(3, pass, describe(r) + ", girth=" + std::to_string(*cert.girth));
}

// 4. Safe orientation vs oracle on 10^4 seeded instances (<= 12 edges,
//    even girth, GREEN count within floor(3g/4)): both the constructive
//    procedure and the exhaustive search succeed on 100%.
void criterion_4() {
    std::mt19937_64 rng(4);
    const int instances = 10000;
    int constructive_ok = 0, oracle_ok = 0;
    for (int i = 0; i < instances; ++i) {
        ColoredGraph h = random_colored_instance(rng);
        try {
            Orientation o = safe_orient(h);
            if (is_safe(h, o)) ++constructive_ok;
        } catch (const std::exception&) {
        }
        if (brute_force_safe_orient(h, 12).has_value()) ++oracle_ok;
    }
    bool pass = constructive_ok == instances && oracle_ok == instances;
    std::ostringstream out;
    out << "safe_orient ok " << constructive_ok << "/" << instances << ", oracle ok "
        << oracle_ok << "/" << instances;
    report(4, pass, out.str());
}

// 5. Tightness: both three-path reference graphs admit no safe orientation;
//    the same topologies with 100 random GREEN subsets of size floor(3g/4)
//    always admit one. Exact.
void criterion_5() {
    std::mt19937_64 rng(5);
    bool pass = true;
    std::ostringstream out;
    for (bool odd : {false, true}) {
        ColoredGraph tight = tightness_graph(2, odd);
        bool none = !brute_force_safe_orient(tight, tight.graph.edge_count()).has_value();
        pass = pass && none;
        int g = *girth(tight.graph).girth;
        int bound = (3 * g) / 4;
        int orientable = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> greens;
            while (static_cast<int>(greens.size()) < bound) {
                int e = static_cast<int>(rng() % static_cast<uint64_t>(tight.graph.edge_count()));
                if (std::find(greens.begin(), greens.end(), e) == greens.end())
                    greens.push_back(e);
            }
            ColoredGraph h = make_colored_graph(tight.graph, greens);
            if (brute_force_safe_orient(h, h.graph.edge_count()).has_value() &&
                is_safe(h, safe_orient(h)))
                ++orientable;
        }
        pass = pass && orientable == 100;
        out << (odd ? "g=10" : "g=8") << ": unorientable=" << (none ? "yes" : "NO")
            << ", within-bound orientable " << orientable << "/100; ";
    }
    report(5, pass, out.str());
}

// 6. Nash-Williams: over every labeled graph on at most 6 vertices, the
//    condition checker and the constructive two-forest partition agree.
void criterion_6() {
    uint64_t graphs = 0, satisfied = 0, violated = 0;
    bool pass = true;
    for (int n = 1; n <= 6 && pass; ++n) {
        std::vector<Edge> all_pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
        const int pair_count = static_cast<int>(all_pairs.size());
        std::vector<int> vertices(static_cast<size_t>(n));
        std::iota(vertices.begin(), vertices.end(), 0);
        for (uint64_t mask = 0; mask < (uint64_t{1} << pair_count) && pass; ++mask) {
            std::vector<Edge> edges;
            for (int i = 0; i < pair_count; ++i)
                if ((mask >> i) & 1) edges.push_back(all_pairs[static_cast<size_t>(i)]);
            Graph g = make_graph(n, std::move(edges));
            ++graphs;
            SparsityReport condition = check_nash_williams_condition(g);
            if (condition.satisfied) {
                ++satisfied;
                try {
                    ForestPartition p = two_forest_partition(g, vertices);
                    pass = is_forest(g, p.forest1) && is_forest(g, p.forest2) &&
                           p.forest1.size() + p.forest2.size() ==
                               static_cast<size_t>(g.edge_count());
                } catch (const std::exception&) {
                    pass = false;
                }
            } else {
                ++violated;
                // flagged violation must be a real one
                pass = count_induced_edges(g, condition.violating_set) ==
                           condition.induced_edge_count &&
                       condition.induced_edge_count >
                           2 * (static_cast<int>(condition.violating_set.size()) - 1);
            }
        }
    }
    std::ostringstream out;
    out << graphs << " graphs on <= 6 vertices: " << satisfied << " partitioned, " << violated
        << " correctly flagged";
    report(6, pass, out.str());
}

// 7. Quantum adaptive on generated locally sparse graphs, seeds 1..20,
//    n=4, m=4M: 10^3 random sets per seed, zero errors, transcript
//    [classical, quantum-XOR], space exactly M + 2NK.
void criterion_7() {
    bool pass = true;
    uint64_t total_sets = 0, total_queries = 0;
    std::ostringstream out;
    for (uint64_t seed = 1; seed <= 20 && pass; ++seed) {
        Graph g = random_locally_sparse(64, seed);
        const uint64_t m = static_cast<uint64_t>(4 * g.edge_count());
        const int K = default_K(g, m);
        std::mt19937_64 rng(seed * 1000 + 7);
        for (int trial = 0; trial < 1000 && pass; ++trial) {
            QuerySet set = random_query_set(rng, m, 4);
            SchemeInstance inst = quantum_adaptive_store(g, K, m, 4, set);
            if (inst.store.total_bits() !=
                static_cast<uint64_t>(g.edge_count()) + 2ull * 64 * static_cast<uint64_t>(K)) {
                pass = false;
                break;
            }
            ++total_sets;
            ProbeSession session(inst.store);
            for (uint64_t x = 0; x < m; ++x) {
                session.reset(inst.probe_class);
                bool answer = quantum_adaptive_query(inst, x, session);
                bool expected =
                    std::binary_search(set.elements.begin(), set.elements.end(), x);
                const auto& entries = session.transcript().entries;
                if (answer != expected || entries.size() != 2 ||
                    entries[0].kind != ProbeKind::ClassicalRead ||
                    entries[1].kind != ProbeKind::QuantumXor) {
                    pass = false;
                    break;
                }
                ++total_queries;
            }
        }
    }
    out << "seeds 1..20, " << total_sets << " sets, " << total_queries
        << " queries, zero errors, transcript [classical, quantum-XOR]";
    report(7, pass, out.str());
}

// 8. Non-adaptive n=2 t=2 at m=256: all |S| <= 2, full sweep, zero errors,
//    2 quantum probes, non-adaptive audit, space exactly 64 bits = 4*sqrt(m),
//    under 60 seconds.
void criterion_8() {
    VerifyJob job;
    job.scheme = SchemeId::Qn22;
    job.m = 256;
    job.n = 2;
    job.mode = VerifyMode::AllSets;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && r.space_bits == 64 && r.sets_tested == 32897 &&
                r.elapsed_seconds < 60.0;
    report(8, pass, describe(r));
}

// 9. Non-adaptive n=2 t=3 at m=216: all |S| <= 2, full sweep, zero errors,
//    3 probes, non-adaptive audit, space exactly 36 bits = 6*m^(1/3).
void criterion_9() {
    VerifyJob job;
    job.scheme = SchemeId::Qn23;
    job.m = 216;
    job.n = 2;
    job.mode = VerifyMode::AllSets;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && r.space_bits == 36 && r.sets_tested == 23437;
    report(9, pass, describe(r));
}

// 10. Appendix non-adaptive scheme on a girth-6 graph, n=3 < 6, m = M*K:
//     10^3 random sets, zero errors, non-adaptive at t=2, space M + NK.
void criterion_10() {
    Graph g = projective_plane_incidence(2);  // Heawood graph, girth 6
    VerifyJob job;
    job.scheme = SchemeId::AppendixNonAdaptive;
    job.graph = g;
    job.K = 3;
    job.m = static_cast<uint64_t>(g.edge_count()) * 3;
    job.n = 3;
    job.mode = VerifyMode::Sampled;
    job.sample_count = 1000;
    job.seed = 10;
    VerificationReport r = verify_scheme(job);
    bool pass = r.pass() && r.space_bits == 21 + 14 * 3 && r.t == 2;
    report(10, pass, describe(r));
}

// 11. Scaling exponents over >= 6 m-values spanning >= 3 decades:
//     classical girth-4 family 0.667 +- 0.03, qn22 0.50 +- 0.03,
//     qn23 0.333 +- 0.03.
void criterion_11() {
    ScalingResult ca = scaling_experiment(
        SchemeId::ClassicalAdaptive,
        {1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18, 1 << 20}, 3);
    ScalingResult qn22 = scaling_experiment(
        SchemeId::Qn22, {1 << 8, 1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18}, 2);
    ScalingResult qn23 = scaling_experiment(
        SchemeId::Qn23, {216, 1000, 4096, 17576, 74088, 262144}, 2);
    bool rows_ok = true;
    for (const ScalingResult* result : {&ca, &qn22, &qn23})
        for (const auto& row : result->rows) rows_ok = rows_ok && row.space_bits == row.formula_bits;
    bool pass = rows_ok && std::abs(ca.slope - 0.667) <= 0.03 &&
                std::abs(qn22.slope - 0.50) <= 0.03 && std::abs(qn23.slope - 0.333) <= 0.03;
    std::ostringstream out;
    char buffer[128];
    std::snprintf(buffer, sizeof(buffer),
                  "slopes: ca=%.4f (0.667+-0.03), qn22=%.4f (0.50+-0.03), qn23=%.4f (0.333+-0.03)",
                  ca.slope, qn22.slope, qn23.slope);
    out << buffer;
    report(11, pass, out.str());
}

// 12. g_min reproduces the girth column for n = 2..9 exactly.
void criterion_12() {
    const std::vector<int> expected = {4, 4, 6, 8, 8, 10, 12, 12};
    bool pass = true;
    std::ostringstream out;
    out << "g_min(2..9) =";
    for (int n = 2; n <= 9; ++n) {
        int g = g_min(n);
        out << ' ' << g;
        pass = pass && g == expected[static_cast<size_t>(n - 2)];
    }
    report(12, pass, out.str());
}

}  // namespace

int main() {
    const auto started = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("%d/12 criteria passed in %.1fs\n", 12 - failures, elapsed);
    return failures;
}
