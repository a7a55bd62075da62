#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bitprobe/orientation.hpp"
#include "bitprobe/schemes.hpp"

namespace bitprobe {

struct VerificationReport {
    std::string scheme;
    uint64_t m = 0;
    int n = 0;
    int t = 0;
    uint64_t sets_tested = 0;
    uint64_t queries_tested = 0;
    uint64_t false_positives = 0;
    uint64_t false_negatives = 0;
    int max_probes_seen = 0;
    std::string adaptivity_verdict = "PASS";
    uint64_t space_bits = 0;
    uint64_t formula_bits = 0;
    double elapsed_seconds = 0.0;
    std::string mode_used;
    uint64_t seed = 0;

    bool pass() const {
        return false_positives == 0 && false_negatives == 0 && max_probes_seen <= t &&
               adaptivity_verdict == "PASS" && space_bits == formula_bits;
    }
};

enum class VerifyMode { AllSets, Sampled, Auto };

struct VerifyJob {
    SchemeId scheme = SchemeId::CharVec;
    uint64_t m = 0;
    int n = 0;
    int K = 0;                   // 0: default ceil(m/M) for graph schemes
    std::optional<Graph> graph;  // required by ca/qa/appx
    VerifyMode mode = VerifyMode::Auto;
    uint64_t sample_count = 10000;
    uint64_t seed = 12345;
    bool audit_every_query = true;
};

// Builds one instance per tested set, sweeps every universe element, and
// tallies errors, probe counts, and the adaptivity audit.
VerificationReport verify_scheme(const VerifyJob& job);

// (set, query)-pair budget for exhaustive enumeration; overridable through
// the BITPROBE_ENUM_BUDGET environment variable.
uint64_t enumeration_budget();
// Total number of sets |S| <= n over [m], if it fits the budget.
std::optional<uint64_t> all_sets_feasible(uint64_t m, int n, uint64_t budget);

struct ScalingRow {
    std::string scheme;
    uint64_t m = 0;
    int n = 0;
    uint64_t space_bits = 0;
    uint64_t formula_bits = 0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    double slope = 0.0;      // least squares on (log m, log space)
    double residual = 0.0;   // RMS residual of the fit
};

ScalingResult scaling_experiment(SchemeId scheme, const std::vector<uint64_t>& m_values, int n,
                                 uint64_t seed = 1);

struct FixtureCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FixtureReport {
    std::vector<FixtureCheck> checks;
    bool all_pass() const;
};

// The worked examples: the BFS trace and blocking edges of the first two
// reference graphs, the dominated-cycle extraction, and the three-path
// families that cannot be safely oriented.
FixtureReport run_fixtures();

// Worked reference graphs used by fixtures and tests: a constrained-BFS
// trace with blocking edges, and a blocking edge whose closure is a
// GREEN-dominated cycle.
ColoredGraph bfs_trace_graph();
ColoredGraph blocking_cycle_graph();

// Three edge-disjoint s-t paths of length 2k (girth 4k) or 2k+1 (girth
// 4k+2) carrying 3k+1 resp. 3k+2 GREEN edges: one more than floor(3g/4),
// and no safe orientation exists.
ColoredGraph tightness_graph(int k, bool odd_length);

// Seeded generator for orientation stress tests: <= 12 edges, even (or
// infinite) girth, GREEN count within floor(3g/4).
ColoredGraph random_colored_instance(std::mt19937_64& rng);

QuerySet random_query_set(std::mt19937_64& rng, uint64_t m, int max_size);

std::string verification_report_json(const VerificationReport& report);
std::string scaling_csv(const ScalingResult& result);
std::string scaling_summary_json(const ScalingResult& result);
std::string fixture_report_json(const FixtureReport& report);

}  // namespace bitprobe
