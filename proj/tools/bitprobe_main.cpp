#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bitprobe/forests.hpp"
#include "bitprobe/graph.hpp"
#include "bitprobe/graph_io.hpp"
#include "bitprobe/harness.hpp"
#include "bitprobe/memory.hpp"
#include "bitprobe/orientation.hpp"
#include "bitprobe/schemes.hpp"

namespace {

using namespace bitprobe;

std::vector<uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<uint64_t> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    for (uint64_t v : parse_u64_list(csv)) out.push_back(static_cast<int>(v));
    return out;
}

std::map<std::string, long long> parse_params(const std::string& csv) {
    std::map<std::string, long long> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--params expects key=value pairs");
        out[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    }
    return out;
}

long long need_param(const std::map<std::string, long long>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) throw CLI::ValidationError("missing --params entry: " + key);
    return it->second;
}

Rational parse_alpha(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return {std::stoll(text), 1};
    return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
}

int run(int argc, char** argv) {
    CLI::App app{"bit-probe set membership schemes over high-girth and locally sparse graphs"};
    app.require_subcommand(1);

    // ---- graph ----------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "build and inspect substrate graphs");
    graph_cmd->require_subcommand(1);

    std::string family, params_csv, out_path;
    auto* build = graph_cmd->add_subcommand("build", "construct a graph family member");
    build->add_option("--family", family, "kbb | pp | wenger | sparse | prune")->required();
    build->add_option("--params", params_csv,
                      "comma list, e.g. a=4 | q=3 | k=3,p=3 | n=64,seed=1 | girth=8,seed=1");
    std::string prune_input;
    build->add_option("--in", prune_input, "input graph file (family prune)");
    build->add_option("--out", out_path, "output graph file")->required();
    build->callback([&] {
        auto params = parse_params(params_csv);
        Graph g;
        if (family == "kbb") {
            g = complete_bipartite(static_cast<int>(need_param(params, "a")));
        } else if (family == "pp") {
            g = projective_plane_incidence(static_cast<int>(need_param(params, "q")));
        } else if (family == "wenger") {
            g = wenger_graph(static_cast<int>(need_param(params, "k")),
                             static_cast<int>(need_param(params, "p")));
        } else if (family == "sparse") {
            g = random_locally_sparse(static_cast<int>(need_param(params, "n")),
                                      static_cast<uint64_t>(need_param(params, "seed")));
        } else if (family == "prune") {
            if (prune_input.empty()) throw CLI::ValidationError("family prune needs --in FILE");
            g = prune_to_girth(load_graph(prune_input),
                               static_cast<int>(need_param(params, "girth")),
                               static_cast<uint64_t>(need_param(params, "seed")));
        } else {
            throw CLI::ValidationError("unknown family: " + family);
        }
        save_graph(g, out_path);
        std::cout << "wrote " << out_path << ": " << g.vertex_count << " vertices, "
                  << g.edge_count() << " edges\n";
    });

    std::string girth_file;
    auto* girth_sub = graph_cmd->add_subcommand("girth", "shortest cycle length and witness");
    girth_sub->add_option("file", girth_file)->required();
    girth_sub->callback([&] {
        GirthCertificate cert = girth(load_graph(girth_file));
        if (cert.is_infinite()) {
            std::cout << "girth: infinite\n";
        } else {
            std::cout << "girth: " << *cert.girth << "\nwitness:";
            for (int v : cert.witness_cycle) std::cout << ' ' << v;
            std::cout << '\n';
        }
    });

    std::string sparsity_file, alpha_text = "5/4", mode_text = "exact";
    int sparsity_k = 8, sparsity_trials = 2000;
    uint64_t sparsity_seed = 1;
    auto* sparsity = graph_cmd->add_subcommand("sparsity", "local sparsity check");
    sparsity->add_option("file", sparsity_file)->required();
    sparsity->add_option("--k", sparsity_k, "max subset size")->required();
    sparsity->add_option("--alpha", alpha_text, "threshold, e.g. 5/4");
    sparsity->add_option("--mode", mode_text)->check(CLI::IsMember({"exact", "sampled"}));
    sparsity->add_option("--trials", sparsity_trials);
    sparsity->add_option("--seed", sparsity_seed);
    sparsity->callback([&] {
        SparsityReport report = check_local_sparsity(
            load_graph(sparsity_file), sparsity_k, parse_alpha(alpha_text),
            mode_text == "exact" ? SparsityMode::Exact : SparsityMode::Sampled, sparsity_trials,
            sparsity_seed);
        nlohmann::json j;
        j["satisfied"] = report.satisfied;
        j["violating_set"] = report.violating_set;
        j["induced_edge_count"] = report.induced_edge_count;
        j["mode"] = mode_text;
        std::cout << j.dump() << '\n';
        if (!report.satisfied) throw CLI::RuntimeError("", 1);
    });

    // ---- orient ---------------------------------------------------------
    std::string orient_graph, green_csv;
    bool orient_brute = false;
    auto* orient_cmd = app.add_subcommand("orient", "safe orientation of a colored graph");
    orient_cmd->add_option("--graph", orient_graph)->required();
    orient_cmd->add_option("--green", green_csv, "GREEN edge indices, comma separated");
    orient_cmd->add_flag("--brute-force", orient_brute, "exhaustive search instead");
    orient_cmd->callback([&] {
        ColoredGraph h = make_colored_graph(load_graph(orient_graph), parse_int_list(green_csv));
        Orientation o;
        if (orient_brute) {
            auto found = brute_force_safe_orient(h);
            if (!found) {
                std::cout << "no safe orientation exists\n";
                throw CLI::RuntimeError("", 2);
            }
            o = *found;
        } else {
            o = safe_orient(h);
        }
        std::cout << "orientation:";
        for (uint8_t d : o.direction) std::cout << ' ' << static_cast<int>(d);
        std::cout << "\nsafe: " << (is_safe(h, o) ? "yes" : "no") << '\n';
    });

    // ---- forests --------------------------------------------------------
    auto* forests_cmd = app.add_subcommand("forests", "two-forest edge partition");
    std::string split_graph, subset_csv;
    auto* split = forests_cmd->add_subcommand("split", "partition induced edges into two forests");
    split->add_option("--graph", split_graph)->required();
    split->add_option("--subset", subset_csv, "vertex subset, comma separated (default: all)");
    split->callback([&] {
        Graph g = load_graph(split_graph);
        std::vector<int> subset;
        if (subset_csv.empty()) {
            subset.resize(static_cast<size_t>(g.vertex_count));
            std::iota(subset.begin(), subset.end(), 0);
        } else {
            subset = parse_int_list(subset_csv);
        }
        ForestPartition partition = two_forest_partition(g, subset);
        auto print = [&](const char* name, const std::vector<int>& edges) {
            std::cout << name << ':';
            for (int e : edges) std::cout << ' ' << g.edges[e].u << '-' << g.edges[e].v;
            std::cout << '\n';
        };
        print("forest1", partition.forest1);
        print("forest2", partition.forest2);
    });

    // ---- scheme ---------------------------------------------------------
    auto* scheme_cmd = app.add_subcommand("scheme", "build and query membership structures");
    scheme_cmd->require_subcommand(1);

    std::string scheme_name, scheme_graph, set_csv, state_out;
    uint64_t scheme_m = 0;
    int scheme_n = 0, scheme_k = 0;
    uint64_t scheme_seed = 1;
    auto* sbuild = scheme_cmd->add_subcommand("build", "store a set");
    sbuild->add_option("--scheme", scheme_name, "ca | qa | qn22 | qn23 | appx | cv")->required();
    sbuild->add_option("--m", scheme_m, "universe size")->required();
    sbuild->add_option("--n", scheme_n, "capacity bound on |S|");
    sbuild->add_option("--graph", scheme_graph, "substrate graph file (default: family policy)");
    sbuild->add_option("--K", scheme_k, "slices per edge (default: ceil(m/M))");
    sbuild->add_option("--set", set_csv, "stored elements, comma separated");
    sbuild->add_option("--seed", scheme_seed, "seed for generated substrates");
    sbuild->add_option("--out", state_out, "state file")->required();
    sbuild->callback([&] {
        auto id = scheme_from_code(scheme_name);
        if (!id) throw CLI::ValidationError("unknown scheme: " + scheme_name);
        QuerySet set = make_query_set(parse_u64_list(set_csv));
        SchemeInstance inst;
        if (*id == SchemeId::Qn22 || *id == SchemeId::Qn23 || *id == SchemeId::CharVec) {
            inst = *id == SchemeId::Qn22   ? qn22_store(scheme_m, set)
                   : *id == SchemeId::Qn23 ? qn23_store(scheme_m, set)
                                           : charvec_store(scheme_m, set);
        } else if (*id == SchemeId::QuantumAdaptive) {
            if (!scheme_graph.empty()) {
                Graph g = load_graph(scheme_graph);
                inst = quantum_adaptive_store(g, scheme_k > 0 ? scheme_k : default_K(g, scheme_m),
                                              scheme_m, scheme_n, set);
            } else {
                // Generated substrates can come out unusable (too few edges,
                // dense-core overflow); regenerate with the next seed.
                int vertices = std::max<int>(
                    16, static_cast<int>(std::llround(std::pow(static_cast<double>(scheme_m), 0.75))));
                bool stored = false;
                for (uint64_t attempt = 0; attempt < 64 && !stored; ++attempt) {
                    Graph g = random_locally_sparse(vertices, scheme_seed + attempt);
                    if (scheme_m > 0 && g.edge_count() == 0) continue;
                    try {
                        inst = quantum_adaptive_store(
                            g, scheme_k > 0 ? scheme_k : default_K(g, scheme_m), scheme_m,
                            scheme_n, set);
                        stored = true;
                    } catch (const substrate_error&) {
                    }
                }
                if (!stored)
                    throw CLI::RuntimeError("no usable sparse substrate within 64 seeds", 1);
            }
        } else {
            Graph g = scheme_graph.empty()
                          ? select_graph_for(scheme_m, std::max(scheme_n, 2), scheme_seed)
                          : load_graph(scheme_graph);
            int K = scheme_k > 0 ? scheme_k : default_K(g, scheme_m);
            inst = *id == SchemeId::ClassicalAdaptive
                       ? classical_adaptive_store(g, K, scheme_m, scheme_n, set)
                       : appendix_nonadaptive_store(g, K, scheme_m, scheme_n, set);
        }
        save_scheme(inst, state_out);
        std::cout << "wrote " << state_out << ": scheme " << scheme_code(inst.id) << ", m "
                  << inst.m << ", space " << inst.store.total_bits() << " bits\n";
    });

    std::string state_in;
    uint64_t query_x = 0;
    bool dump_transcript = false;
    auto* squery = scheme_cmd->add_subcommand("query", "membership query against a state file");
    squery->add_option("--state", state_in)->required();
    squery->add_option("--x", query_x)->required();
    squery->add_flag("--dump-transcript", dump_transcript);
    squery->callback([&] {
        SchemeInstance inst = load_scheme(state_in);
        ProbeSession session(inst.store);
        session.reset(inst.probe_class);
        bool answer = scheme_query(inst, query_x, session);
        std::cout << (answer ? "yes" : "no") << '\n';
        if (dump_transcript) std::cout << transcript_to_jsonl(session.transcript(), inst.store);
    });

    // ---- verify ---------------------------------------------------------
    std::string verify_scheme_name, verify_graph, verify_mode = "auto";
    uint64_t verify_m = 0, verify_count = 10000, verify_seed = 12345;
    int verify_n = 0, verify_k = 0;
    bool no_audit = false;
    auto* verify_cmd = app.add_subcommand("verify", "zero-error sweep over stored sets");
    verify_cmd->add_option("--scheme", verify_scheme_name)->required();
    verify_cmd->add_option("--m", verify_m)->required();
    verify_cmd->add_option("--n", verify_n)->required();
    verify_cmd->add_option("--graph", verify_graph);
    verify_cmd->add_option("--K", verify_k);
    verify_cmd->add_option("--mode", verify_mode)->check(CLI::IsMember({"all", "sampled", "auto"}));
    verify_cmd->add_option("--count", verify_count, "sampled sets");
    verify_cmd->add_option("--seed", verify_seed);
    verify_cmd->add_flag("--no-audit", no_audit, "skip the adaptivity replay audit");
    verify_cmd->callback([&] {
        auto id = scheme_from_code(verify_scheme_name);
        if (!id) throw CLI::ValidationError("unknown scheme: " + verify_scheme_name);
        VerifyJob job;
        job.scheme = *id;
        job.m = verify_m;
        job.n = verify_n;
        job.K = verify_k;
        if (!verify_graph.empty()) job.graph = load_graph(verify_graph);
        job.mode = verify_mode == "all"       ? VerifyMode::AllSets
                   : verify_mode == "sampled" ? VerifyMode::Sampled
                                              : VerifyMode::Auto;
        job.sample_count = verify_count;
        job.seed = verify_seed;
        job.audit_every_query = !no_audit;
        VerificationReport report = verify_scheme(job);
        std::cout << verification_report_json(report) << '\n';
        if (!report.pass()) throw CLI::RuntimeError("", 1);
    });

    // ---- scale ----------------------------------------------------------
    std::string scale_scheme_name, scale_m_csv, scale_csv_path;
    int scale_n = 2;
    uint64_t scale_seed = 1;
    auto* scale_cmd = app.add_subcommand("scale", "space scaling rows and log-log slope");
    scale_cmd->add_option("--scheme", scale_scheme_name)->required();
    scale_cmd->add_option("--m-values", scale_m_csv, "comma separated universe sizes")->required();
    scale_cmd->add_option("--n", scale_n)->required();
    scale_cmd->add_option("--seed", scale_seed);
    scale_cmd->add_option("--csv", scale_csv_path, "also write rows to a file");
    scale_cmd->callback([&] {
        auto id = scheme_from_code(scale_scheme_name);
        if (!id) throw CLI::ValidationError("unknown scheme: " + scale_scheme_name);
        ScalingResult result =
            scaling_experiment(*id, parse_u64_list(scale_m_csv), scale_n, scale_seed);
        std::cout << scaling_csv(result);
        if (!scale_csv_path.empty()) {
            std::ofstream out(scale_csv_path);
            out << scaling_csv(result);
        }
        std::cout << scaling_summary_json(result) << '\n';
    });

    // ---- fixtures -------------------------------------------------------
    auto* fixtures_cmd = app.add_subcommand("fixtures", "reference-figure checks");
    fixtures_cmd->callback([&] {
        FixtureReport report = run_fixtures();
        for (const auto& check : report.checks)
            std::cout << (check.pass ? "PASS " : "FAIL ") << check.name << ": " << check.detail
                      << '\n';
        std::cout << fixture_report_json(report) << '\n';
        if (!report.all_pass()) throw CLI::RuntimeError("", 1);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& err) {
        std::cerr << "bitprobe: " << err.what() << '\n';
        return 1;
    }
}
