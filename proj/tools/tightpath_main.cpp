// tightpath: generate, analyze and cover 3-uniform hypergraphs by tight
// paths; run the claim-verification suite and the counterexample search.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tightpath/absorbing.hpp"
#include "tightpath/claims.hpp"
#include "tightpath/cover.hpp"
#include "tightpath/generators.hpp"
#include "tightpath/io.hpp"
#include "tightpath/pipeline.hpp"
#include "tightpath/report.hpp"
#include "tightpath/tight_structure.hpp"
#include "tightpath/util.hpp"

namespace {

using namespace tightpath;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitClaimFailure = 3;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
}

void emit_report(const json& report, const std::string& json_path) {
    if (!json_path.empty()) write_text_file(json_path, dump_report(report));
}

struct GenArgs {
    std::string family;
    int n = 0;
    uint64_t seed = 1;
    std::string param;
    std::string out_file;
    std::string json_path;
};

int run_gen(const GenArgs& args) {
    ThreeGraph g;
    json extra = json::object();
    if (args.family == "h0") {
        g = gen_h0(args.n).graph;
    } else if (args.family == "h1") {
        g = gen_h1(args.n).graph;
    } else if (args.family == "h2") {
        if (args.param.empty()) throw CLI::ValidationError("--param (x_size) required for h2");
        g = gen_h2(args.n, std::stoi(args.param)).graph;
    } else if (args.family == "h0prime") {
        if (args.param.empty()) throw CLI::ValidationError("--param (x_size) required for h0prime");
        g = gen_h0_prime(args.n, std::stoi(args.param)).graph;
    } else if (args.family == "complete") {
        g = gen_complete(args.n);
    } else if (args.family == "3partite") {
        int a, b, c;
        char comma;
        std::istringstream in(args.param);
        if (args.param.empty() || !(in >> a >> comma >> b >> comma >> c))
            throw CLI::ValidationError("--param must be 'a,b,c' for 3partite");
        g = gen_complete_3partite(a, b, c).graph;
    } else if (args.family == "random") {
        int delta = args.param.empty() ? (args.n + 2) / 3 : std::stoi(args.param);
        g = gen_random_min_codegree(args.n, delta, args.seed);
    } else {
        throw CLI::ValidationError("unknown family '" + args.family + "'");
    }
    write_graph_file(g, args.out_file);

    auto t0 = Clock::now();
    json report = make_report("gen", &g, args.seed);
    report["results"] = {{"family", args.family},
                         {"n", g.vertex_count()},
                         {"m", g.edge_count()},
                         {"delta2", g.vertex_count() >= 2 ? g.min_codegree() : 0},
                         {"tight_components", tight_components(g).count},
                         {"out_file", args.out_file}};
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count()
              << " delta2=" << report["results"]["delta2"]
              << " components=" << report["results"]["tight_components"] << "\n";
    emit_report(report, args.json_path);
    return kExitOk;
}

int run_analyze(const std::string& file, const std::string& json_path,
                const std::string& csv_path) {
    auto t0 = Clock::now();
    ReadResult in = read_graph_file(file);
    const ThreeGraph& g = in.graph;
    for (const std::string& w : in.warnings) std::cerr << "warning: " << w << "\n";

    std::map<int, long long> histogram;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) ++histogram[g.codegree(u, v)];
    TightComponents comps = tight_components(g);
    std::vector<long long> component_edges(comps.count, 0);
    for (int c : comps.edge_component) ++component_edges[c];

    long long covered_edges = 0;
    for (const Triple& e : g.edges())
        if (find_k4_minus_containing(g, e)) ++covered_edges;
    double coverage = g.edge_count() ? double(covered_edges) / g.edge_count() : 0.0;

    json report = make_report("analyze", &g, 0);
    json hist = json::array();
    for (auto& [deg, count] : histogram) hist.push_back({{"codegree", deg}, {"pairs", count}});
    json comp_sizes = json::array();
    auto support = comps.vertex_support(g);
    for (int c = 0; c < comps.count; ++c)
        comp_sizes.push_back(
            {{"edges", component_edges[c]}, {"vertices", support[c].size()}});
    report["results"] = {{"delta2", g.vertex_count() >= 2 ? g.min_codegree() : 0},
                         {"codegree_histogram", hist},
                         {"tight_components", comps.count},
                         {"component_sizes", comp_sizes},
                         {"k4_minus_edge_coverage", coverage}};
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());

    std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count() << " delta2="
              << report["results"]["delta2"] << " components=" << comps.count
              << " k4_minus_coverage=" << coverage << "\n";
    emit_report(report, json_path);
    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "codegree,pairs\n";
        for (auto& [deg, count] : histogram) csv << deg << ',' << count << '\n';
        write_text_file(csv_path, csv.str());
    }
    return kExitOk;
}

int run_cover(const std::string& file, bool heuristic, bool allow_short, int k_cap,
              uint64_t seed, const std::string& json_path) {
    auto t0 = Clock::now();
    ReadResult in = read_graph_file(file);
    const ThreeGraph& g = in.graph;
    json report = make_report("cover", &g, seed);

    if (!heuristic) {
        CoverOptions opts;
        opts.allow_short = allow_short;
        opts.k_cap = k_cap;
        CoverResult res = exact_min_cover(g, opts);  // throws budget_exceeded_error past cutoff
        report["results"] = {{"mode", "exact"}, {"allow_short", allow_short},
                             {"cover", to_json(res)}};
        finalize_report(report,
                        std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
        std::cout << "exact minimum cover: " << res.optimum << " path(s)\n";
        emit_report(report, json_path);
        return kExitOk;
    }

    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.allow_short = allow_short;
    auto [cover, rep] = heuristic_two_path_cover(g, cfg);
    report["results"] = {{"mode", "heuristic"}, {"pipeline", to_json(rep)}};
    if (cover) report["results"]["cover"] = to_json(*cover);
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    if (rep.success)
        std::cout << "heuristic cover: " << rep.final_path_count << " path(s)\n";
    else
        std::cout << "heuristic failed at stage '" << rep.failure_stage
                  << "': " << rep.failure_reason << "\n";
    emit_report(report, json_path);
    return kExitOk;
}

int run_deficiency(const std::string& file, int t_max, const std::string& json_path) {
    auto t0 = Clock::now();
    ReadResult in = read_graph_file(file);
    const ThreeGraph& g = in.graph;
    auto t = min_deficiency(g, t_max);
    json report = make_report("deficiency", &g, 0);
    report["results"] = {{"t_max", t_max},
                         {"deficiency", t ? json(*t) : json(nullptr)}};
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    if (t)
        std::cout << "deficiency t = " << *t << "\n";
    else
        std::cout << "no t <= " << t_max << " yields a tight Hamilton cycle\n";
    emit_report(report, json_path);
    return kExitOk;
}

int run_verify_claims(const std::string& scale_name, const std::string& json_path,
                      const std::string& csv_path) {
    auto t0 = Clock::now();
    ClaimScale scale = scale_name == "medium" ? ClaimScale::medium : ClaimScale::small;
    std::vector<ClaimResult> results = run_acceptance_claims(scale, effective_thread_count());

    bool all_pass = true;
    json rows = json::array();
    for (const ClaimResult& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
                  << " — " << r.detail << " (" << r.seconds << " s)\n";
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    }
    json report = make_report("verify-claims", nullptr, 0);
    report["results"] = {{"scale", scale_name}, {"claims", rows}, {"all_pass", all_pass}};
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    emit_report(report, json_path);
    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "id,name,pass,seconds\n";
        for (const ClaimResult& r : results)
            csv << r.id << ",\"" << r.name << "\"," << (r.pass ? 1 : 0) << ',' << r.seconds << '\n';
        write_text_file(csv_path, csv.str());
    }
    return all_pass ? kExitOk : kExitClaimFailure;
}

int run_search(int n, long long samples, uint64_t seed, int delta,
               const std::vector<std::string>& plant_files, const std::string& json_path) {
    auto t0 = Clock::now();
    CounterexampleParams params;
    params.n = n;
    params.samples = samples;
    params.seed = seed;
    params.delta = delta;
    params.threads = effective_thread_count();
    for (const std::string& f : plant_files) params.planted.push_back(read_graph_file(f).graph);

    CounterexampleOutcome out = search_counterexample(params);
    json report = make_report("search-counterexample", nullptr, seed);
    report["results"] = {{"n", n},
                         {"samples", out.sampled},
                         {"delta", out.delta_used},
                         {"filtered_out", out.filtered_out},
                         {"hits", out.hits},
                         {"certificates", out.certificates}};
    finalize_report(report, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    std::cout << "samples=" << out.sampled << " planted=" << plant_files.size()
              << " filtered_out=" << out.filtered_out << " hits=" << out.hits << "\n";
    emit_report(report, json_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tight-path structure toolkit for 3-uniform hypergraphs"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance family");
    gen->add_option("--family", gen_args.family,
                    "h0|h1|h2|h0prime|complete|3partite|random")->required();
    gen->add_option("--n", gen_args.n, "vertex count")->required();
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_option("--param", gen_args.param, "family parameter (x_size, 'a,b,c', or delta)");
    gen->add_option("--out", gen_args.out_file, "output edge-list file")->required();
    gen->add_option("--json", gen_args.json_path, "write the JSON report here");

    std::string analyze_file, analyze_json, analyze_csv;
    CLI::App* analyze = app.add_subcommand("analyze", "codegree/component/K4- analysis");
    analyze->add_option("file", analyze_file, "edge-list file")->required();
    analyze->add_option("--json", analyze_json, "write the JSON report here");
    analyze->add_option("--csv", analyze_csv, "write the codegree histogram as CSV");

    std::string cover_file, cover_json;
    bool cover_exact = false, cover_heuristic = false, cover_allow_short = true;
    int cover_k_cap = 1 << 20;
    uint64_t cover_seed = 1;
    CLI::App* cover = app.add_subcommand("cover", "minimum tight-path cover");
    cover->add_option("file", cover_file, "edge-list file")->required();
    cover->add_flag("--exact", cover_exact, "exact subset-DP solver (default)");
    cover->add_flag("--heuristic", cover_heuristic, "absorbing-method pipeline");
    cover->add_option("--allow-short", cover_allow_short, "permit 1- and 2-vertex paths");
    cover->add_option("--k-cap", cover_k_cap, "report cap on the cover size");
    cover->add_option("--seed", cover_seed, "heuristic seed");
    cover->add_option("--json", cover_json, "write the JSON report here");

    std::string def_file, def_json;
    int def_t_max = 2;
    CLI::App* deficiency = app.add_subcommand("deficiency", "smallest t with H*K_t Hamiltonian");
    deficiency->add_option("file", def_file, "edge-list file")->required();
    deficiency->add_option("--t-max", def_t_max, "largest t to try")->required();
    deficiency->add_option("--json", def_json, "write the JSON report here");

    std::string claims_scale = "small", claims_json, claims_csv;
    CLI::App* claims = app.add_subcommand("verify-claims", "run the acceptance suite");
    claims->add_option("--scale", claims_scale, "small|medium")
        ->check(CLI::IsMember({"small", "medium"}));
    claims->add_option("--json", claims_json, "write the JSON report here");
    claims->add_option("--csv", claims_csv, "write per-claim rows as CSV");

    int search_n = 9, search_delta = -1;
    long long search_samples = 10000;
    uint64_t search_seed = 1;
    std::vector<std::string> search_plants;
    std::string search_json;
    CLI::App* search = app.add_subcommand("search-counterexample",
                                          "hunt for covers needing >= 3 paths at delta2 >= n/3");
    search->add_option("--n", search_n, "vertex count")->required();
    search->add_option("--samples", search_samples, "number of repaired random samples")->required();
    search->add_option("--seed", search_seed, "random seed")->required();
    search->add_option("--delta", search_delta, "codegree filter (default ceil(n/3))");
    search->add_option("--plant", search_plants, "edge-list file injected into the corpus");
    search->add_option("--json", search_json, "write the JSON report here");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return run_gen(gen_args);
        if (analyze->parsed()) return run_analyze(analyze_file, analyze_json, analyze_csv);
        if (cover->parsed()) {
            if (cover_exact && cover_heuristic)
                throw CLI::ValidationError("--exact and --heuristic are mutually exclusive");
            return run_cover(cover_file, cover_heuristic, cover_allow_short, cover_k_cap,
                             cover_seed, cover_json);
        }
        if (deficiency->parsed()) return run_deficiency(def_file, def_t_max, def_json);
        if (claims->parsed()) return run_verify_claims(claims_scale, claims_json, claims_csv);
        if (search->parsed())
            return run_search(search_n, search_samples, search_seed, search_delta, search_plants,
                              search_json);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const budget_exceeded_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        std::cerr << "hint: the exact solvers are capped; try --heuristic or a smaller instance\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
