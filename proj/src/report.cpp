#include "tightpath/report.hpp"

#include <sstream>

#include "tightpath/io.hpp"
#include "tightpath/util.hpp"

namespace tightpath {

std::string graph_content_hash(const ThreeGraph& g) {
    std::ostringstream os;
    write_graph(g, os);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(os.str())));
    return buf;
}

nlohmann::json make_report(const std::string& command, const ThreeGraph* input, uint64_t seed) {
    nlohmann::json r;
    r["schema_version"] = kReportSchemaVersion;
    r["command"] = command;
    if (input) {
        r["input"] = {{"n", input->vertex_count()},
                      {"m", input->edge_count()},
                      {"content_hash", graph_content_hash(*input)}};
    }
    r["seed"] = seed;
    r["results"] = nlohmann::json::object();
    return r;
}

void finalize_report(nlohmann::json& report, double elapsed_ms) {
    report["timing"] = {{"total_ms", elapsed_ms}};
}

nlohmann::json to_json(const TightPath& path) { return path.vertices; }

nlohmann::json to_json(const PathCover& cover) {
    nlohmann::json paths = nlohmann::json::array();
    for (const TightPath& p : cover.paths) paths.push_back(to_json(p));
    return paths;
}

nlohmann::json to_json(const CoverResult& result) {
    const char* status = result.status == CoverStatus::optimal       ? "optimal"
                         : result.status == CoverStatus::cap_exceeded ? "cap_exceeded"
                                                                      : "infeasible";
    return {{"status", status},
            {"optimum", result.optimum},
            {"proved_optimal", result.proved_optimal},
            {"states_explored", result.states_explored},
            {"witness", to_json(result.witness)}};
}

nlohmann::json to_json(const PipelineReport& rep) {
    nlohmann::json stages = nlohmann::json::array();
    for (const PipelineStage& s : rep.stages)
        stages.push_back({{"name", s.name},
                          {"ok", s.ok},
                          {"detail", s.detail},
                          {"uncovered_after", s.uncovered_after}});
    return {{"n", rep.n},
            {"m", rep.m},
            {"delta2", rep.delta2},
            {"degree_condition_met", rep.degree_condition_met},
            {"tight_components", rep.tight_component_count},
            {"partition_parts", rep.partition_parts},
            {"absorbers_banked", rep.absorbers_banked},
            {"reservoir_size", rep.reservoir_size},
            {"reservoir_guarantee", rep.reservoir_guarantee},
            {"stages", stages},
            {"success", rep.success},
            {"final_path_count", rep.final_path_count},
            {"failure_stage", rep.failure_stage},
            {"failure_reason", rep.failure_reason},
            {"component_obstruction", rep.component_obstruction}};
}

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace tightpath
