#ifndef TIGHTPATH_REPORT_HPP
#define TIGHTPATH_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "tightpath/cover.hpp"
#include "tightpath/pipeline.hpp"
#include "tightpath/three_graph.hpp"

namespace tightpath {

inline constexpr int kReportSchemaVersion = 1;

/// FNV-1a over the canonical edge-list text; stable content fingerprint.
std::string graph_content_hash(const ThreeGraph& g);

/// Report skeleton: schema version, command, input fingerprint, seed.
/// Everything under "results" must be deterministic given (inputs, seed);
/// "timing" sits outside the deterministic section.
nlohmann::json make_report(const std::string& command, const ThreeGraph* input, uint64_t seed);

void finalize_report(nlohmann::json& report, double elapsed_ms);

nlohmann::json to_json(const TightPath& path);
nlohmann::json to_json(const PathCover& cover);
nlohmann::json to_json(const CoverResult& result);
nlohmann::json to_json(const PipelineReport& report);

/// Canonical serialization used everywhere a report hits a file or stream.
std::string dump_report(const nlohmann::json& report);

}  // namespace tightpath

#endif
