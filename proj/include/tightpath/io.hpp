#ifndef TIGHTPATH_IO_HPP
#define TIGHTPATH_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "tightpath/three_graph.hpp"

namespace tightpath {

struct ReadResult {
    ThreeGraph graph;
    std::vector<std::string> warnings;  // e.g. duplicate edges (accepted, deduplicated)
};

/// Edge-list text format: header line "n m", then m lines "u v w" with
/// 0 <= u < v < w < n. '#'-prefixed comment lines are permitted anywhere.
/// Non-canonical vertex order inside a line is accepted and canonicalized;
/// duplicates produce a warning; repeated or out-of-range vertices are errors.
ReadResult read_graph(std::istream& in);
ReadResult read_graph_file(const std::string& path);

/// Writes the canonical form: edges lexicographically sorted, one per line,
/// space separated, newline terminated. Byte-stable for golden tests.
void write_graph(const ThreeGraph& g, std::ostream& out);
void write_graph_file(const ThreeGraph& g, const std::string& path);

}  // namespace tightpath

#endif
