#include "tightpath/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tightpath {

namespace {

bool next_data_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;  // blank
        if (line[i] == '#') continue;          // comment
        return true;
    }
    return false;
}

[[noreturn]] void fail(long lineno, const std::string& what) {
    throw std::runtime_error("edge list line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

ReadResult read_graph(std::istream& in) {
    std::string line;
    long lineno = 0;
    if (!next_data_line(in, line, lineno)) throw std::runtime_error("edge list: missing header");

    std::istringstream header(line);
    long long n = -1, m = -1;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra) || n < 0 || m < 0)
        fail(lineno, "malformed header, expected 'n m'");

    std::vector<Triple> triples;
    triples.reserve(static_cast<std::size_t>(m));
    std::vector<std::string> warnings;
    std::set<Triple> seen;
    for (long long i = 0; i < m; ++i) {
        if (!next_data_line(in, line, lineno)) fail(lineno, "expected " + std::to_string(m) + " edges, file ended early");
        std::istringstream row(line);
        long long u, v, w;
        if (!(row >> u >> v >> w) || (row >> extra)) fail(lineno, "malformed edge, expected 'u v w'");
        if (u < 0 || v < 0 || w < 0 || u >= n || v >= n || w >= n) fail(lineno, "vertex out of range");
        if (u == v || u == w || v == w) fail(lineno, "repeated vertex inside a triple");
        Triple t = sorted_triple(static_cast<int>(u), static_cast<int>(v), static_cast<int>(w));
        if (!seen.insert(t).second)
            warnings.push_back("line " + std::to_string(lineno) + ": duplicate edge, keeping one copy");
        triples.push_back(t);
    }
    return {ThreeGraph(static_cast<int>(n), triples), std::move(warnings)};
}

ReadResult read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_graph(in);
}

void write_graph(const ThreeGraph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Triple& e : g.edges()) out << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
}

void write_graph_file(const ThreeGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_graph(g, out);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace tightpath
