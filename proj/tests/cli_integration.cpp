// Integration tests for the command-line front door. The binary path comes
// from the TIGHTPATH_CLI environment variable (set by CTest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string cli() {
    const char* path = std::getenv("TIGHTPATH_CLI");
    REQUIRE_MESSAGE(path != nullptr, "TIGHTPATH_CLI must point at the CLI binary");
    return path;
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "tightpath_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args, std::string* output = nullptr) {
    fs::path out_file = temp_dir() / "stdout.txt";
    std::string cmd = cli() + " " + args + " > " + out_file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen writes the documented edge-list format") {
    fs::path file = temp_dir() / "h1_9.txt";
    std::string out;
    int code = run("gen --family h1 --n 9 --out " + file.string(), &out);
    CHECK(code == 0);
    CHECK(out.find("m=27") != std::string::npos);
    std::istringstream data(slurp(file));
    std::string header;
    std::getline(data, header);
    CHECK(header == "9 27");
}

TEST_CASE("gen rejects bad parameters with exit code 1") {
    fs::path file = temp_dir() / "bad.txt";
    CHECK(run("gen --family h1 --n 10 --out " + file.string()) == 1);
    CHECK(run("gen --family nosuch --n 9 --out " + file.string()) == 1);
}

TEST_CASE("analyze and cover report the H1 structure") {
    fs::path file = temp_dir() / "h1_9b.txt";
    fs::path report = temp_dir() / "analyze.json";
    REQUIRE(run("gen --family h1 --n 9 --out " + file.string()) == 0);

    std::string out;
    CHECK(run("analyze " + file.string() + " --json " + report.string(), &out) == 0);
    CHECK(out.find("components=3") != std::string::npos);
    json r = json::parse(slurp(report));
    CHECK(r["results"]["tight_components"] == 3);
    CHECK(r["schema_version"] == 1);

    std::string cover_out;
    CHECK(run("cover " + file.string() + " --exact", &cover_out) == 0);
    CHECK(cover_out.find("3 path(s)") != std::string::npos);
}

TEST_CASE("gen summary carries the codegree of the split-blocked family") {
    fs::path file = temp_dir() / "h0_10s.txt";
    std::string out;
    CHECK(run("gen --family h0 --n 10 --out " + file.string(), &out) == 0);
    CHECK(out.find("delta2=3") != std::string::npos);

    std::string cover_out;
    CHECK(run("cover " + file.string() + " --exact", &cover_out) == 0);
    CHECK(cover_out.find("2 path(s)") != std::string::npos);
}

TEST_CASE("K4-minus coverage extremes in analyze") {
    fs::path complete = temp_dir() / "k6.txt";
    fs::path tri = temp_dir() / "tri222.txt";
    fs::path rep = temp_dir() / "cov.json";
    REQUIRE(run("gen --family complete --n 6 --out " + complete.string()) == 0);
    REQUIRE(run("gen --family 3partite --n 6 --param 2,2,2 --out " + tri.string()) == 0);

    CHECK(run("analyze " + complete.string() + " --json " + rep.string()) == 0);
    CHECK(json::parse(slurp(rep))["results"]["k4_minus_edge_coverage"] == 1.0);
    CHECK(run("analyze " + tri.string() + " --json " + rep.string()) == 0);
    CHECK(json::parse(slurp(rep))["results"]["k4_minus_edge_coverage"] == 0.0);
}

TEST_CASE("cover on an oversized instance exits with the budget code") {
    fs::path file = temp_dir() / "complete_20.txt";
    REQUIRE(run("gen --family complete --n 20 --out " + file.string()) == 0);
    std::string out;
    CHECK(run("cover " + file.string() + " --exact", &out) == 2);
    CHECK(out.find("heuristic") != std::string::npos);  // remediation hint
}

TEST_CASE("deficiency command") {
    fs::path file = temp_dir() / "h0_8.txt";
    REQUIRE(run("gen --family h0 --n 8 --out " + file.string()) == 0);
    std::string out;
    CHECK(run("deficiency " + file.string() + " --t-max 3", &out) == 0);
    CHECK(out.find("t = 2") != std::string::npos);
}

TEST_CASE("reports are byte-identical across reruns up to timing") {
    fs::path file = temp_dir() / "h0_10.txt";
    fs::path r1 = temp_dir() / "r1.json";
    fs::path r2 = temp_dir() / "r2.json";
    REQUIRE(run("gen --family h0 --n 10 --out " + file.string()) == 0);
    REQUIRE(run("cover " + file.string() + " --exact --json " + r1.string()) == 0);
    REQUIRE(run("cover " + file.string() + " --exact --json " + r2.string()) == 0);
    json a = json::parse(slurp(r1));
    json b = json::parse(slurp(r2));
    a.erase("timing");
    b.erase("timing");
    CHECK(a == b);
    CHECK(a.dump() == b.dump());  // byte-identical deterministic section
}

TEST_CASE("search-counterexample filters a planted sharp instance") {
    fs::path plant = temp_dir() / "h1_plant.txt";
    fs::path report = temp_dir() / "search.json";
    REQUIRE(run("gen --family h1 --n 9 --out " + plant.string()) == 0);

    std::string out;
    CHECK(run("search-counterexample --n 9 --samples 25 --seed 5 --plant " + plant.string() +
                  " --json " + report.string(),
              &out) == 0);
    json strict = json::parse(slurp(report));
    CHECK(strict["results"]["hits"] == 0);
    CHECK(strict["results"]["filtered_out"] >= 1);

    CHECK(run("search-counterexample --n 9 --samples 25 --seed 5 --delta 2 --plant " +
                  plant.string() + " --json " + report.string(),
              &out) == 0);
    json relaxed = json::parse(slurp(report));
    CHECK(relaxed["results"]["hits"] >= 1);
}
