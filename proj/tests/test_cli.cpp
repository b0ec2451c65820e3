#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

std::string cli_path() { return OSCIDECAY_CLI_PATH; }
std::string problems_dir() { return OSCIDECAY_PROBLEMS_DIR; }

int run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("oscidecay_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("analyze reports the nondegenerate planar problem") {
    auto dir = fresh_dir("analyze");
    REQUIRE(run("analyze --problem " + problems_dir() + "/xy_axes.json --out " + dir.string()) == 0);
    const std::string report = slurp(dir / "analyze.json");
    CHECK(report.find("\"degenerate\": false") != std::string::npos);
    CHECK(report.find("\"relative_norm\": \"1\"") != std::string::npos);
    CHECK(report.find("manifest_digest") != std::string::npos);
}

TEST_CASE("short lambda grids are rejected as malformed input") {
    auto dir = fresh_dir("short_grid");
    CHECK(run("decay --problem " + problems_dir() + "/xy_axes.json --out " + dir.string() +
              " --points 3") == 2);
}

TEST_CASE("bad JSON exits with the input-error code") {
    auto dir = fresh_dir("bad_json");
    auto bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    CHECK(run("analyze --problem " + bad.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("rank-deficient bases are rejected before computation") {
    auto dir = fresh_dir("bad_basis");
    auto bad = dir / "degenerate_basis.json";
    std::ofstream(bad) << R"({
      "dimension": 2,
      "polynomial": {"dimension": 2, "terms": [{"exponents": [1, 1], "coeff": "1"}]},
      "subspaces": [{"basis": [["1", "0"], ["2", "0"]]}]
    })";
    CHECK(run("analyze --problem " + bad.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("identical manifests reproduce byte-identical outputs") {
    auto dir1 = fresh_dir("repro1");
    auto dir2 = fresh_dir("repro2");
    const std::string base = "decay --problem " + problems_dir() +
                             "/xy_axes.json --lambda-min 4 --lambda-max 128 --points 6 "
                             "--seed 11 --samples 2 --tolerance 1e-5";
    REQUIRE(run(base + " --out " + dir1.string()) == 0);
    REQUIRE(run(base + " --out " + dir2.string()) == 0);
    CHECK(slurp(dir1 / "decay.csv") == slurp(dir2 / "decay.csv"));
    CHECK(slurp(dir1 / "decay_summary.json") == slurp(dir2 / "decay_summary.json"));

    // thread count must not affect the bytes
    auto dir3 = fresh_dir("repro3");
    REQUIRE(run(base + " --threads 2 --out " + dir3.string()) == 0);
    CHECK(slurp(dir1 / "decay.csv") == slurp(dir3 / "decay.csv"));
}

TEST_CASE("sublevel runs are reproducible and embed the digest") {
    auto dir1 = fresh_dir("sub1");
    auto dir2 = fresh_dir("sub2");
    const std::string base = "sublevel --problem " + problems_dir() +
                             "/xy_axes.json --eps-max 0.1 --eps-min 0.001 --points 4 "
                             "--samples 20000 --seed 3";
    REQUIRE(run(base + " --out " + dir1.string()) == 0);
    REQUIRE(run(base + " --threads 2 --out " + dir2.string()) == 0);
    const std::string csv = slurp(dir1 / "sublevel.csv");
    CHECK(csv == slurp(dir2 / "sublevel.csv"));
    CHECK(csv.rfind("# manifest ", 0) == 0);
}

TEST_CASE("strict mode reports unmet tolerances with its own exit code") {
    auto dir = fresh_dir("strict");
    // an unreachable tolerance on the pure oscillatory problem
    const std::string base = "decay --problem " + problems_dir() +
                             "/fresnel.json --lambda-min 2 --lambda-max 64 --points 6 "
                             "--tolerance 1e-300 --strict";
    CHECK(run(base + " --out " + dir.string()) == 3);
}

TEST_CASE("adversarial modulations require a degenerate phase") {
    auto dir = fresh_dir("adversarial");
    CHECK(run("decay --problem " + problems_dir() + "/xy_axes.json --out " + dir.string() +
              " --adversarial --points 6 --lambda-min 1 --lambda-max 32") == 2);
    CHECK(run("decay --problem " + problems_dir() + "/degenerate_parabola.json --out " +
              dir.string() + " --adversarial --points 6 --lambda-min 1 --lambda-max 32 "
              "--tolerance 1e-6") == 0);
}

TEST_CASE("witness subcommand reports the scheme") {
    auto dir = fresh_dir("witness");
    REQUIRE(run("witness --problem " + problems_dir() + "/xy_axes.json --out " + dir.string()) == 0);
    const std::string report = slurp(dir / "witness.json");
    CHECK(report.find("\"simple_witness\"") != std::string::npos);
    CHECK(report.find("\"independent_scales\": true") != std::string::npos);
}

TEST_CASE("uniformity subcommand classifies a modulated phase") {
    auto dir = fresh_dir("uniformity");
    auto prob = dir / "modulated.json";
    std::ofstream(prob) << R"({
      "dimension": 1,
      "polynomial": {"dimension": 1, "terms": []},
      "functions": [{"kind": "modulated_exponential",
                     "phase": {"dimension": 1, "terms": [{"exponents": [1], "coeff": "-1"}]}}],
      "region": {"lo": [-1.0], "hi": [1.0]}
    })";
    // f = e^{i lambda t}; with lambda = 16 the linear coefficient 16 lies on
    // the default grid, so the scan finds the perfect correlation
    REQUIRE(run("uniformity --problem " + prob.string() + " --out " + dir.string() +
                " --lambda 16 --degree 1 --tau 0.25 --grid-cap 193") == 0);
    const std::string report = slurp(dir / "uniformity.json");
    CHECK(report.find("\"classification\": \"nonuniform\"") != std::string::npos);
}
