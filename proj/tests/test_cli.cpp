#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>

#include "sepint/io.hpp"

using sepint::io::json;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / ("sepint_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

/// Runs the CLI through the shell with `args` appended verbatim.
Result run(const std::string& args, const std::string& env = "") {
    const auto err_path = scratch_dir() / "stderr.txt";
    const std::string cmd = env + " '" + std::string(SEPINT_CLI_PATH) + "' " + args + " 2>'" + err_path.string() + "'";
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = sepint::io::read_file(err_path.string());
    return r;
}

std::string fixture(const std::string& name) { return "'" + std::string(SEPINT_FIXTURE_DIR) + "/" + name + "'"; }

/// Data rows of a volume CSV as (t, V).
std::vector<std::pair<double, double>> volume_rows(const std::string& csv) {
    std::vector<std::pair<double, double>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "t,V") continue;
        const auto comma = line.find(',');
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return rows;
}

const json* find_check(const json& report, const std::string& name) {
    for (const auto& c : report["checks"])
        if (c["name"] == name) return &c;
    return nullptr;
}

class ScratchCleanup : public ::testing::Environment {
public:
    void TearDown() override { std::filesystem::remove_all(scratch_dir()); }
};

const auto* const cleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

}  // namespace

TEST(CliVolume, BallSamples) {
    const Result r = run("volume --body " + fixture("ball3.json") + " --t 0,0.5");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = volume_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].second, 0.0);
    EXPECT_NEAR(rows[1].second, 2.879793, 1e-6);
    EXPECT_NE(r.out.find("# body=ball3\n"), std::string::npos);
    EXPECT_NE(r.out.find("# frame_hash="), std::string::npos);
    EXPECT_NE(r.out.find("# resolution=32\n"), std::string::npos);
    EXPECT_NE(r.out.find("# seed=1\n"), std::string::npos);
    EXPECT_NE(r.out.find("# config={\"command\":\"volume\""), std::string::npos);
}

TEST(CliVolume, DefaultGridAndInlineBody) {
    const Result r = run(R"(volume --resolution 16 --body '{"id": "e", "model": "ellipsoid", "matrix": [["1","0"],["0","4"]]}')");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = volume_rows(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(rows.front().first, 0.05, 1e-15);
    EXPECT_NEAR(rows.back().first, 0.45, 1e-15);
}

TEST(CliVolume, MalformedFixtureIsConfigError) {
    const auto bad = scratch_dir() / "bad.json";
    sepint::io::write_file(bad.string(), "{\"model\": \"ball\", \"dim\": ");
    const Result r = run("volume --body '" + bad.string() + "' --t 0.5");
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(r.out.empty());
}

TEST(CliErrors, ConfigurationErrorsExitTwo) {
    EXPECT_EQ(run("volume --body /nonexistent.json").code, 2);
    EXPECT_EQ(run(R"(volume --body '{"model": "polyroot", "dim": 2, "h": "x0^4-x1^4"}')").code, 2);
    EXPECT_EQ(run("volume --body " + fixture("ball3.json") + " --k 3").code, 2);
    EXPECT_EQ(run("volume --body " + fixture("ball3.json") + " --t -1").code, 2);
    EXPECT_EQ(run("rank --body " + fixture("ball3.json") + " --grid 10by10").code, 2);
    EXPECT_EQ(run("rank --body " + fixture("ball3.json") + " --tol 0").code, 2);
    EXPECT_EQ(run("rank --body " + fixture("ball3.json") + " --matrix " + fixture("rank3.csv")).code, 2);
    EXPECT_EQ(run("verify --suite nonsense").code, 2);
    EXPECT_EQ(run("verify --seed notanumber").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(CliRank, BallGridIsRankOne) {
    const Result r = run("rank --body " + fixture("ball3.json") + " --grid 10x10 --resolution 16");
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_EQ(report["rank"], 1);
    EXPECT_EQ(report["n_h"], 10);
    EXPECT_EQ(report["singular_values"].size(), 10u);
    EXPECT_EQ(report["config"]["grid"]["n_h"], 10);
    EXPECT_EQ(report["config"]["body"]["id"], "ball3");
}

TEST(CliRank, SyntheticCsvIsRankThree) {
    const Result r = run("rank --matrix " + fixture("rank3.csv"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["rank"], 3);
}

TEST(CliRank, SavedMatrixRoundTrips) {
    const auto dir = scratch_dir();
    const std::string csv = (dir / "ell.csv").string();
    const std::string report_path = (dir / "ell_rank.json").string();
    const Result r = run("rank --body " + fixture("ellipsoid_125.json") + " --grid 6x5 --resolution 16 --save-matrix '" + csv + "' --out '" +
                         report_path + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const json report = json::parse(sepint::io::read_file(report_path));
    const json meta = json::parse(sepint::io::read_file((dir / "ell.json").string()));
    EXPECT_EQ(meta["n_h"], 6);
    EXPECT_EQ(meta["n_t"], 5);
    EXPECT_EQ(meta["frame_hash"], report["frame_hash"]);
    const Result again = run("rank --matrix '" + csv + "'");
    ASSERT_EQ(again.code, 0);
    EXPECT_EQ(json::parse(again.out)["singular_values"], report["singular_values"]);
}

TEST(CliGrowth, BallStaysAtOne) {
    const Result r = run("growth --body " + fixture("ball3.json") + " --sizes 4,8 --resolution 16");
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    ASSERT_EQ(report["curve"].size(), 2u);
    for (const auto& p : report["curve"]) EXPECT_EQ(p["rank"], 1);
    EXPECT_EQ(run("growth --body " + fixture("ball3.json") + " --sizes 8,4").code, 2);
}

TEST(CliVerify, SymbolicSuitePasses) {
    const Result r = run("verify --suite symbolic");
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    const json* octic = find_check(report, "octic_dual_quadric_divisible");
    ASSERT_NE(octic, nullptr);
    EXPECT_TRUE((*octic)["pass"].get<bool>());
    EXPECT_EQ((*octic)["measured"]["quotient_degree"], 6);
    EXPECT_TRUE(report.contains("timestamp"));
    EXPECT_EQ(report["summary"]["failed"], 0);
}

TEST(CliVerify, ValuationAndGeometrySuitesPass) {
    for (const char* suite : {"valuation", "algext", "geometry"}) {
        const Result r = run(std::string("verify --suite ") + suite);
        EXPECT_EQ(r.code, 0) << suite << "\n" << r.out << r.err;
    }
    const json geometry = json::parse(run("verify --suite geometry").out);
    const json* ball = find_check(geometry, "ball_volume_oracle_agreement");
    ASSERT_NE(ball, nullptr);
    EXPECT_LE((*ball)["measured"]["max_rel_error"].get<double>(), 1e-6);
}

TEST(CliVerify, MissingFixtureFailsTheCheck) {
    const Result r = run("verify --suite symbolic --fixtures /nonexistent");
    EXPECT_EQ(r.code, 1);
    const json report = json::parse(r.out);
    const json* octic = find_check(report, "octic_dual_quadric_divisible");
    ASSERT_NE(octic, nullptr);
    EXPECT_FALSE((*octic)["pass"].get<bool>());
    EXPECT_TRUE((*octic)["measured"].contains("error"));
}

TEST(CliDeterminism, IdenticalConfigGivesIdenticalBytes) {
    const std::string vol = "volume --body " + fixture("l4_ball.json") + " --t 0.1,0.4,0.7 --resolution 16 --seed 3";
    EXPECT_EQ(run(vol).out, run(vol).out);
    const std::string rank = "rank --body " + fixture("l4_perturbed_ball.json") + " --grid 5x4 --resolution 16";
    const Result a = run(rank), b = run(rank);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliDeterminism, ThreadsDoNotChangeResults) {
    const std::string rank = "rank --body " + fixture("l4_ball.json") + " --grid 6x5 --resolution 16";
    json one = json::parse(run(rank + " --threads 1").out);
    json three = json::parse(run(rank + " --threads 3").out);
    one["config"].erase("threads");
    three["config"].erase("threads");
    EXPECT_EQ(one, three);
}

TEST(CliEnvironment, VariablesMirrorFlags) {
    const std::string base = "rank --body " + fixture("ball3.json") + " --grid 4x4 --resolution 8";
    const json flag = json::parse(run(base + " --seed 5").out);
    const json env = json::parse(run(base, "SEPINT_SEED=5").out);
    EXPECT_EQ(flag, env);
    EXPECT_EQ(env["config"]["seed"], 5);
    const json body_env = json::parse(run("rank --grid 4x4 --resolution 8", "SEPINT_BODY=" + fixture("ball3.json")).out);
    EXPECT_EQ(body_env["body"], "ball3");
}
