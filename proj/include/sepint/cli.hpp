// Command-line front end: volume samples, separability rank, rank growth and verification.
//
// Exit codes: 0 success, 1 a verification check failed, 2 configuration or input error,
// 3 runtime error during computation.

#ifndef SEPINT_CLI_HPP
#define SEPINT_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "sepint/io.hpp"
#include "sepint/sections.hpp"
#include "sepint/separability.hpp"
#include "sepint/verify.hpp"

namespace sepint::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, check_failed = 1, config_error = 2, runtime_error = 3 };

/// Input problems detected before any computation starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string body;          // fixture path or inline JSON record
    std::string matrix;        // rank: CSV input instead of a body
    std::string save_matrix;   // rank: optional CSV output of the sampled matrix
    int k = 1;
    std::string grid = "10x10";
    std::vector<double> t;     // volume: sample points
    std::vector<int> sizes{8, 16, 24};
    std::uint64_t seed = 1;
    int resolution = 32;
    double tol = 1e-7;
    std::string out = "-";
    std::string suite = "all";
    std::string fixtures = verify::Options{}.fixture_dir;
    int threads = 1;
};

inline std::pair<int, int> parse_grid(const std::string& text) {
    static const std::regex re(R"(\s*(\d+)\s*[xX]\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ConfigError("--grid must look like <nH>x<nT>, got '" + text + "'");
    const int nh = std::stoi(m[1]);
    const int nt = std::stoi(m[2]);
    if (nh < 2 || nt < 2) throw ConfigError("--grid sizes must be at least 2");
    return {nh, nt};
}

/// The effective configuration echoed into every artifact; only fields the command uses.
inline json config_json(const RunConfig& c, const std::optional<io::BodyFixture>& body) {
    json j;
    j["command"] = c.command;
    if (body) j["body"] = body->record;
    if (c.command == "rank" && !c.matrix.empty()) j["matrix"] = c.matrix;
    if (c.command != "verify") j["k"] = c.k;
    if (c.command == "rank" && c.matrix.empty()) {
        const auto [nh, nt] = parse_grid(c.grid);
        j["grid"] = json{{"n_h", nh}, {"n_t", nt}};
    }
    if (c.command == "volume") j["t"] = c.t;
    if (c.command == "growth") j["sizes"] = c.sizes;
    if (c.command == "verify") {
        j["suite"] = c.suite;
        j["fixtures"] = c.fixtures;
    }
    j["seed"] = c.seed;
    j["resolution"] = c.resolution;
    if (c.command != "volume") j["tol"] = c.tol;
    j["threads"] = c.threads;
    j["out"] = c.out;
    return j;
}

inline void validate(const RunConfig& c) {
    if (c.resolution < 2) throw ConfigError("--resolution must be at least 2");
    if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("--tol must lie in (0, 1)");
    if (c.threads < 1) throw ConfigError("--threads must be at least 1");
    if (c.k < 1) throw ConfigError("--k must be positive");
}

inline io::BodyFixture load_body(const RunConfig& c) {
    if (c.body.empty()) throw ConfigError("--body is required");
    try {
        io::BodyFixture f = io::body_from_arg(c.body);
        if (c.k >= f.body.dim()) throw ConfigError("--k must be smaller than the body dimension");
        return f;
    } catch (const io::FormatError& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid body: ") + e.what());
    }
}

inline QuadratureOptions quad(const RunConfig& c) {
    QuadratureOptions q;
    q.resolution = c.resolution;
    return q;
}

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty() || c.out == "-")
        out << text;
    else
        io::write_file(c.out, text);
}

inline int cmd_volume(const RunConfig& c, std::ostream& out) {
    const io::BodyFixture f = load_body(c);
    for (double t : c.t)
        if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("--t values must be finite and non-negative");
    RunConfig eff = c;
    if (eff.t.empty()) eff.t = locality_grid(f.body.inradius(), 5);
    const Frame h = random_subspaces(f.body.dim(), c.k, 1, c.seed)[0];
    std::vector<io::VolumeSample> samples(eff.t.size());
    parallel_for(samples.size(), c.threads, [&](std::size_t i) { samples[i] = {eff.t[i], isotropic_volume(f.body, h, eff.t[i], quad(c))}; });
    emit(c, io::volume_csv(samples, f.id, h, c.resolution, c.seed, config_json(eff, f)), out);
    return ok;
}

inline int cmd_rank(const RunConfig& c, std::ostream& out) {
    if (!c.matrix.empty() && !c.body.empty()) throw ConfigError("give either --body or --matrix, not both");
    if (!c.matrix.empty()) {
        std::vector<std::vector<double>> values;
        try {
            values = io::load_matrix_csv(c.matrix);
        } catch (const io::FormatError& e) {
            throw ConfigError(e.what());
        }
        const RankReport r = numerical_rank(values, c.tol);
        emit(c, io::rank_report_json(r, config_json(c, std::nullopt)).dump(2) + "\n", out);
        return ok;
    }
    const io::BodyFixture f = load_body(c);
    const auto [nh, nt] = parse_grid(c.grid);
    const json config = config_json(c, f);
    const SepMatrix m = build_sep_matrix(f.body, c.k, nh, nt, c.seed, quad(c), c.threads, f.id);
    const RankReport r = numerical_rank(m, c.tol);
    json report = io::rank_report_json(r, config);
    report["body"] = f.id;
    report["frame_hash"] = io::hex64(io::frame_hash(m.frames));
    if (!c.save_matrix.empty()) io::save_sep_matrix(m, c.save_matrix, c.tol, config);
    emit(c, report.dump(2) + "\n", out);
    return ok;
}

inline int cmd_growth(const RunConfig& c, std::ostream& out) {
    const io::BodyFixture f = load_body(c);
    if (c.sizes.empty()) throw ConfigError("--sizes must not be empty");
    for (std::size_t i = 0; i < c.sizes.size(); ++i)
        if (c.sizes[i] < 2 || (i > 0 && c.sizes[i] <= c.sizes[i - 1])) throw ConfigError("--sizes must be strictly increasing and at least 2");
    const auto curve = rank_growth_curve(f.body, c.k, c.sizes, c.seed, c.tol, quad(c), c.threads);
    json report;
    report["config"] = config_json(c, f);
    report["body"] = f.id;
    json points = json::array();
    for (const auto& [n, r] : curve) points.push_back(json{{"size", n}, {"rank", r}});
    report["curve"] = points;
    emit(c, report.dump(2) + "\n", out);
    return ok;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end()) throw ConfigError("unknown suite '" + c.suite + "'");
    verify::Options o;
    o.seed = c.seed;
    o.quad = quad(c);
    o.tol = c.tol;
    o.threads = c.threads;
    o.fixture_dir = c.fixtures;
    const auto checks = verify::run_suite(c.suite, o);
    emit(c, verify::report_json(c.suite, checks, config_json(c, std::nullopt), verify::utc_timestamp()).dump(2) + "\n", out);
    return verify::all_passed(checks) ? ok : check_failed;
}

inline void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--seed", c.seed, "Seed for random frames and corpora")->envname("SEPINT_SEED")->capture_default_str();
    sub->add_option("--resolution", c.resolution, "Gauss-Legendre nodes per quadrature direction")->envname("SEPINT_RESOLUTION")->capture_default_str();
    sub->add_option("--out", c.out, "Output path, '-' for stdout")->envname("SEPINT_OUT")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->envname("SEPINT_THREADS")->capture_default_str();
}

inline void add_body(CLI::App* sub, RunConfig& c) {
    sub->add_option("--body", c.body, "Body fixture path or inline JSON record")->envname("SEPINT_BODY");
    sub->add_option("--k", c.k, "Subspace dimension")->envname("SEPINT_K")->capture_default_str();
}

inline void add_tol(CLI::App* sub, RunConfig& c) {
    sub->add_option("--tol", c.tol, "Relative singular value threshold")->envname("SEPINT_TOL")->capture_default_str();
}

/// Parses arguments, runs the chosen command and maps failures to exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig c;
    CLI::App app{"Section and isotropic volume functions of convex bodies, separability rank and symbolic checks", "sepint"};
    app.require_subcommand(1);

    auto* volume = app.add_subcommand("volume", "Sample V(t) for one seeded random k-subspace");
    add_body(volume, c);
    add_common(volume, c);
    volume->add_option("--t", c.t, "Comma-separated t values (default: 5 points on [0.1, 0.9] x inradius)")->delimiter(',');

    auto* rank = app.add_subcommand("rank", "Numerical rank of a sampled V(H_i, t_j) matrix or of a CSV matrix");
    add_body(rank, c);
    add_common(rank, c);
    add_tol(rank, c);
    rank->add_option("--grid", c.grid, "Grid size <nH>x<nT>")->envname("SEPINT_GRID")->capture_default_str();
    rank->add_option("--matrix", c.matrix, "CSV matrix to analyse instead of sampling a body");
    rank->add_option("--save-matrix", c.save_matrix, "Also write the sampled matrix as CSV with a JSON sidecar");

    auto* growth = app.add_subcommand("growth", "Ranks of square sample matrices for increasing sizes");
    add_body(growth, c);
    add_common(growth, c);
    add_tol(growth, c);
    growth->add_option("--sizes", c.sizes, "Comma-separated increasing grid sizes")->delimiter(',')->capture_default_str();

    auto* ver = app.add_subcommand("verify", "Run a verification suite and report each check");
    add_common(ver, c);
    add_tol(ver, c);
    ver->add_option("--suite", c.suite, "symbolic, valuation, algext, geometry, separability or all")->envname("SEPINT_SUITE")->capture_default_str();
    ver->add_option("--fixtures", c.fixtures, "Directory holding the shipped fixtures")->envname("SEPINT_FIXTURES")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }
    c.command = app.get_subcommands().front()->get_name();

    try {
        validate(c);
        if (c.command == "volume") return cmd_volume(c, out);
        if (c.command == "rank") return cmd_rank(c, out);
        if (c.command == "growth") return cmd_growth(c, out);
        return cmd_verify(c, out);
    } catch (const ConfigError& e) {
        err << "sepint: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        err << "sepint: " << e.what() << "\n";
        return runtime_error;
    }
}

}  // namespace sepint::cli

#endif  // SEPINT_CLI_HPP
