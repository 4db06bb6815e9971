// Body fixtures (JSON records), sample-matrix CSV with sidecar metadata, rank reports and
// volume sample CSV.

#ifndef SEPINT_IO_HPP
#define SEPINT_IO_HPP

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepint/body.hpp"
#include "sepint/sections.hpp"
#include "sepint/separability.hpp"

namespace sepint::io {

using json = nlohmann::ordered_json;

/// Raised for unreadable or malformed input files and records.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that reads back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

/// Exact rational from "p/q", an integer or a finite decimal.
inline Rational parse_rational(const std::string& text) {
    MultiPoly p(1);
    try {
        p = parse_poly(text, 1);
    } catch (const std::exception& e) {
        throw FormatError("bad rational '" + text + "': " + e.what());
    }
    if (!p.is_constant()) throw FormatError("bad rational '" + text + "'");
    return p.coefficient(Exponent{0});
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
    if (!out) throw FormatError("write failed for " + path);
}

struct BodyFixture {
    std::string id;
    json record;
    Body body;
};

namespace detail {

inline const json& field(const json& rec, const char* key) {
    if (!rec.contains(key)) throw FormatError(std::string("body record: missing field '") + key + "'");
    return rec.at(key);
}

inline int dim_field(const json& rec) {
    const json& d = field(rec, "dim");
    if (!d.is_number_integer()) throw FormatError("body record: 'dim' must be an integer");
    return d.get<int>();
}

inline std::string text_field(const json& rec, const char* key) {
    const json& v = field(rec, key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw FormatError(std::string("body record: '") + key + "' must be a string or number");
}

inline double decimal_field(const json& rec, const char* key) {
    const std::string s = text_field(rec, key);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw FormatError(std::string("body record: '") + key + "' is not a decimal");
    return v;
}

inline MultiPoly poly_field(const json& rec, const char* key, int dim) {
    try {
        return parse_poly(text_field(rec, key), static_cast<std::size_t>(dim));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError(std::string("body record: bad polynomial in '") + key + "': " + e.what());
    }
}

}  // namespace detail

/// Builds a body from a record {"id", "model", ...}. Models and their fields:
///   ball: dim, radius            ellipsoid: matrix (rows of rational strings)
///   polyroot: dim, h             perturbation: dim, eps, phi
/// Model validation failures (e.g. h not positive) surface as std::invalid_argument.
inline BodyFixture parse_body_fixture(const json& rec) {
    if (!rec.is_object()) throw FormatError("body record must be a JSON object");
    const std::string model = detail::text_field(rec, "model");
    const std::string id = rec.contains("id") ? detail::text_field(rec, "id") : model;
    if (model == "ball") {
        return {id, rec, Body::ball(detail::dim_field(rec), rec.contains("radius") ? detail::decimal_field(rec, "radius") : 1.0)};
    }
    if (model == "ellipsoid") {
        const json& m = detail::field(rec, "matrix");
        if (!m.is_array()) throw FormatError("body record: 'matrix' must be an array of rows");
        RationalMatrix q;
        for (const json& row : m) {
            if (!row.is_array()) throw FormatError("body record: matrix row must be an array");
            std::vector<Rational> r;
            for (const json& entry : row) {
                if (entry.is_string())
                    r.push_back(parse_rational(entry.get<std::string>()));
                else if (entry.is_number_integer())
                    r.push_back(parse_rational(entry.dump()));
                else
                    throw FormatError("body record: matrix entries must be rational strings or integers");
            }
            q.push_back(std::move(r));
        }
        return {id, rec, Body::ellipsoid(q)};
    }
    if (model == "polyroot") {
        const int dim = detail::dim_field(rec);
        return {id, rec, Body::poly_root(detail::poly_field(rec, "h", dim))};
    }
    if (model == "perturbation") {
        const int dim = detail::dim_field(rec);
        return {id, rec, Body::radial_perturbation(dim, detail::decimal_field(rec, "eps"), detail::poly_field(rec, "phi", dim))};
    }
    throw FormatError("body record: unknown model '" + model + "'");
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(what + ": " + e.what());
    }
}

inline BodyFixture load_body_fixture(const std::string& path) { return parse_body_fixture(parse_json_text(read_file(path), path)); }

/// `arg` is either an inline JSON record (starting with '{') or a path to one.
inline BodyFixture body_from_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return parse_body_fixture(parse_json_text(arg, "inline body"));
    return load_body_fixture(arg);
}

/// Record for a body, usable with parse_body_fixture.
inline json body_record(const Body& b, const std::string& id) {
    json rec;
    rec["id"] = id;
    rec["model"] = b.kind();
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Ball>) {
                rec["dim"] = b.dim();
                rec["radius"] = format_double(m.radius);
            } else if constexpr (std::is_same_v<T, Ellipsoid>) {
                json rows = json::array();
                for (const auto& row : m.q_exact) {
                    json r = json::array();
                    for (const auto& c : row) r.push_back(to_string(c));
                    rows.push_back(r);
                }
                rec["matrix"] = rows;
            } else if constexpr (std::is_same_v<T, PolyRoot>) {
                rec["dim"] = b.dim();
                rec["h"] = to_string(m.h);
            } else {
                rec["dim"] = b.dim();
                rec["eps"] = format_double(m.eps);
                rec["phi"] = to_string(m.phi);
            }
        },
        b.model());
    return rec;
}

/// 64-bit FNV-1a over the IEEE bytes of the frame vectors.
inline std::uint64_t frame_hash(const std::vector<Frame>& frames) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const Frame& f : frames)
        for (double v : f.data()) {
            unsigned char bytes[sizeof(double)];
            std::memcpy(bytes, &v, sizeof v);
            for (unsigned char c : bytes) {
                h ^= c;
                h *= 0x100000001b3ULL;
            }
        }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Rows of comma-separated values; '#' lines and blank lines are skipped.
inline std::string matrix_csv(const std::vector<std::vector<double>>& values) {
    std::string out;
    for (const auto& row : values) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ',';
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

inline std::vector<std::vector<double>> parse_matrix_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || cell.find_first_not_of(" \t", used) != std::string::npos)
                throw FormatError("matrix csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            row.push_back(v);
        }
        if (!line.empty() && line.back() == ',') throw FormatError("matrix csv line " + std::to_string(lineno) + ": trailing comma");
        if (!rows.empty() && row.size() != rows.front().size())
            throw FormatError("matrix csv line " + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("matrix csv: no data rows");
    return rows;
}

inline std::vector<std::vector<double>> load_matrix_csv(const std::string& path) { return parse_matrix_csv(read_file(path)); }

/// Sidecar path: the CSV path with its extension replaced by ".json".
inline std::string sidecar_path(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of('/');
    const auto dot = csv_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return csv_path.substr(0, dot) + ".json";
    return csv_path + ".json";
}

inline json sep_matrix_metadata(const SepMatrix& m, double tol, const json& config) {
    json meta;
    meta["body"] = m.body_id;
    meta["seed"] = m.seed;
    meta["n_h"] = m.rows();
    meta["n_t"] = m.cols();
    json grid = json::array();
    for (double t : m.t_grid) grid.push_back(t);
    meta["t_grid"] = grid;
    meta["frame_hash"] = hex64(frame_hash(m.frames));
    meta["resolution"] = m.quad_resolution;
    meta["tol"] = tol;
    meta["config"] = config;
    return meta;
}

/// Writes values to `csv_path` and metadata to its sidecar.
inline void save_sep_matrix(const SepMatrix& m, const std::string& csv_path, double tol, const json& config) {
    write_file(csv_path, matrix_csv(m.values));
    write_file(sidecar_path(csv_path), sep_matrix_metadata(m, tol, config).dump(2) + "\n");
}

inline json rank_report_json(const RankReport& r, const json& config) {
    json out;
    out["config"] = config;
    out["rank"] = r.rank;
    out["tol"] = r.tol;
    out["n_h"] = r.n_h;
    out["n_t"] = r.n_t;
    json sv = json::array();
    for (double s : r.singular_values) sv.push_back(s);
    out["singular_values"] = sv;
    return out;
}

struct VolumeSample {
    double t = 0.0;
    double v = 0.0;
};

inline std::string volume_csv(const std::vector<VolumeSample>& samples, const std::string& body_id, const Frame& frame, int resolution,
                              std::uint64_t seed, const json& config) {
    std::string out;
    out += "# body=" + body_id + "\n";
    out += "# frame_hash=" + hex64(frame_hash({frame})) + "\n";
    out += "# resolution=" + std::to_string(resolution) + "\n";
    out += "# seed=" + std::to_string(seed) + "\n";
    out += "# config=" + config.dump() + "\n";
    out += "t,V\n";
    for (const auto& s : samples) out += format_double(s.t) + "," + format_double(s.v) + "\n";
    return out;
}

}  // namespace sepint::io

#endif  // SEPINT_IO_HPP
