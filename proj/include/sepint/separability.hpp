// Sampled isotropic volume matrices M[i][j] = V_{K,H_i}(t_j) and their numerical rank.
// A body whose volume function is a finite sum of separated terms gives a matrix whose
// rank stays bounded as the grid grows.

#ifndef SEPINT_SEPARABILITY_HPP
#define SEPINT_SEPARABILITY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sepint/body.hpp"
#include "sepint/sections.hpp"

namespace sepint {

/// n orthonormal k-frames in R^d from seeded standard-normal d x k draws (Gram-Schmidt, two passes).
inline std::vector<Frame> random_subspaces(int d, int k, int n, std::uint64_t seed) {
    if (k < 1 || k >= d) throw std::invalid_argument("random_subspaces: need 1 <= k < d");
    if (n < 1) throw std::invalid_argument("random_subspaces: need n >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto dd = static_cast<std::size_t>(d);
    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(n));
    constexpr int max_retries = 64;
    for (int f = 0; f < n; ++f) {
        bool ok = false;
        for (int attempt = 0; attempt < max_retries && !ok; ++attempt) {
            std::vector<std::vector<double>> rows;
            for (int c = 0; c < k; ++c) {
                std::vector<double> v(dd);
                for (double& x : v) x = normal(rng);
                rows.push_back(std::move(v));
            }
            ok = true;
            for (std::size_t c = 0; c < rows.size() && ok; ++c) {
                auto& v = rows[c];
                for (int pass = 0; pass < 2; ++pass)
                    for (std::size_t b = 0; b < c; ++b) {
                        double dot = 0.0;
                        for (std::size_t a = 0; a < dd; ++a) dot += v[a] * rows[b][a];
                        for (std::size_t a = 0; a < dd; ++a) v[a] -= dot * rows[b][a];
                    }
                double norm = 0.0;
                for (double x : v) norm += x * x;
                norm = std::sqrt(norm);
                if (norm < 1e-8) {
                    ok = false;
                    break;
                }
                for (double& x : v) x /= norm;
            }
            if (ok) frames.emplace_back(d, std::move(rows));
        }
        if (!ok) throw std::runtime_error("random_subspaces: repeated degenerate draws");
    }
    return frames;
}

struct SepMatrix {
    std::vector<std::vector<double>> values;
    std::vector<Frame> frames;
    std::vector<double> t_grid;
    std::string body_id;
    std::uint64_t seed = 0;
    int quad_resolution = 0;

    std::size_t rows() const { return values.size(); }
    std::size_t cols() const { return values.empty() ? 0 : values.front().size(); }
};

/// n points spaced evenly on [0.1, 0.9] * r.
inline std::vector<double> locality_grid(double inradius, int n) {
    if (n < 2) throw std::invalid_argument("locality_grid: need at least two points");
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = inradius * (0.1 + 0.8 * j / (n - 1));
    return t;
}

/// Runs job(i) for i in [0, n) on up to `threads` workers. Each job owns its output slot.
template <class Job>
void parallel_for(std::size_t n, int threads, Job&& job) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// values[i][j] = isotropic_volume(b, H_i, t_j) over seeded random frames. Quadrature is
/// deterministic, so the matrix does not depend on `threads`.
inline SepMatrix build_sep_matrix(const Body& b, int k, int n_h, int n_t, std::uint64_t seed, const QuadratureOptions& opts = {},
                                  int threads = 1, std::string body_id = {}) {
    if (n_h < 2 || n_t < 2) throw std::invalid_argument("build_sep_matrix: grid sizes must be at least 2");
    SepMatrix m;
    m.frames = random_subspaces(b.dim(), k, n_h, seed);
    m.t_grid = locality_grid(b.inradius(), n_t);
    m.body_id = body_id.empty() ? b.kind() : std::move(body_id);
    m.seed = seed;
    m.quad_resolution = opts.resolution;
    m.values.assign(static_cast<std::size_t>(n_h), std::vector<double>(static_cast<std::size_t>(n_t), 0.0));
    const auto cols = static_cast<std::size_t>(n_t);
    parallel_for(static_cast<std::size_t>(n_h) * cols, threads, [&](std::size_t cell) {
        const std::size_t i = cell / cols;
        const std::size_t j = cell % cols;
        m.values[i][j] = isotropic_volume(b, m.frames[i], m.t_grid[j], opts);
    });
    for (const auto& row : m.values)
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!(row[j] >= 0.0) || !std::isfinite(row[j])) throw std::runtime_error("build_sep_matrix: invalid volume sample");
            if (j > 0 && row[j] < row[j - 1]) throw std::runtime_error("build_sep_matrix: volume decreased along a row");
        }
    return m;
}

struct RankReport {
    std::vector<double> singular_values;
    int rank = 0;
    std::size_t n_h = 0;
    std::size_t n_t = 0;
    double tol = 0.0;
};

/// Count of singular values with sigma_i / sigma_1 > tol.
inline RankReport numerical_rank(const std::vector<std::vector<double>>& values, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("numerical_rank: tol must lie in (0, 1)");
    if (values.empty() || values.front().empty()) throw std::invalid_argument("numerical_rank: empty matrix");
    const auto rows = static_cast<Eigen::Index>(values.size());
    const auto cols = static_cast<Eigen::Index>(values.front().size());
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = values[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != cols) throw std::invalid_argument("numerical_rank: ragged matrix");
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = row[static_cast<std::size_t>(j)];
    }
    RankReport report;
    report.n_h = values.size();
    report.n_t = values.front().size();
    report.tol = tol;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const Eigen::VectorXd s = svd.singularValues();
    report.singular_values.assign(s.data(), s.data() + s.size());
    if (s.size() == 0 || s(0) == 0.0) return report;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) / s(0) > tol) ++report.rank;
    return report;
}

inline RankReport numerical_rank(const SepMatrix& m, double tol) { return numerical_rank(m.values, tol); }

/// Ranks of square size x size sample matrices for increasing sizes.
inline std::vector<std::pair<int, int>> rank_growth_curve(const Body& b, int k, const std::vector<int>& sizes, std::uint64_t seed, double tol,
                                                          const QuadratureOptions& opts = {}, int threads = 1) {
    if (!std::is_sorted(sizes.begin(), sizes.end()) || std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
        throw std::invalid_argument("rank_growth_curve: sizes must be strictly increasing");
    std::vector<std::pair<int, int>> curve;
    for (int n : sizes) curve.emplace_back(n, numerical_rank(build_sep_matrix(b, k, n, n, seed, opts, threads), tol).rank);
    return curve;
}

/// Largest relative deviation of any row from the first row.
inline double max_row_deviation(const SepMatrix& m) {
    double worst = 0.0;
    for (const auto& row : m.values)
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double ref = m.values.front()[j];
            if (ref != 0.0) worst = std::max(worst, std::abs(row[j] - ref) / std::abs(ref));
        }
    return worst;
}

}  // namespace sepint

#endif  // SEPINT_SEPARABILITY_HPP
