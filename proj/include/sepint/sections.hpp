// Parallel section functions A_{K,Xi}(t) and isotropic volume functions V_{K,H}(t).
//
// Slices are integrated in polar form around their center c = sum t_i xi_i:
// A = 1/(d-k) * int_{S^(d-k-1)} rho(theta)^(d-k), where rho(theta) solves
// ||c + rho theta||_K = 1 by bisection. V is the polar integral of A over the
// k-ball of radius t in H.

#ifndef SEPINT_SECTIONS_HPP
#define SEPINT_SECTIONS_HPP

#include <boost/math/special_functions/beta.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "sepint/body.hpp"
#include "sepint/quadrature.hpp"

namespace sepint {

struct QuadratureOptions {
    /// Gauss-Legendre nodes per radial / polar direction; 2x that in each azimuth.
    int resolution = 32;
    /// Absolute bracket width at which radial bisection stops.
    double root_tol = 1e-12;
};

/// k orthonormal vectors in R^d, stored row-major.
class Frame {
public:
    Frame(int dim, std::vector<std::vector<double>> rows) : dim_(dim) {
        if (rows.empty() || static_cast<int>(rows.size()) >= dim) throw std::invalid_argument("frame: need 1 <= k < d vectors");
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("frame: vector has wrong dimension");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        k_ = static_cast<int>(rows.size());
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) {
                double dot = 0.0;
                for (int a = 0; a < dim_; ++a) dot += row(i)[a] * row(j)[a];
                if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-12) throw std::invalid_argument("frame: vectors are not orthonormal");
            }
    }

    /// The frame {e_axis}.
    static Frame axis(int dim, int axis) {
        std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
        v.at(static_cast<std::size_t>(axis)) = 1.0;
        return Frame(dim, {v});
    }

    int dim() const { return dim_; }
    int k() const { return k_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_); }
    const std::vector<double>& data() const { return data_; }

    /// Orthonormal basis of the orthogonal complement (d - k rows), by Gram-Schmidt against e_1..e_d.
    std::vector<std::vector<double>> complement() const {
        std::vector<std::vector<double>> basis;
        for (int i = 0; i < k_; ++i) basis.emplace_back(row(i), row(i) + dim_);
        std::vector<std::vector<double>> out;
        for (int axis = 0; axis < dim_ && static_cast<int>(out.size()) < dim_ - k_; ++axis) {
            std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
            v[static_cast<std::size_t>(axis)] = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& b : basis) {
                    double dot = 0.0;
                    for (int a = 0; a < dim_; ++a) dot += v[static_cast<std::size_t>(a)] * b[static_cast<std::size_t>(a)];
                    for (int a = 0; a < dim_; ++a) v[static_cast<std::size_t>(a)] -= dot * b[static_cast<std::size_t>(a)];
                }
            double n = 0.0;
            for (double c : v) n += c * c;
            n = std::sqrt(n);
            if (n < 1e-6) continue;
            for (double& c : v) c /= n;
            basis.push_back(v);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    int dim_;
    int k_ = 0;
    std::vector<double> data_;
};

namespace detail {

/// Integrates (d-k)-volumes of slices parallel to the complement of a fixed frame.
class SliceIntegrator {
public:
    SliceIntegrator(const Body& body, const Frame& frame, const QuadratureOptions& opts)
        : body_(body), frame_(frame), opts_(opts) {
        if (frame.dim() != body.dim()) throw std::invalid_argument("frame dimension differs from body dimension");
        const auto comp = frame.complement();
        codim_ = body.dim() - frame.k();
        rule_ = sphere_rule(codim_, opts.resolution);
        // slice directions in ambient coordinates
        const auto d = static_cast<std::size_t>(body.dim());
        dirs_.assign(rule_.size() * d, 0.0);
        for (std::size_t p = 0; p < rule_.size(); ++p) {
            const double* local = rule_.point(p);
            for (int a = 0; a < codim_; ++a)
                for (std::size_t i = 0; i < d; ++i) dirs_[p * d + i] += local[a] * comp[static_cast<std::size_t>(a)][i];
        }
        values_.resize(rule_.size());
        point_.resize(d);
        center_.resize(d);
    }

    /// Slice volume through center sum_i t_i xi_i.
    double area(std::span<const double> t) {
        const auto d = static_cast<std::size_t>(body_.dim());
        std::fill(center_.begin(), center_.end(), 0.0);
        for (int i = 0; i < frame_.k(); ++i)
            for (std::size_t a = 0; a < d; ++a) center_[a] += t[static_cast<std::size_t>(i)] * frame_.row(i)[a];
        const double c_norm = body_.minkowski_unchecked(center_.data());
        if (c_norm >= 1.0) return 0.0;
        for (std::size_t p = 0; p < rule_.size(); ++p) {
            const double rho = radial_root(dirs_.data() + p * d, c_norm);
            values_[p] = rule_.weights[p] * std::pow(rho, codim_);
        }
        return pairwise_sum(values_) / codim_;
    }

private:
    double radial_root(const double* w, double c_norm) {
        const auto d = static_cast<std::size_t>(body_.dim());
        // ||c + rho w|| >= rho ||w|| - ||c||, so this bracket always contains the exit point
        double lo = 0.0;
        double hi = (1.0 + c_norm) / body_.minkowski_unchecked(w);
        while (hi - lo > opts_.root_tol) {
            const double mid = 0.5 * (lo + hi);
            for (std::size_t a = 0; a < d; ++a) point_[a] = center_[a] + mid * w[a];
            if (body_.minkowski_unchecked(point_.data()) < 1.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    const Body& body_;
    const Frame& frame_;
    QuadratureOptions opts_;
    int codim_ = 0;
    SphereRule rule_;
    std::vector<double> dirs_;
    std::vector<double> values_;
    std::vector<double> point_;
    std::vector<double> center_;
};

}  // namespace detail

/// A_{K,Xi}(t): (d-k)-volume of K cut by the complement of Xi shifted by sum t_i xi_i.
inline double parallel_section(const Body& b, const Frame& xi, std::span<const double> t, const QuadratureOptions& opts = {}) {
    if (static_cast<int>(t.size()) != xi.k()) throw std::invalid_argument("parallel_section: t must have k entries");
    detail::SliceIntegrator integrator(b, xi, opts);
    return integrator.area(t);
}

/// V_{K,H}(t) = int_{B^k(t)} A_{K,Xi}(u) du in polar form. The radial variable is
/// r = t s (2 - s) with Gauss-Legendre in s, which clusters nodes toward r = t.
inline double isotropic_volume(const Body& b, const Frame& h, double t, const QuadratureOptions& opts = {}) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("isotropic_volume: t must be non-negative");
    if (t == 0.0) return 0.0;
    detail::SliceIntegrator integrator(b, h, opts);
    const int k = h.k();
    const SphereRule dirs = sphere_rule(k, opts.resolution);
    const GaussRule gl = gauss_legendre(opts.resolution);
    std::vector<double> contrib;
    contrib.reserve(dirs.size() * gl.nodes.size());
    std::vector<double> u(static_cast<std::size_t>(k));
    for (std::size_t p = 0; p < dirs.size(); ++p) {
        const double* theta = dirs.point(p);
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double s = 0.5 * (gl.nodes[q] + 1.0);
            const double r = t * s * (2.0 - s);
            const double jac = 2.0 * t * (1.0 - s) * 0.5 * gl.weights[q];
            for (int i = 0; i < k; ++i) u[static_cast<std::size_t>(i)] = r * theta[i];
            contrib.push_back(dirs.weights[p] * jac * std::pow(r, k - 1) * integrator.area(u));
        }
    }
    return pairwise_sum(contrib);
}

/// Closed-form V for the ball of radius R: omega_{d-k} k omega_k R^d int_0^{t/R} r^{k-1} (1-r^2)^{(d-k)/2} dr.
/// t beyond R clamps to the ball volume.
inline double ball_volume_oracle(int d, int k, double radius, double t) {
    if (d < 2 || k < 1 || k >= d) throw std::invalid_argument("ball_volume_oracle: need 1 <= k < d");
    if (!(radius > 0.0) || !(t >= 0.0)) throw std::invalid_argument("ball_volume_oracle: negative input");
    const double a = std::min(t / radius, 1.0);
    const double alpha = k / 2.0;
    const double beta = (d - k) / 2.0 + 1.0;
    // int_0^a r^{k-1}(1-r^2)^{n/2} dr = B(alpha, beta) I_{a^2}(alpha, beta) / 2
    const double integral = 0.5 * boost::math::beta(alpha, beta) * boost::math::ibeta(alpha, beta, a * a);
    return ball_volume(d - k) * k * ball_volume(k) * std::pow(radius, d) * integral;
}

namespace detail {
inline void ellipsoid_geometry(const Eigen::MatrixXd& q, std::span<const double> xi, double& support, double& central) {
    const auto n = q.rows();
    if (q.cols() != n || static_cast<Eigen::Index>(xi.size()) != n) throw std::invalid_argument("ellipsoid oracle: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(q);
    if (llt.info() != Eigen::Success) throw std::invalid_argument("ellipsoid oracle: Q must be positive definite");
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = xi[static_cast<std::size_t>(i)];
    if (std::abs(x.norm() - 1.0) > 1e-12) throw std::invalid_argument("ellipsoid oracle: xi must be a unit vector");
    support = std::sqrt(x.dot(llt.solve(x)));
    const Eigen::MatrixXd l = llt.matrixL();
    const double det_sqrt = l.diagonal().prod();
    central = ball_volume(static_cast<int>(n) - 1) / (support * det_sqrt);
}
}  // namespace detail

/// Exact hyperplane slice volume of {x^T Q x <= 1} at signed distance t along xi:
/// A(0) (1 - t^2/h^2)^{(d-1)/2} with h^2 = xi^T Q^{-1} xi and A(0) = omega_{d-1} / (h sqrt(det Q)).
inline double ellipsoid_section_oracle(const Eigen::MatrixXd& q, std::span<const double> xi, double t) {
    double h = 0.0, a0 = 0.0;
    detail::ellipsoid_geometry(q, xi, h, a0);
    if (std::abs(t) >= h) return 0.0;
    return a0 * std::pow(1.0 - t * t / (h * h), (q.rows() - 1) / 2.0);
}

/// Even derivatives A^{(2i)}(0), i < count, of the ellipsoid's hyperplane section function.
inline std::vector<double> ellipsoid_section_laplacians(const Eigen::MatrixXd& q, std::span<const double> xi, int count) {
    double h = 0.0, a0 = 0.0;
    detail::ellipsoid_geometry(q, xi, h, a0);
    const double half = (q.rows() - 1) / 2.0;
    std::vector<double> out;
    double binom = 1.0;  // binom(half, i)
    double fact = 1.0;   // (2i)!
    for (int i = 0; i < count; ++i) {
        if (i > 0) {
            binom *= (half - (i - 1)) / i;
            fact *= (2.0 * i - 1.0) * (2.0 * i);
        }
        out.push_back(a0 * fact * binom * std::pow(-1.0 / (h * h), i));
    }
    return out;
}

/// Coefficients c_i of t^{2i+k} in V(t) = omega_k sum_i Lap^i A(0) t^{2i+k} / (2^i i! prod_{j<=i}(2j+k)).
struct ExpansionCoeffs {
    int k = 1;
    std::vector<double> coeffs;

    double evaluate(double t) const {
        double s = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * std::pow(t, 2.0 * static_cast<double>(i) + k);
        return s;
    }

    /// n-th derivative at 0 of the truncated series.
    double derivative_at_zero(int n) const {
        if (n < k || (n - k) % 2 != 0) return 0.0;
        const auto i = static_cast<std::size_t>((n - k) / 2);
        if (i >= coeffs.size()) return 0.0;
        return coeffs[i] * std::tgamma(n + 1.0);
    }
};

inline ExpansionCoeffs ovall_coefficients(int k, std::span<const double> lap_values) {
    if (k < 1) throw std::invalid_argument("ovall_coefficients: k must be positive");
    ExpansionCoeffs out;
    out.k = k;
    const double omega = ball_volume(k);
    double denom = 1.0;
    for (std::size_t i = 0; i < lap_values.size(); ++i) {
        if (i > 0) denom *= 2.0 * static_cast<double>(i) * (2.0 * static_cast<double>(i) + k);
        out.coeffs.push_back(omega * lap_values[i] / denom);
    }
    return out;
}

/// Forward-difference estimate of V^{(order)}(0) from V(0), V(h), ..., V(order h).
inline double derivative_probe(const Body& b, const Frame& h, int order, double h_step, const QuadratureOptions& opts = {}) {
    if (order < 0 || order > 5) throw std::invalid_argument("derivative_probe: order must lie in 0..5");
    if (order == 0) return 0.0;
    if (!(h_step > 0.0)) throw std::invalid_argument("derivative_probe: step must be positive");
    if (order * h_step > 0.9 * b.inradius()) throw std::invalid_argument("derivative_probe: step too large for the locality radius");
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) binom = binom * (order - j + 1) / j;
        const double v = j == 0 ? 0.0 : isotropic_volume(b, h, j * h_step, opts);
        acc += ((order - j) % 2 == 0 ? 1.0 : -1.0) * binom * v;
    }
    return acc / std::pow(h_step, order);
}

}  // namespace sepint

#endif  // SEPINT_SECTIONS_HPP
