// Origin-symmetric convex body models, each given by its Minkowski functional.

#ifndef SEPINT_BODY_HPP
#define SEPINT_BODY_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sepint/polyalg.hpp"
#include "sepint/quadrature.hpp"

namespace sepint {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Double-precision copy of a MultiPoly for fast evaluation.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MultiPoly& p) : nvars_(p.nvars()) {
        for (const auto& [e, c] : p.terms()) {
            coefs_.push_back(c.get_d());
            exps_.insert(exps_.end(), e.begin(), e.end());
            for (auto k : e) max_exp_ = std::max<std::uint32_t>(max_exp_, k);
        }
    }

    double operator()(const double* x) const {
        // powers[i * (max+1) + k] = x_i^k
        thread_local std::vector<double> powers;
        const std::size_t stride = max_exp_ + 1;
        powers.resize(nvars_ * stride);
        for (std::size_t i = 0; i < nvars_; ++i) {
            double v = 1.0;
            for (std::size_t k = 0; k < stride; ++k) {
                powers[i * stride + k] = v;
                v *= x[i];
            }
        }
        double sum = 0.0;
        for (std::size_t t = 0; t < coefs_.size(); ++t) {
            double term = coefs_[t];
            const std::uint32_t* e = exps_.data() + t * nvars_;
            for (std::size_t i = 0; i < nvars_; ++i) term *= powers[i * stride + e[i]];
            sum += term;
        }
        return sum;
    }

private:
    std::size_t nvars_ = 0;
    std::uint32_t max_exp_ = 0;
    std::vector<double> coefs_;
    std::vector<std::uint32_t> exps_;
};

struct Ball {
    double radius = 1.0;
};

/// {x : x^T Q x <= 1}
struct Ellipsoid {
    RationalMatrix q_exact;
    Eigen::MatrixXd q;
};

/// {x : h(x) <= 1}, h homogeneous of degree 2m and positive away from the origin.
struct PolyRoot {
    MultiPoly h;
    CompiledPoly h_eval;
    int two_m = 2;
};

/// Radial function rho(theta) = base_radius + eps * phi(theta) on the unit sphere.
struct RadialPerturbation {
    double eps = 0.0;
    MultiPoly phi;
    CompiledPoly phi_eval;
};

class Body {
public:
    using Model = std::variant<Ball, Ellipsoid, PolyRoot, RadialPerturbation>;

    static Body ball(int dim, double radius) {
        if (dim < 2) throw std::invalid_argument("ball: dimension must be at least 2");
        if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball: radius must be positive");
        return Body(dim, Ball{radius});
    }

    static Body ellipsoid(const RationalMatrix& q) {
        const auto n = q.size();
        if (n < 2) throw std::invalid_argument("ellipsoid: dimension must be at least 2");
        Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (q[i].size() != n) throw std::invalid_argument("ellipsoid: matrix must be square");
            for (std::size_t j = 0; j < n; ++j) {
                if (q[i][j] != q[j][i]) throw std::invalid_argument("ellipsoid: matrix must be symmetric");
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q[i][j].get_d();
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() != Eigen::Success) throw std::invalid_argument("ellipsoid: matrix must be positive definite");
        return Body(static_cast<int>(n), Ellipsoid{q, m});
    }

    static Body diagonal_ellipsoid(const std::vector<Rational>& diag) {
        RationalMatrix q(diag.size(), std::vector<Rational>(diag.size(), Rational(0)));
        for (std::size_t i = 0; i < diag.size(); ++i) q[i][i] = diag[i];
        return ellipsoid(q);
    }

    static Body poly_root(const MultiPoly& h) {
        if (h.nvars() < 2) throw std::invalid_argument("poly_root: dimension must be at least 2");
        if (h.is_zero() || !h.is_homogeneous()) throw std::invalid_argument("poly_root: h must be homogeneous");
        const int deg = h.total_degree();
        if (deg < 2 || deg % 2 != 0) throw std::invalid_argument("poly_root: h must have even positive degree");
        Body b(static_cast<int>(h.nvars()), PolyRoot{h, CompiledPoly(h), deg});
        b.check_positive_on_sphere();
        return b;
    }

    static Body radial_perturbation(int dim, double eps, const MultiPoly& phi) {
        if (dim < 2) throw std::invalid_argument("radial_perturbation: dimension must be at least 2");
        if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("radial_perturbation: eps must be non-negative");
        if (phi.nvars() != static_cast<std::size_t>(dim)) throw std::invalid_argument("radial_perturbation: phi dimension mismatch");
        for (const auto& [e, c] : phi.terms())
            if (degree_of(e) % 2 != 0) throw std::invalid_argument("radial_perturbation: phi must be even");
        Body b(dim, RadialPerturbation{eps, phi, CompiledPoly(phi)});
        b.check_positive_on_sphere();
        return b;
    }

    int dim() const { return dim_; }
    const Model& model() const { return model_; }
    double inradius() const { return inradius_; }

    std::string kind() const {
        return std::visit(
            [](const auto& m) -> std::string {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Ball>) return "ball";
                if constexpr (std::is_same_v<T, Ellipsoid>) return "ellipsoid";
                if constexpr (std::is_same_v<T, PolyRoot>) return "polyroot";
                if constexpr (std::is_same_v<T, RadialPerturbation>) return "perturbation";
            },
            model_);
    }

    /// ||x||_K = min{a >= 0 : x in aK}.
    double minkowski(std::span<const double> x) const {
        if (x.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("minkowski: point has wrong dimension");
        return minkowski_unchecked(x.data());
    }

    double minkowski_unchecked(const double* x) const {
        return std::visit([&](const auto& m) { return eval(m, x); }, model_);
    }

    /// rho_K(theta) = 1 / ||theta||_K for a unit vector theta.
    double radial(std::span<const double> theta) const {
        double n2 = 0.0;
        for (double v : theta) n2 += v * v;
        if (std::abs(std::sqrt(n2) - 1.0) > 1e-12) throw std::invalid_argument("radial: direction must be a unit vector");
        return 1.0 / minkowski(theta);
    }

private:
    Body(int dim, Model m) : dim_(dim), model_(std::move(m)) { inradius_ = compute_inradius(); }

    double norm2(const double* x) const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += x[i] * x[i];
        return std::sqrt(s);
    }

    double eval(const Ball& b, const double* x) const { return norm2(x) / b.radius; }

    double eval(const Ellipsoid& e, const double* x) const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
            double row = 0.0;
            for (int j = 0; j < dim_; ++j) row += e.q(i, j) * x[j];
            s += x[i] * row;
        }
        return std::sqrt(std::max(s, 0.0));
    }

    double eval(const PolyRoot& p, const double* x) const {
        const double v = p.h_eval(x);
        if (v <= 0.0) return 0.0;
        return std::pow(v, 1.0 / p.two_m);
    }

    double eval(const RadialPerturbation& r, const double* x) const {
        const double n = norm2(x);
        if (n == 0.0) return 0.0;
        thread_local std::vector<double> theta;
        theta.resize(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) theta[static_cast<std::size_t>(i)] = x[i] / n;
        const double rho = 1.0 + r.eps * r.phi_eval(theta.data());
        if (!(rho > 0.0)) throw std::domain_error("radial perturbation: radial function is not positive");
        return n / rho;
    }

    // Deterministic sphere sample, then a shrinking pattern search around the best samples.
    double compute_inradius() const {
        if (const auto* b = std::get_if<Ball>(&model_)) return b->radius;
        if (const auto* e = std::get_if<Ellipsoid>(&model_)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e->q);
            return 1.0 / std::sqrt(es.eigenvalues().maxCoeff());
        }
        int res = 48;
        while (res > 4 && std::pow(res, dim_ - 2) * 2.0 * res > 200000.0) res /= 2;
        const SphereRule rule = sphere_rule(dim_, res);
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(rule.size());
        for (std::size_t i = 0; i < rule.size(); ++i) scored.emplace_back(1.0 / minkowski_unchecked(rule.point(i)), i);
        // axis directions are always candidates
        std::vector<std::vector<double>> starts;
        const std::size_t keep = std::min<std::size_t>(8, scored.size());
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end());
        for (std::size_t i = 0; i < keep; ++i) starts.emplace_back(rule.point(scored[i].second), rule.point(scored[i].second) + dim_);
        for (int a = 0; a < dim_; ++a) {
            std::vector<double> e(static_cast<std::size_t>(dim_), 0.0);
            e[static_cast<std::size_t>(a)] = 1.0;
            starts.push_back(e);
        }
        double best = std::numeric_limits<double>::infinity();
        for (auto x : starts) {
            double val = 1.0 / minkowski_unchecked(x.data());
            double step = 0.5 / res;
            std::vector<double> y(x.size());
            while (step > 1e-9) {
                bool improved = false;
                for (int a = 0; a < dim_ && !improved; ++a) {
                    for (double sgn_ : {1.0, -1.0}) {
                        y = x;
                        y[static_cast<std::size_t>(a)] += sgn_ * step;
                        const double n = norm2(y.data());
                        for (double& v : y) v /= n;
                        const double cand = 1.0 / minkowski_unchecked(y.data());
                        if (cand < val) {
                            val = cand;
                            x = y;
                            improved = true;
                            break;
                        }
                    }
                }
                if (!improved) step *= 0.5;
            }
            best = std::min(best, val);
        }
        return best;
    }

    void check_positive_on_sphere() const {
        const SphereRule rule = sphere_rule(dim_, 8);
        for (std::size_t i = 0; i < rule.size(); ++i)
            if (!(minkowski_unchecked(rule.point(i)) > 0.0)) throw std::invalid_argument("body: Minkowski functional must be positive away from the origin");
    }

    int dim_;
    Model model_;
    double inradius_ = 0.0;
};

inline double minkowski(const Body& b, std::span<const double> x) { return b.minkowski(x); }
inline double radial(const Body& b, std::span<const double> theta) { return b.radial(theta); }
inline double inradius(const Body& b) { return b.inradius(); }

/// Samples pairs of boundary points and checks ||(x+y)/2|| <= 1 + 1e-10. False on the first violation.
inline bool convexity_probe(const Body& b, int n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto d = static_cast<std::size_t>(b.dim());
    std::vector<double> x(d), y(d), mid(d);
    auto draw_boundary = [&](std::vector<double>& v) {
        double nk = 0.0;
        while (!(nk > 0.0)) {
            for (double& c : v) c = normal(rng);
            nk = b.minkowski_unchecked(v.data());
        }
        for (double& c : v) c /= nk;
    };
    for (int s = 0; s < n_samples; ++s) {
        draw_boundary(x);
        draw_boundary(y);
        for (std::size_t i = 0; i < d; ++i) mid[i] = 0.5 * (x[i] + y[i]);
        if (b.minkowski_unchecked(mid.data()) > 1.0 + 1e-10) return false;
    }
    return true;
}

}  // namespace sepint

#endif  // SEPINT_BODY_HPP
