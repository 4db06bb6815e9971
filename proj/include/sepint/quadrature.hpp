// Deterministic quadrature rules: Gauss-Legendre on an interval and product
// rules on spheres S^(n-1) in hyperspherical coordinates.

#ifndef SEPINT_QUADRATURE_HPP
#define SEPINT_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sepint {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

/// Surface measure of S^(n-1) in R^n.
inline double sphere_area(int n) {
    return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

/// Volume of the unit ball in R^k.
inline double ball_volume(int k) {
    return std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

/// Points on S^(n-1) (row-major, n coordinates each) with weights summing to its area.
struct SphereRule {
    int dim = 0;
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    const double* point(std::size_t i) const { return points.data() + i * static_cast<std::size_t>(dim); }
};

/// Product rule: S^0 = {+1, -1}; S^1 by 2*resolution equispaced angles (spectrally accurate
/// for periodic integrands); S^(n-1), n >= 3, as (cos t, sin t * y) with Gauss-Legendre in t
/// against sin^(n-2) t and y on S^(n-2).
inline SphereRule sphere_rule(int n, int resolution) {
    if (n < 1) throw std::invalid_argument("sphere_rule: dimension must be positive");
    if (resolution < 1) throw std::invalid_argument("sphere_rule: resolution must be positive");
    SphereRule rule;
    rule.dim = n;
    if (n == 1) {
        rule.points = {1.0, -1.0};
        rule.weights = {1.0, 1.0};
        return rule;
    }
    if (n == 2) {
        const int count = 2 * resolution;
        const double w = 2.0 * std::numbers::pi / count;
        for (int j = 0; j < count; ++j) {
            const double phi = w * j;
            rule.points.push_back(std::cos(phi));
            rule.points.push_back(std::sin(phi));
            rule.weights.push_back(w);
        }
        return rule;
    }
    const SphereRule sub = sphere_rule(n - 1, resolution);
    const GaussRule gl = gauss_legendre(resolution);
    for (std::size_t a = 0; a < gl.nodes.size(); ++a) {
        const double theta = 0.5 * std::numbers::pi * (gl.nodes[a] + 1.0);
        const double wt = 0.5 * std::numbers::pi * gl.weights[a] * std::pow(std::sin(theta), n - 2);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        for (std::size_t b = 0; b < sub.size(); ++b) {
            rule.points.push_back(c);
            const double* y = sub.point(b);
            for (int i = 0; i < n - 1; ++i) rule.points.push_back(s * y[i]);
            rule.weights.push_back(wt * sub.weights[b]);
        }
    }
    return rule;
}

/// Pairwise summation in fixed index order.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace sepint

#endif  // SEPINT_QUADRATURE_HPP
