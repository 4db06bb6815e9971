// Minimal polynomials over Q(x), companion matrices and their powers.
//
// Eigenvalues are never formed. Statements about them are checked through
// characteristic polynomials and power sums, which live in Q(x) itself.

#ifndef SEPINT_ALGEXT_HPP
#define SEPINT_ALGEXT_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sepint/polyalg.hpp"
#include "sepint/valuation.hpp"

namespace sepint {

/// mu(lambda) = coeffs[0] + coeffs[1] lambda + ... + coeffs[m-1] lambda^(m-1) + lambda^m.
struct MinPolyData {
    int m = 0;
    std::vector<RationalFunc> coeffs;
    MultiPoly base_h;
    int two_m = 0;
};

using RfMatrix = std::vector<std::vector<RationalFunc>>;

/// Polynomial in lambda with coefficients in Q(x), low to high.
using RfPoly = std::vector<RationalFunc>;

struct CompanionMatrix {
    RfMatrix entries;
    std::size_t size() const { return entries.size(); }
};

/// Returns (g, c) with h = c * g^k, g having leading coefficient 1, if such g exists.
inline std::optional<std::pair<MultiPoly, Rational>> perfect_power_root(const MultiPoly& h, unsigned k) {
    if (k < 2) throw std::invalid_argument("perfect_power_root: k must be at least 2");
    if (h.is_zero() || h.is_constant()) return std::nullopt;
    const auto& [lead_exp, lead_coef] = h.leading_term();
    Exponent root_exp(h.nvars());
    for (std::size_t i = 0; i < root_exp.size(); ++i) {
        if (lead_exp[i] % k != 0) return std::nullopt;
        root_exp[i] = lead_exp[i] / k;
    }
    const MultiPoly target = h * (Rational(1) / lead_coef);
    MultiPoly g = MultiPoly::monomial(root_exp, 1);
    // k * LT(g)^(k-1)
    Exponent lead_pow(root_exp.size());
    for (std::size_t i = 0; i < lead_pow.size(); ++i) lead_pow[i] = root_exp[i] * (k - 1);
    for (int guard = 0; guard < 100000; ++guard) {
        MultiPoly r = target - pow(g, k);
        if (r.is_zero()) break;
        const auto& [re, rc] = r.leading_term();
        if (!exponent_divides(lead_pow, re)) return std::nullopt;
        Exponent te(re.size());
        for (std::size_t i = 0; i < te.size(); ++i) te[i] = re[i] - lead_pow[i];
        if (!GrlexLess{}(te, root_exp)) return std::nullopt;
        g.add_term(te, rc / k);
    }
    // confirm through repeated exact division
    MultiPoly rest = h;
    for (unsigned i = 0; i < k; ++i) {
        auto q = divide_exact(rest, g);
        if (!q) return std::nullopt;
        rest = std::move(*q);
    }
    if (!rest.is_constant()) return std::nullopt;
    return std::make_pair(g, rest.constant_term());
}

/// True iff h = c * g^k for some k >= 2 dividing deg h.
inline bool is_perfect_power(const MultiPoly& h) {
    if (h.is_zero() || h.is_constant()) return false;
    const int deg = h.total_degree();
    for (int k = 2; k <= deg; ++k) {
        if (deg % k != 0) continue;
        if (perfect_power_root(h, static_cast<unsigned>(k))) return true;
    }
    return false;
}

/// zeta = h^(-1/m) with h homogeneous of degree 2m: mu(lambda) = lambda^m - 1/h.
inline MinPolyData minpoly_of_root_body(const MultiPoly& h, int two_m) {
    if (two_m < 2 || two_m % 2 != 0) throw std::invalid_argument("minpoly_of_root_body: two_m must be even and positive");
    if (h.is_zero() || !h.is_homogeneous(two_m)) throw std::invalid_argument("minpoly_of_root_body: h must be homogeneous of degree two_m");
    if (is_perfect_power(h)) throw std::invalid_argument("minpoly_of_root_body: h is a perfect power");
    MinPolyData mp;
    mp.m = two_m / 2;
    mp.two_m = two_m;
    mp.base_h = h;
    mp.coeffs.assign(static_cast<std::size_t>(mp.m), RationalFunc::constant(h.nvars(), 0));
    mp.coeffs[0] = -RationalFunc(h).inverse();
    return mp;
}

/// Matrix of multiplication by zeta in the basis 1, zeta, ..., zeta^(m-1).
inline CompanionMatrix companion(const MinPolyData& mp) {
    if (mp.m < 1 || mp.coeffs.size() != static_cast<std::size_t>(mp.m)) throw std::invalid_argument("companion: malformed minimal polynomial");
    const std::size_t m = static_cast<std::size_t>(mp.m);
    const std::size_t n = mp.coeffs[0].nvars();
    CompanionMatrix c;
    c.entries.assign(m, std::vector<RationalFunc>(m, RationalFunc::constant(n, 0)));
    for (std::size_t i = 1; i < m; ++i) c.entries[i][i - 1] = RationalFunc::constant(n, 1);
    for (std::size_t i = 0; i < m; ++i) c.entries[i][m - 1] = -mp.coeffs[i];
    return c;
}

inline RfMatrix matmul(const RfMatrix& a, const RfMatrix& b) {
    const std::size_t n = a.size();
    const std::size_t nv = a[0][0].nvars();
    RfMatrix r(n, std::vector<RationalFunc>(n, RationalFunc::constant(nv, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

inline RfMatrix matrix_power(const RfMatrix& a, int s) {
    if (s < 1) throw std::invalid_argument("matrix_power: exponent must be positive");
    RfMatrix r = a;
    for (int i = 1; i < s; ++i) r = matmul(r, a);
    return r;
}

namespace detail {

inline RfPoly rfpoly_mul(const RfPoly& a, const RfPoly& b) {
    const std::size_t nv = a[0].nvars();
    RfPoly r(a.size() + b.size() - 1, RationalFunc::constant(nv, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

inline void rfpoly_add_into(RfPoly& acc, const RfPoly& b, int sign) {
    if (b.size() > acc.size()) acc.resize(b.size(), RationalFunc::constant(b[0].nvars(), 0));
    for (std::size_t i = 0; i < b.size(); ++i) acc[i] = sign > 0 ? acc[i] + b[i] : acc[i] - b[i];
}

// Cofactor expansion along the first row of a matrix with entries in Q(x)[lambda].
inline RfPoly cofactor_det(const std::vector<std::vector<RfPoly>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    RfPoly acc{RationalFunc::constant(a[0][0][0].nvars(), 0)};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<RfPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<RfPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        rfpoly_add_into(acc, rfpoly_mul(a[0][j], cofactor_det(minor)), j % 2 == 0 ? 1 : -1);
    }
    return acc;
}

}  // namespace detail

/// Coefficients c_0..c_{n-1} of det(lambda I - M) = c_0 + ... + c_{n-1} lambda^(n-1) + lambda^n.
inline std::vector<RationalFunc> charpoly(const RfMatrix& mat) {
    const std::size_t n = mat.size();
    if (n == 0 || n > 4) throw std::invalid_argument("charpoly: supported sizes are 1..4");
    const std::size_t nv = mat[0][0].nvars();
    std::vector<std::vector<RfPoly>> a(n, std::vector<RfPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = RfPoly{-mat[i][j]};
            if (i == j) a[i][j].push_back(RationalFunc::constant(nv, 1));
        }
    RfPoly det = detail::cofactor_det(a);
    det.resize(n + 1, RationalFunc::constant(nv, 0));
    if (!(det[n] == RationalFunc::constant(nv, 1))) throw std::logic_error("charpoly: result is not monic");
    det.pop_back();
    return det;
}

inline std::vector<RationalFunc> charpoly(const CompanionMatrix& c) { return charpoly(c.entries); }

/// Coefficients of det(lambda I - C^s).
inline std::vector<RationalFunc> charpoly_of_power(const CompanionMatrix& c, int s) {
    if (s < 1) throw std::invalid_argument("charpoly_of_power: s must be positive");
    return charpoly(matrix_power(c.entries, s));
}

/// Power sums p_1..p_smax of the roots of mu via Newton's identities.
inline std::vector<RationalFunc> power_sums(const MinPolyData& mp, int s_max) {
    const int m = mp.m;
    const std::size_t nv = mp.coeffs.at(0).nvars();
    // elementary symmetric e_j = (-1)^j mu_{m-j}
    std::vector<RationalFunc> e(static_cast<std::size_t>(m + 1), RationalFunc::constant(nv, 0));
    e[0] = RationalFunc::constant(nv, 1);
    for (int j = 1; j <= m; ++j) {
        const RationalFunc& c = mp.coeffs[static_cast<std::size_t>(m - j)];
        e[static_cast<std::size_t>(j)] = j % 2 == 0 ? c : -c;
    }
    std::vector<RationalFunc> p(static_cast<std::size_t>(s_max + 1), RationalFunc::constant(nv, 0));
    for (int s = 1; s <= s_max; ++s) {
        RationalFunc acc = RationalFunc::constant(nv, 0);
        for (int j = 1; j <= std::min(s - 1, m); ++j) {
            RationalFunc term = e[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(s - j)];
            acc = (j % 2 == 1) ? acc + term : acc - term;
        }
        if (s <= m) {
            RationalFunc term = e[static_cast<std::size_t>(s)] * Rational(s);
            acc = (s % 2 == 1) ? acc + term : acc - term;
        }
        p[static_cast<std::size_t>(s)] = acc;
    }
    p.erase(p.begin());
    return p;
}

/// The coefficients (-1)^j e_j(lambda_1^s, ..., lambda_m^s), recovered from the power sums
/// p_s, p_2s, ..., p_ms of mu's roots alone. Index j holds the coefficient of lambda^(m-j).
inline std::vector<RationalFunc> viete_coefficients_of_power(const MinPolyData& mp, int s) {
    const int m = mp.m;
    const std::size_t nv = mp.coeffs.at(0).nvars();
    const auto p = power_sums(mp, m * s);
    auto P = [&](int t) { return p[static_cast<std::size_t>(t * s - 1)]; };
    std::vector<RationalFunc> e(static_cast<std::size_t>(m + 1), RationalFunc::constant(nv, 0));
    e[0] = RationalFunc::constant(nv, 1);
    for (int j = 1; j <= m; ++j) {
        RationalFunc acc = RationalFunc::constant(nv, 0);
        for (int i = 1; i <= j; ++i) {
            RationalFunc term = e[static_cast<std::size_t>(j - i)] * P(i);
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        e[static_cast<std::size_t>(j)] = acc * (Rational(1) / j);
    }
    std::vector<RationalFunc> out(static_cast<std::size_t>(m + 1), RationalFunc::constant(nv, 0));
    for (int j = 0; j <= m; ++j) out[static_cast<std::size_t>(j)] = j % 2 == 0 ? e[static_cast<std::size_t>(j)] : -e[static_cast<std::size_t>(j)];
    return out;
}

/// Minimum p-adic valuation over the entries of M (zero entries ignored).
inline ValuationValue vp(const RfMatrix& mat, const MultiPoly& p) {
    ValuationValue best = ValuationValue::infinity();
    for (const auto& row : mat)
        for (const auto& x : row) best = min(best, vp(x, p));
    return best;
}

/// v_p(C^s) for each s in s_list.
inline std::vector<long> valuation_growth(const CompanionMatrix& c, const MultiPoly& p, const std::vector<int>& s_list) {
    std::vector<long> out;
    out.reserve(s_list.size());
    for (int s : s_list) {
        if (s < 1 || s > 8) throw std::invalid_argument("valuation_growth: s must lie in 1..8");
        out.push_back(vp(matrix_power(c.entries, s), p).value());
    }
    return out;
}

/// Slope of the growth between the first and last sample (exact).
inline Rational growth_slope(const std::vector<int>& s_list, const std::vector<long>& values) {
    if (s_list.size() < 2 || s_list.size() != values.size()) throw std::invalid_argument("growth_slope: need two or more samples");
    Rational q(values.back() - values.front(), s_list.back() - s_list.front());
    q.canonicalize();
    return q;
}

/// Predicted slope v_p(mu_0) / m.
inline Rational expected_growth_slope(const MinPolyData& mp, const MultiPoly& p) {
    Rational q(vp(mp.coeffs.at(0), p).value(), mp.m);
    q.canonicalize();
    return q;
}

/// Each nonzero mu_{m-i} must be a quotient of homogeneous polynomials of degree difference -2i.
inline bool coeff_homogeneity_check(const MinPolyData& mp) {
    for (int i = 1; i <= mp.m; ++i) {
        const RationalFunc& c = mp.coeffs.at(static_cast<std::size_t>(mp.m - i));
        if (c.is_zero()) continue;
        if (!c.num().is_homogeneous() || !c.den().is_homogeneous()) return false;
        if (c.num().total_degree() - c.den().total_degree() != -2 * i) return false;
    }
    return true;
}

/// The homogeneous polynomial (r^m mu_0)^(-1), sign-normalized to a positive leading coefficient.
inline MultiPoly structural_form_check(const MinPolyData& mp, const Rational& r) {
    if (sgn(r) <= 0) throw std::invalid_argument("structural_form_check: r must be positive");
    const RationalFunc& mu0 = mp.coeffs.at(0);
    if (mu0.is_zero()) throw std::domain_error("structural_form_check: mu_0 vanishes");
    Rational rm = 1;
    for (int i = 0; i < mp.m; ++i) rm *= r;
    auto recip = divide_exact(mu0.den(), mu0.num() * rm);
    if (!recip) throw std::domain_error("structural_form_check: reciprocal of r^m mu_0 is not a polynomial");
    MultiPoly poly = std::move(*recip);
    if (sgn(poly.leading_term().second) < 0) poly = -poly;
    if (!poly.is_homogeneous(2 * mp.m)) throw std::domain_error("structural_form_check: reciprocal is not homogeneous of degree 2m");
    return poly;
}

}  // namespace sepint

#endif  // SEPINT_ALGEXT_HPP
