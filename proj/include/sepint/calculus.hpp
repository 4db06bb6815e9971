// Differential calculus of powers.
//
// A JetPoly is a polynomial in formal jet variables u_beta (standing for d^beta f)
// whose coefficients are polynomials in a formal exponent m. The identity
//
//     d^alpha f^m = Q_alpha^m({d^beta f}) * f^(m - |alpha|)
//
// is built constructively from the product rule: each derivative d_i applied to
// Q * f^(m - c) gives (u_0 * d_i Q + (m - c) * u_{e_i} * Q) * f^(m - c - 1).

#ifndef SEPINT_CALCULUS_HPP
#define SEPINT_CALCULUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepint/polyalg.hpp"

namespace sepint {

using MultiIndex = std::vector<std::uint32_t>;

/// Univariate polynomial in the formal exponent m, coefficients low to high, no trailing zeros.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(Rational c) {
        if (sgn(c) != 0) c_.push_back(std::move(c));
    }
    /// a + b*m
    static MPoly linear(const Rational& a, const Rational& b) {
        MPoly p;
        p.c_ = {a, b};
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coefficient(int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
    }

    Rational evaluate(const Rational& m) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * m + *it;
        return r;
    }

    MPoly& operator+=(const MPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }

    friend bool operator==(const MPoly&, const MPoly&) = default;

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Product of jet variables: u_beta -> power.
using JetMonomial = std::map<MultiIndex, std::uint32_t>;

class JetPoly {
public:
    explicit JetPoly(std::size_t dim) : dim_(dim) {}

    static JetPoly one(std::size_t dim) {
        JetPoly p(dim);
        p.add_term({}, MPoly(Rational(1)));
        return p;
    }

    /// The single jet variable u_beta.
    static JetPoly jet(const MultiIndex& beta) {
        JetPoly p(beta.size());
        p.add_term(JetMonomial{{beta, 1}}, MPoly(Rational(1)));
        return p;
    }

    std::size_t dim() const { return dim_; }
    const std::map<JetMonomial, MPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const JetMonomial& mono, const MPoly& coef) {
        if (coef.is_zero()) return;
        for (const auto& [beta, k] : mono)
            if (beta.size() != dim_) throw std::invalid_argument("jet multi-index has wrong length");
        auto [it, inserted] = terms_.try_emplace(mono, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Highest power of m over all coefficients (-1 for zero).
    int m_degree() const {
        int d = -1;
        for (const auto& [mono, c] : terms_) d = std::max(d, c.degree());
        return d;
    }

    /// The m-free JetPoly formed by the coefficients of m^k.
    JetPoly coefficient_of_m(int k) const {
        JetPoly r(dim_);
        for (const auto& [mono, c] : terms_) r.add_term(mono, MPoly(c.coefficient(k)));
        return r;
    }

    /// True iff every jet variable u_beta appearing satisfies beta <= alpha componentwise.
    bool jets_bounded_by(const MultiIndex& alpha) const {
        for (const auto& [mono, c] : terms_)
            for (const auto& [beta, k] : mono)
                for (std::size_t i = 0; i < dim_; ++i)
                    if (beta[i] > alpha[i]) return false;
        return true;
    }

    /// Largest |beta| of any jet variable appearing.
    std::uint32_t max_jet_order() const {
        std::uint32_t r = 0;
        for (const auto& [mono, c] : terms_)
            for (const auto& [beta, k] : mono) r = std::max(r, degree_of(beta));
        return r;
    }

    JetPoly& operator+=(const JetPoly& o) {
        check_same(o);
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }

    friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
        a.check_same(b);
        JetPoly r(a.dim_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                JetMonomial mono = ma;
                for (const auto& [beta, k] : mb) mono[beta] += k;
                r.add_term(mono, ca * cb);
            }
        }
        return r;
    }

    friend JetPoly operator*(const MPoly& s, const JetPoly& a) {
        JetPoly r(a.dim_);
        for (const auto& [mono, c] : a.terms_) r.add_term(mono, s * c);
        return r;
    }

    friend bool operator==(const JetPoly& a, const JetPoly& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    /// Total derivative along axis i acting on jets: u_beta -> u_{beta + e_i} (Leibniz rule).
    JetPoly derive(std::size_t axis) const {
        if (axis >= dim_) throw std::out_of_range("jet derivative axis out of range");
        JetPoly r(dim_);
        for (const auto& [mono, c] : terms_) {
            for (const auto& [beta, k] : mono) {
                JetMonomial next = mono;
                if (--next[beta] == 0) next.erase(beta);
                MultiIndex shifted = beta;
                ++shifted[axis];
                ++next[shifted];
                r.add_term(next, MPoly(Rational(k)) * c);
            }
        }
        return r;
    }

private:
    void check_same(const JetPoly& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("jet polynomial dimension mismatch");
    }

    std::size_t dim_;
    std::map<JetMonomial, MPoly> terms_;
};

inline MultiIndex unit_index(std::size_t dim, std::size_t i) {
    MultiIndex e(dim, 0);
    e.at(i) = 1;
    return e;
}

/// One product-rule step: d_axis (Q f^(m - shift)) = (u_0 d_axis Q + (m - shift) u_{e_axis} Q) f^(m - shift - 1).
inline JetPoly power_rule_step(const JetPoly& q, std::size_t axis, std::uint32_t shift) {
    const std::size_t d = q.dim();
    JetPoly r = JetPoly::jet(MultiIndex(d, 0)) * q.derive(axis);
    r += MPoly::linear(-Rational(shift), 1) * (JetPoly::jet(unit_index(d, axis)) * q);
    return r;
}

/// Q_alpha^m with d^alpha f^m = Q_alpha^m * f^(m - |alpha|).
inline JetPoly q_polynomial(const MultiIndex& alpha) {
    if (alpha.empty()) throw std::invalid_argument("q_polynomial: empty multi-index");
    JetPoly q = JetPoly::one(alpha.size());
    std::uint32_t shift = 0;
    for (std::size_t axis = 0; axis < alpha.size(); ++axis)
        for (std::uint32_t k = 0; k < alpha[axis]; ++k) q = power_rule_step(q, axis, shift++);
    return q;
}

/// Same as q_polynomial but differentiating along the given sequence of axes.
inline JetPoly q_polynomial_along(std::size_t dim, const std::vector<std::size_t>& axes) {
    JetPoly q = JetPoly::one(dim);
    std::uint32_t shift = 0;
    for (std::size_t axis : axes) q = power_rule_step(q, axis, shift++);
    return q;
}

/// Q~_i^m with Laplacian^i f^m = Q~_i^m * f^(m - 2i), in dimension dim.
inline JetPoly q_tilde(std::uint32_t i, std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("q_tilde: zero dimension");
    JetPoly q = JetPoly::one(dim);
    std::uint32_t shift = 0;
    for (std::uint32_t step = 0; step < i; ++step) {
        JetPoly next(dim);
        for (std::size_t axis = 0; axis < dim; ++axis)
            next += power_rule_step(power_rule_step(q, axis, shift), axis, shift + 1);
        q = std::move(next);
        shift += 2;
    }
    return q;
}

/// Evaluates Q with u_beta := d^beta f and m := m_value.
inline MultiPoly substitute_jets(const JetPoly& q, const MultiPoly& f, long m_value) {
    if (f.nvars() != q.dim()) throw std::invalid_argument("substitute_jets: dimension mismatch");
    std::map<MultiIndex, MultiPoly> cache;
    auto jet_value = [&](const MultiIndex& beta) -> const MultiPoly& {
        auto it = cache.find(beta);
        if (it == cache.end()) it = cache.emplace(beta, partial(f, beta)).first;
        return it->second;
    };
    MultiPoly result(f.nvars());
    const Rational m(m_value);
    for (const auto& [mono, c] : q.terms()) {
        Rational coef = c.evaluate(m);
        if (sgn(coef) == 0) continue;
        MultiPoly term = MultiPoly::constant(f.nvars(), coef);
        for (const auto& [beta, k] : mono) term = term * pow(jet_value(beta), k);
        result += term;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Graded algebra A = sum_i R(x) zeta^i with zeta^(2m) = h.

/// Coefficient c with Laplacian(g h^nu) = c h^nu:
/// Lap g + 2 nu grad g . grad h / h + nu g Lap h / h + nu (nu - 1) g grad h . grad h / h^2.
inline RationalFunc graded_laplacian(const RationalFunc& g, const MultiPoly& h, const Rational& nu) {
    if (h.is_zero()) throw std::domain_error("graded_laplacian: zero base polynomial");
    if (g.nvars() != h.nvars()) throw std::invalid_argument("graded_laplacian: dimension mismatch");
    const RationalFunc hf(h);
    const RationalFunc h_inv = hf.inverse();
    RationalFunc r = laplacian(g);
    r = r + grad_dot(g, hf) * h_inv * (2 * nu);
    r = r + g * RationalFunc(laplacian(h)) * h_inv * nu;
    r = r + g * RationalFunc(grad_dot(h, h)) * h_inv * h_inv * (nu * (nu - 1));
    return r;
}

/// coeff * zeta^grade, zeta^(2m) = base.
struct GradedElement {
    RationalFunc coeff;
    int grade = 0;
    MultiPoly base;
    int m = 1;

    GradedElement(RationalFunc c, int g, MultiPoly h, int m_) : coeff(std::move(c)), base(std::move(h)), m(m_) {
        if (m < 1) throw std::invalid_argument("graded element: m must be positive");
        if (base.is_zero()) throw std::domain_error("graded element: zero base");
        grade = ((g % (2 * m)) + 2 * m) % (2 * m);
        // fold whole powers of h into the coefficient
        const int whole = (g - grade) / (2 * m);
        if (whole != 0) coeff = coeff * pow(RationalFunc(base), whole);
    }

    Rational nu() const { return make_rational(grade, 2 * m); }
};

inline GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    if (a.m != b.m || !(a.base == b.base)) throw std::invalid_argument("graded product over different bases");
    return GradedElement(a.coeff * b.coeff, a.grade + b.grade, a.base, a.m);
}

/// d_i (g h^nu) = (d_i g + nu g d_i h / h) h^nu; stays in the same component.
inline GradedElement partial(const GradedElement& f, std::size_t i) {
    const RationalFunc hf(f.base);
    RationalFunc c = partial(f.coeff, i) + f.coeff * RationalFunc(partial(f.base, i)) * hf.inverse() * f.nu();
    return GradedElement(std::move(c), f.grade, f.base, f.m);
}

/// Laplacian by composing the graded derivation twice per axis.
inline GradedElement laplacian(const GradedElement& f) {
    RationalFunc acc = RationalFunc::constant(f.base.nvars(), 0);
    for (std::size_t i = 0; i < f.base.nvars(); ++i) acc = acc + partial(partial(f, i), i).coeff;
    return GradedElement(std::move(acc), f.grade, f.base, f.m);
}

/// Re-derives Laplacian(g zeta^i) through the graded derivation and checks it is the
/// closed-form coefficient times zeta^i, i.e. the Laplacian preserves A_i.
inline bool grading_preserved(const RationalFunc& g, const MultiPoly& h, int m, int i) {
    if (m < 1) throw std::invalid_argument("grading_preserved: m must be positive");
    if (g.is_zero()) return true;
    const GradedElement f(g, i, h, m);
    const GradedElement lap = laplacian(f);
    if (lap.grade != f.grade) return false;
    return lap.coeff == graded_laplacian(f.coeff, h, f.nu());
}

/// p | grad p . grad p.
inline bool dual_quadric_divisible(const MultiPoly& p) {
    if (p.is_zero()) throw std::domain_error("dual_quadric_divisible: zero polynomial");
    return divide_exact(grad_dot(p, p), p).has_value();
}

}  // namespace sepint

#endif  // SEPINT_CALCULUS_HPP
