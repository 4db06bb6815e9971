// Valuations on the rational function field Q(x): the p-adic order v_p and the
// degree valuation v_inf, with the unique-factorization product formula.

#ifndef SEPINT_VALUATION_HPP
#define SEPINT_VALUATION_HPP

#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sepint/polyalg.hpp"

namespace sepint {

/// A finite integer or the distinguished value infinity (the valuation of zero).
class ValuationValue {
public:
    static ValuationValue infinity() { return ValuationValue(true, 0); }
    static ValuationValue finite(long v) { return ValuationValue(false, v); }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw std::domain_error("value() of an infinite valuation");
        return v_;
    }

    friend ValuationValue operator+(ValuationValue a, ValuationValue b) {
        if (a.inf_ || b.inf_) return infinity();
        return finite(a.v_ + b.v_);
    }

    ValuationValue operator-() const {
        if (inf_) throw std::domain_error("negation of an infinite valuation");
        return finite(-v_);
    }

    friend ValuationValue operator-(ValuationValue a, ValuationValue b) { return a + (-b); }

    friend bool operator==(const ValuationValue& a, const ValuationValue& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }

    friend std::strong_ordering operator<=>(const ValuationValue& a, const ValuationValue& b) {
        if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
        return a.v_ <=> b.v_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ValuationValue& v) {
        return v.inf_ ? os << "inf" : os << v.v_;
    }

private:
    ValuationValue(bool inf, long v) : inf_(inf), v_(v) {}
    bool inf_;
    long v_;
};

inline ValuationValue min(ValuationValue a, ValuationValue b) { return b < a ? b : a; }

namespace detail {
inline void check_valuation_prime(const MultiPoly& p) {
    if (p.is_zero() || p.is_constant()) throw std::invalid_argument("p-adic valuation needs a nonconstant p");
}
}  // namespace detail

/// Largest nu with p^nu | f; infinity for f = 0. Irreducibility of p is the caller's obligation.
inline ValuationValue vp(const MultiPoly& f, const MultiPoly& p) {
    detail::check_valuation_prime(p);
    if (f.is_zero()) return ValuationValue::infinity();
    long nu = 0;
    MultiPoly rest = f;
    while (auto q = divide_exact(rest, p)) {
        rest = std::move(*q);
        ++nu;
    }
    return ValuationValue::finite(nu);
}

inline ValuationValue vp(const RationalFunc& f, const MultiPoly& p) {
    detail::check_valuation_prime(p);
    if (f.is_zero()) return ValuationValue::infinity();
    return vp(f.num(), p) - vp(f.den(), p);
}

/// deg(den) - deg(num).
inline ValuationValue v_inf(const RationalFunc& f) {
    if (f.is_zero()) return ValuationValue::infinity();
    return ValuationValue::finite(static_cast<long>(f.den().total_degree()) - f.num().total_degree());
}

inline ValuationValue v_inf(const MultiPoly& f) { return v_inf(RationalFunc(f)); }

using FactorList = std::vector<std::pair<MultiPoly, int>>;

/// u * prod p_i^nu_i (exponents may be negative).
inline RationalFunc assemble_factored(const Rational& u, const FactorList& factors, std::size_t nvars) {
    MultiPoly num = MultiPoly::constant(nvars, u);
    MultiPoly den = MultiPoly::constant(nvars, 1);
    for (const auto& [p, nu] : factors) {
        if (p.nvars() != nvars) throw std::invalid_argument("factor dimension mismatch");
        if (nu >= 0)
            num = num * pow(p, static_cast<unsigned>(nu));
        else
            den = den * pow(p, static_cast<unsigned>(-nu));
    }
    return RationalFunc(std::move(num), std::move(den));
}

/// Rebuilds f = u prod p_i^nu_i and checks v_inf(f) = -sum nu_i deg p_i and v_{p_i}(f) = nu_i.
/// The p_i are expected to be pairwise non-associated irreducibles.
inline bool product_formula_check(const Rational& u, const FactorList& factors, std::size_t nvars = 0) {
    if (sgn(u) == 0) throw std::invalid_argument("product formula needs a nonzero unit");
    if (nvars == 0) nvars = factors.empty() ? 1 : factors.front().first.nvars();
    for (const auto& [p, nu] : factors)
        if (p.is_constant()) throw std::invalid_argument("product formula factors must be nonconstant");
    const RationalFunc f = assemble_factored(u, factors, nvars);
    long expected_inf = 0;
    for (const auto& [p, nu] : factors) expected_inf -= static_cast<long>(nu) * p.total_degree();
    if (v_inf(f) != ValuationValue::finite(expected_inf)) return false;
    for (const auto& [p, nu] : factors)
        if (vp(f, p) != ValuationValue::finite(nu)) return false;
    return true;
}

/// v_p(f) - v_p(Laplacian f).
inline long laplacian_valuation_drop(const RationalFunc& f, const MultiPoly& p) {
    if (f.is_zero()) throw std::invalid_argument("laplacian_valuation_drop: zero input");
    const RationalFunc lap = laplacian(f);
    if (lap.is_zero()) throw std::invalid_argument("laplacian_valuation_drop: harmonic input");
    return (vp(f, p) - vp(lap, p)).value();
}

}  // namespace sepint

#endif  // SEPINT_VALUATION_HPP
