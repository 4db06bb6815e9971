// Exact sparse multivariate polynomials and rational functions over Q.
//
// A MultiPoly stores its terms in a std::map keyed by exponent vectors under
// graded lexicographic order (x0 > x1 > ... within a degree), so iteration is
// deterministic and the leading term is always the last entry of the map.
// RationalFunc keeps numerator/denominator unreduced; equality is decided by
// cross multiplication.

#ifndef SEPINT_POLYALG_HPP
#define SEPINT_POLYALG_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sepint {

using Rational = mpq_class;
using Exponent = std::vector<std::uint32_t>;

inline std::uint32_t degree_of(const Exponent& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Graded lexicographic order: total degree first, ties broken lexicographically.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const auto da = degree_of(a);
        const auto db = degree_of(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

class MultiPoly {
public:
    using TermMap = std::map<Exponent, Rational, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rational& c) {
        MultiPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::out_of_range("variable index out of range");
        Exponent e(nvars, 0);
        e[i] = 1;
        return monomial(std::move(e), Rational(1));
    }

    static MultiPoly monomial(Exponent e, const Rational& c) {
        MultiPoly p(e.size());
        p.add_term(std::move(e), c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
    }

    Rational constant_term() const {
        auto it = terms_.find(Exponent(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Exponent& e) const {
        check_exponent(e);
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c * x^e, pruning the entry when it cancels.
    void add_term(Exponent e, const Rational& c) {
        check_exponent(e);
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    const std::pair<const Exponent, Rational>& leading_term() const {
        if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
        return *terms_.rbegin();
    }

    /// Maximum |alpha| over the terms. Undefined for zero.
    int total_degree() const {
        if (terms_.empty()) throw std::domain_error("total degree of the zero polynomial");
        return static_cast<int>(degree_of(terms_.rbegin()->first));
    }

    int min_degree() const {
        if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
        return static_cast<int>(degree_of(terms_.begin()->first));
    }

    /// True iff every term has total degree `deg`. The zero polynomial is homogeneous of any degree.
    bool is_homogeneous(int deg) const {
        return std::all_of(terms_.begin(), terms_.end(), [deg](const auto& t) {
            return static_cast<int>(degree_of(t.first)) == deg;
        });
    }

    bool is_homogeneous() const { return terms_.empty() || is_homogeneous(total_degree()); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same(b);
        MultiPoly r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Subtracts c * x^shift * p in place (the division kernel).
    void sub_scaled_shifted(const MultiPoly& p, const Rational& c, const Exponent& shift) {
        Exponent e(nvars_);
        for (const auto& [ep, cp] : p.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + shift[i];
            add_term(e, -(c * cp));
        }
    }

    double evaluate(std::span<const double> x) const {
        if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double term = c.get_d();
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) term *= x[i];
            sum += term;
        }
        return sum;
    }

    Rational evaluate(std::span<const Rational> x) const {
        if (x.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k) term *= x[i];
            sum += term;
        }
        return sum;
    }

private:
    void check_exponent(const Exponent& e) const {
        if (e.size() != nvars_) throw std::invalid_argument("exponent vector length differs from nvars");
    }
    void check_same(const MultiPoly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

inline MultiPoly pow(const MultiPoly& base, unsigned n) {
    MultiPoly result = MultiPoly::constant(base.nvars(), 1);
    MultiPoly b = base;
    while (n > 0) {
        if (n & 1U) result = result * b;
        n >>= 1U;
        if (n > 0) b = b * b;
    }
    return result;
}

/// Formal partial derivative along axis i.
inline MultiPoly partial(const MultiPoly& f, std::size_t i) {
    if (i >= f.nvars()) throw std::out_of_range("partial: axis out of range");
    MultiPoly r(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[i] == 0) continue;
        Exponent d = e;
        --d[i];
        r.add_term(std::move(d), c * e[i]);
    }
    return r;
}

/// Mixed partial derivative d^alpha f.
inline MultiPoly partial(const MultiPoly& f, std::span<const std::uint32_t> alpha) {
    if (alpha.size() != f.nvars()) throw std::invalid_argument("multi-index length differs from nvars");
    MultiPoly r = f;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::uint32_t k = 0; k < alpha[i]; ++k) r = partial(r, i);
    return r;
}

inline MultiPoly laplacian(const MultiPoly& f) {
    MultiPoly r(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) r += partial(partial(f, i), i);
    return r;
}

/// Sum_i d_i f * d_i g.
inline MultiPoly grad_dot(const MultiPoly& f, const MultiPoly& g) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("grad_dot: dimension mismatch");
    MultiPoly r(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) r += partial(f, i) * partial(g, i);
    return r;
}

/// Exponent a divides b (componentwise a <= b).
inline bool exponent_divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

/// Single-divisor division under grlex. Returns q with f = p*q, or nullopt if p does not divide f.
///
/// The remainder of single-divisor division is zero iff f lies in the principal ideal (p). A
/// leading term of the running dividend that LT(p) cannot divide would go to the remainder and
/// can never be cancelled by later (smaller) terms, so the loop stops there.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& p) {
    if (p.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (f.nvars() != p.nvars()) throw std::invalid_argument("divide_exact: dimension mismatch");
    const auto& [lp_exp, lp_coef] = p.leading_term();
    MultiPoly q(f.nvars());
    MultiPoly r = f;
    Exponent shift(f.nvars());
    while (!r.is_zero()) {
        const auto& [lr_exp, lr_coef] = r.leading_term();
        if (!exponent_divides(lp_exp, lr_exp)) return std::nullopt;
        for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lr_exp[i] - lp_exp[i];
        Rational c = lr_coef / lp_coef;
        q.add_term(shift, c);
        r.sub_scaled_shifted(p, c, shift);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Text format: terms `c*x0^a0*x1^a1...`, c an exact rational `p/q` (or a finite
// decimal). `*` between factors is optional and whitespace is ignored.

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        const bool has_vars = degree_of(e) > 0;
        bool need_star = false;
        if (!has_vars || mag != 1) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << 'x' << i;
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) {
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) src_.push_back(ch);
    }

    MultiPoly parse(std::size_t nvars) {
        std::vector<std::pair<Exponent, Rational>> terms;
        std::size_t max_index = 0;
        if (src_.empty()) fail("empty polynomial");
        bool first = true;
        while (pos_ < src_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [vars, coef] = parse_term(max_index);
            terms.emplace_back(std::move(vars), sign * coef);
        }
        std::size_t n = nvars;
        if (n == 0) n = terms_have_vars_ ? max_index + 1 : 1;
        if (terms_have_vars_ && max_index >= n) fail("variable index exceeds nvars");
        MultiPoly p(n);
        for (auto& [idx, c] : terms) {
            Exponent e(n, 0);
            for (std::size_t k = 0; k + 1 < idx.size(); k += 2) e[idx[k]] += idx[k + 1];
            p.add_term(std::move(e), c);
        }
        return p;
    }

private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    std::uint64_t parse_uint() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits");
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
            if (v > (1ULL << 40)) fail("integer too large");
            ++pos_;
        }
        return v;
    }

    Rational parse_number() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        std::string digits = src_.substr(start, pos_ - start);
        if (peek() == '.') {
            ++pos_;
            std::size_t fstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            std::string frac = src_.substr(fstart, pos_ - fstart);
            if (digits.empty() && frac.empty()) fail("malformed decimal");
            Rational q(mpz_class((digits.empty() ? "0" : digits) + frac, 10), mpz_class("1" + std::string(frac.size(), '0'), 10));
            q.canonicalize();
            return q;
        }
        if (digits.empty()) fail("expected number");
        Rational q(mpz_class(digits, 10), 1);
        if (peek() == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            std::string den = src_.substr(dstart, pos_ - dstart);
            if (den.empty()) fail("expected denominator");
            mpz_class d(den, 10);
            if (d == 0) fail("zero denominator");
            q = Rational(mpz_class(digits, 10), d);
            q.canonicalize();
        }
        return q;
    }

    // Returns flattened (index, power) pairs and the coefficient.
    std::pair<Exponent, Rational> parse_term(std::size_t& max_index) {
        Rational coef = 1;
        bool have_anything = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            coef = parse_number();
            have_anything = true;
        }
        Exponent flat;
        while (true) {
            std::size_t save = pos_;
            if (peek() == '*') {
                if (!have_anything) fail("unexpected '*'");
                ++pos_;
            }
            if (peek() != 'x') {
                if (pos_ != save) fail("expected variable after '*'");
                break;
            }
            ++pos_;
            auto idx = parse_uint();
            std::uint64_t power = 1;
            if (peek() == '^') {
                ++pos_;
                power = parse_uint();
            }
            flat.push_back(static_cast<std::uint32_t>(idx));
            flat.push_back(static_cast<std::uint32_t>(power));
            max_index = std::max<std::size_t>(max_index, idx);
            terms_have_vars_ = true;
            have_anything = true;
        }
        if (!have_anything) fail("expected a term");
        return {std::move(flat), coef};
    }

    std::string src_;
    std::size_t pos_ = 0;
    bool terms_have_vars_ = false;
};

}  // namespace detail

/// Parses the text format. With nvars == 0 the dimension is inferred from the largest index.
inline MultiPoly parse_poly(std::string_view text, std::size_t nvars = 0) {
    return detail::PolyParser(text).parse(nvars);
}

// ---------------------------------------------------------------------------

class RationalFunc {
public:
    RationalFunc() : RationalFunc(MultiPoly::constant(1, 0)) {}

    explicit RationalFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::constant(num_.nvars(), 1)) {}

    RationalFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num_.nvars() != den_.nvars()) throw std::invalid_argument("rational function dimension mismatch");
        normalize();
    }

    static RationalFunc constant(std::size_t nvars, const Rational& c) {
        return RationalFunc(MultiPoly::constant(nvars, c));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }

    /// The polynomial this function equals, if its denominator divides the numerator.
    std::optional<MultiPoly> as_polynomial() const {
        if (den_.is_constant()) return num_ * (Rational(1) / den_.constant_term());
        return divide_exact(num_, den_);
    }

    RationalFunc inverse() const {
        if (is_zero()) throw std::domain_error("inverse of the zero rational function");
        return RationalFunc(den_, num_);
    }

    RationalFunc operator-() const { return RationalFunc(-num_, den_); }

    friend RationalFunc operator+(const RationalFunc& a, const RationalFunc& b) {
        if (a.nvars() != b.nvars()) throw std::invalid_argument("rational function dimension mismatch");
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RationalFunc(a.num_ + b.num_, a.den_);
        if (auto q = divide_exact(a.den_, b.den_)) return RationalFunc(a.num_ + b.num_ * *q, a.den_);
        if (auto q = divide_exact(b.den_, a.den_)) return RationalFunc(a.num_ * *q + b.num_, b.den_);
        return RationalFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunc operator-(const RationalFunc& a, const RationalFunc& b) { return a + (-b); }

    friend RationalFunc operator*(const RationalFunc& a, const RationalFunc& b) {
        if (a.nvars() != b.nvars()) throw std::invalid_argument("rational function dimension mismatch");
        if (a.is_zero() || b.is_zero()) return constant(a.nvars(), 0);
        MultiPoly n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
        cancel(n1, d2);
        cancel(n2, d1);
        return RationalFunc(n1 * n2, d1 * d2);
    }

    friend RationalFunc operator/(const RationalFunc& a, const RationalFunc& b) { return a * b.inverse(); }

    friend RationalFunc operator*(const RationalFunc& a, const Rational& s) { return RationalFunc(a.num_ * s, a.den_); }
    friend RationalFunc operator*(const RationalFunc& a, const MultiPoly& p) { return a * RationalFunc(p); }

    /// Cross-multiplication equality.
    friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
        if (a.nvars() != b.nvars()) return false;
        if (a.den_ == b.den_) return a.num_ == b.num_;
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    double evaluate(std::span<const double> x) const { return num_.evaluate(x) / den_.evaluate(x); }

private:
    // Representation normalization only (no gcd): zero has denominator 1, denominators are
    // scaled to leading coefficient 1, and a denominator dividing the numerator is cleared.
    void normalize() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.nvars(), 1);
            return;
        }
        const Rational lc = den_.leading_term().second;
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ *= inv;
            den_ *= inv;
        }
        if (den_.is_constant()) return;
        if (auto q = divide_exact(num_, den_)) {
            num_ = std::move(*q);
            den_ = MultiPoly::constant(num_.nvars(), 1);
        }
    }

    static void cancel(MultiPoly& n, MultiPoly& d) {
        if (d.is_constant()) return;
        if (auto q = divide_exact(n, d)) {
            n = std::move(*q);
            d = MultiPoly::constant(n.nvars(), 1);
        }
    }

    MultiPoly num_;
    MultiPoly den_;
};

inline RationalFunc partial(const RationalFunc& f, std::size_t i) {
    const MultiPoly& n = f.num();
    const MultiPoly& d = f.den();
    if (d.is_constant()) return RationalFunc(partial(n, i), d);
    return RationalFunc(partial(n, i) * d - n * partial(d, i), d * d);
}

inline RationalFunc laplacian(const RationalFunc& f) {
    RationalFunc r = RationalFunc::constant(f.nvars(), 0);
    for (std::size_t i = 0; i < f.nvars(); ++i) r = r + partial(partial(f, i), i);
    return r;
}

inline RationalFunc grad_dot(const RationalFunc& f, const RationalFunc& g) {
    if (f.nvars() != g.nvars()) throw std::invalid_argument("grad_dot: dimension mismatch");
    RationalFunc r = RationalFunc::constant(f.nvars(), 0);
    for (std::size_t i = 0; i < f.nvars(); ++i) r = r + partial(f, i) * partial(g, i);
    return r;
}

inline RationalFunc pow(const RationalFunc& f, int n) {
    if (n < 0) return pow(f.inverse(), -n);
    return RationalFunc(pow(f.num(), static_cast<unsigned>(n)), pow(f.den(), static_cast<unsigned>(n)));
}

inline std::string to_string(const RationalFunc& f) {
    if (f.den().is_constant() && f.den().constant_term() == 1) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const RationalFunc& f) { return os << to_string(f); }

}  // namespace sepint

#endif  // SEPINT_POLYALG_HPP
