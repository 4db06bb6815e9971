// Seeded random polynomial inputs for property checks.

#ifndef SEPINT_GENERATORS_HPP
#define SEPINT_GENERATORS_HPP

#include <cstdint>
#include <random>

#include "sepint/polyalg.hpp"

namespace sepint::gen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(int span = 9) {
        int num = integer(-span, span);
        if (num == 0) num = 1;
        return make_rational(num, integer(1, 4));
    }

    /// Up to `terms` random terms of total degree at most `max_deg`.
    MultiPoly poly(std::size_t nvars, int terms, int max_deg) {
        MultiPoly f(nvars);
        for (int t = 0; t < terms; ++t) {
            Exponent e(nvars, 0);
            int budget = integer(0, max_deg);
            for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
                const int take = (i + 1 == nvars) ? budget : integer(0, budget);
                e[i] = static_cast<std::uint32_t>(take);
                budget -= take;
            }
            f.add_term(e, rational());
        }
        return f;
    }

    MultiPoly nonzero_poly(std::size_t nvars, int terms, int max_deg) {
        MultiPoly f = poly(nvars, terms, max_deg);
        while (f.is_zero()) f = poly(nvars, terms, max_deg);
        return f;
    }

    /// Nonconstant polynomial.
    MultiPoly nonconstant_poly(std::size_t nvars, int terms, int max_deg) {
        MultiPoly f = poly(nvars, terms, max_deg);
        while (f.is_zero() || f.is_constant()) f = poly(nvars, terms, max_deg);
        return f;
    }

    /// Homogeneous polynomial of the given degree.
    MultiPoly homogeneous(std::size_t nvars, int terms, int deg) {
        MultiPoly f(nvars);
        while (f.is_zero()) {
            for (int t = 0; t < terms; ++t) {
                Exponent e(nvars, 0);
                int budget = deg;
                for (std::size_t i = 0; i < nvars; ++i) {
                    const int take = (i + 1 == nvars) ? budget : integer(0, budget);
                    e[i] = static_cast<std::uint32_t>(take);
                    budget -= take;
                }
                f.add_term(e, rational());
            }
        }
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace sepint::gen

#endif  // SEPINT_GENERATORS_HPP
