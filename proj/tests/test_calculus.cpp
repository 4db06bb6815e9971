#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sepint/generators.hpp"
#include "sepint/calculus.hpp"

using namespace sepint;

namespace {

MultiPoly P(const char* text, std::size_t nvars) { return parse_poly(text, nvars); }

MultiPoly load_octic() {
    std::ifstream in(std::string(SEPINT_FIXTURE_DIR) + "/octic.poly");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_poly(ss.str(), 4);
}

/// All multi-indices in dimension 2 with |alpha| <= n.
std::vector<MultiIndex> indices_up_to(std::uint32_t n) {
    std::vector<MultiIndex> out;
    for (std::uint32_t a = 0; a <= n; ++a)
        for (std::uint32_t b = 0; a + b <= n; ++b) out.push_back({a, b});
    return out;
}

/// Substitutes x_i -> sum_j a[i][j] x_j.
MultiPoly linear_substitute(const MultiPoly& p, const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = p.nvars();
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly row(n);
        for (std::size_t j = 0; j < n; ++j) row += MultiPoly::variable(n, j) * a[i][j];
        images.push_back(row);
    }
    MultiPoly out(n);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(n, c);
        for (std::size_t i = 0; i < n; ++i) term = term * pow(images[i], e[i]);
        out += term;
    }
    return out;
}

}  // namespace

TEST(QPolynomial, Examples) {
    EXPECT_EQ(q_polynomial({0, 0}), JetPoly::one(2));

    JetPoly first(2);
    first.add_term({{{1, 0}, 1}}, MPoly::linear(0, 1));
    EXPECT_EQ(q_polynomial({1, 0}), first);

    // m(m-1) u_{(1,0)}^2 + m u_0 u_{(2,0)}
    JetPoly second(2);
    second.add_term({{{1, 0}, 2}}, MPoly::linear(0, 1) * MPoly::linear(-1, 1));
    second.add_term({{{0, 0}, 1}, {{2, 0}, 1}}, MPoly::linear(0, 1));
    EXPECT_EQ(q_polynomial({2, 0}), second);
}

TEST(QPolynomial, StructuralInvariants) {
    for (const auto& alpha : indices_up_to(4)) {
        const JetPoly q = q_polynomial(alpha);
        const int order = static_cast<int>(alpha[0] + alpha[1]);
        EXPECT_TRUE(q.jets_bounded_by(alpha));
        EXPECT_EQ(q.m_degree(), order);
        // leading coefficient is prod u_{e_i}^{alpha_i}
        JetMonomial lead;
        for (std::size_t i = 0; i < 2; ++i)
            if (alpha[i] > 0) lead[unit_index(2, i)] = alpha[i];
        JetPoly expected(2);
        expected.add_term(lead, MPoly(Rational(1)));
        EXPECT_EQ(q.coefficient_of_m(order), expected);
    }
}

TEST(QPolynomial, AxisOrderDoesNotMatter) {
    EXPECT_EQ(q_polynomial_along(2, {0, 1, 0}), q_polynomial({2, 1}));
    EXPECT_EQ(q_polynomial_along(2, {1, 1, 0, 0}), q_polynomial({2, 2}));
}

TEST(QPolynomial, OracleAgreementOnRandomSparse) {
    gen::Gen g(7);
    for (int trial = 0; trial < 6; ++trial) {
        const MultiPoly f = g.nonzero_poly(2, 3, 3);
        for (const auto& alpha : indices_up_to(4)) {
            const long order = alpha[0] + alpha[1];
            const JetPoly q = q_polynomial(alpha);
            for (long m : {order, order + 1, order + 2, order + 3}) {
                if (m == 0) continue;
                const MultiPoly lhs = partial(pow(f, static_cast<unsigned>(m)), alpha);
                const MultiPoly rhs = substitute_jets(q, f, m) * pow(f, static_cast<unsigned>(m - order));
                EXPECT_EQ(lhs, rhs) << "f=" << to_string(f) << " m=" << m;
            }
        }
    }
}

TEST(QTilde, Examples) {
    EXPECT_EQ(q_tilde(0, 3), JetPoly::one(3));

    JetPoly expected(2);
    for (std::size_t j = 0; j < 2; ++j) {
        expected.add_term({{unit_index(2, j), 2}}, MPoly::linear(0, 1) * MPoly::linear(-1, 1));
        MultiIndex two(2, 0);
        two[j] = 2;
        expected.add_term({{MultiIndex{0, 0}, 1}, {two, 1}}, MPoly::linear(0, 1));
    }
    EXPECT_EQ(q_tilde(1, 2), expected);

    JetPoly grad_sq(2);
    for (std::size_t j = 0; j < 2; ++j) grad_sq.add_term({{unit_index(2, j), 2}}, MPoly(Rational(1)));
    EXPECT_EQ(q_tilde(1, 2).coefficient_of_m(2), grad_sq);
}

TEST(QTilde, LeadingTermIsGradientPower) {
    for (std::uint32_t i = 0; i <= 2; ++i) {
        const JetPoly q = q_tilde(i, 2);
        EXPECT_EQ(q.m_degree(), static_cast<int>(2 * i));
        JetPoly grad_sq(2);
        for (std::size_t j = 0; j < 2; ++j) grad_sq.add_term({{unit_index(2, j), 2}}, MPoly(Rational(1)));
        JetPoly power = JetPoly::one(2);
        for (std::uint32_t s = 0; s < i; ++s) power = power * grad_sq;
        EXPECT_EQ(q.coefficient_of_m(static_cast<int>(2 * i)), power);
    }
}

TEST(QTilde, MatchesComposedQPolynomials) {
    JetPoly sum1(2);
    for (std::uint32_t j = 0; j < 2; ++j) {
        MultiIndex a(2, 0);
        a[j] = 2;
        sum1 += q_polynomial(a);
    }
    EXPECT_EQ(q_tilde(1, 2), sum1);

    JetPoly sum2(2);
    for (std::uint32_t j = 0; j < 2; ++j)
        for (std::uint32_t l = 0; l < 2; ++l) {
            MultiIndex a(2, 0);
            a[j] += 2;
            a[l] += 2;
            sum2 += q_polynomial(a);
        }
    EXPECT_EQ(q_tilde(2, 2), sum2);
}

TEST(QTilde, OracleAgreement) {
    gen::Gen g(8);
    for (int trial = 0; trial < 4; ++trial) {
        const MultiPoly f = g.nonzero_poly(2, 3, 3);
        for (std::uint32_t i = 1; i <= 2; ++i)
            for (long m : {2L * i, 2L * i + 1}) {
                MultiPoly lhs = pow(f, static_cast<unsigned>(m));
                for (std::uint32_t s = 0; s < i; ++s) lhs = laplacian(lhs);
                EXPECT_EQ(lhs, substitute_jets(q_tilde(i, 2), f, m) * pow(f, static_cast<unsigned>(m - 2 * i)));
            }
    }
}

TEST(SubstituteJets, Examples) {
    EXPECT_EQ(substitute_jets(q_polynomial({1}), P("x0^2", 1), 3), P("6*x0", 1));
    EXPECT_EQ(substitute_jets(JetPoly::one(2), P("x0+x1^3", 2), 5), P("1", 2));
    EXPECT_EQ(substitute_jets(q_tilde(1, 2), P("x0^2+x1^2", 2), 2), P("16*x0^2+16*x1^2", 2));
}

TEST(GradedLaplacian, Examples) {
    const MultiPoly h3 = P("x0^2+x1^2+x2^2", 3);
    EXPECT_EQ(graded_laplacian(RationalFunc::constant(3, 1), h3, 1), RationalFunc(P("6", 3), h3));

    const MultiPoly h = P("x0^3 - x1*x0 + 2", 2);
    EXPECT_TRUE(graded_laplacian(RationalFunc::constant(2, 1), h, 0).is_zero());

    const MultiPoly h2 = P("x0^2+x1^2", 2);
    const RationalFunc c = graded_laplacian(RationalFunc::constant(2, 1), h2, 2);
    EXPECT_EQ(c * RationalFunc(pow(h2, 2)), RationalFunc(laplacian(pow(h2, 2))));
    EXPECT_EQ(c * RationalFunc(pow(h2, 2)), RationalFunc(P("16*x0^2+16*x1^2", 2)));
}

TEST(GradedLaplacian, ZeroBaseThrows) {
    EXPECT_THROW(graded_laplacian(RationalFunc::constant(2, 1), MultiPoly(2), 1), std::domain_error);
}

TEST(GradedLaplacian, IntegerPowerIdentity) {
    gen::Gen g(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
        const MultiPoly gp = g.poly(d, 3, 2);
        const MultiPoly h = g.nonconstant_poly(d, 3, 2);
        const int nu = g.integer(2, 3);
        const RationalFunc lhs = graded_laplacian(RationalFunc(gp), h, nu) * RationalFunc(pow(h, static_cast<unsigned>(nu)));
        EXPECT_EQ(lhs, RationalFunc(laplacian(gp * pow(h, static_cast<unsigned>(nu)))));
    }
}

TEST(GradingPreserved, Examples) {
    EXPECT_TRUE(grading_preserved(RationalFunc::constant(2, 1), P("x0^2+x1^2", 2), 1, 1));
    EXPECT_TRUE(grading_preserved(RationalFunc::constant(2, 0), P("x0^2+x1^2", 2), 2, 3));
    EXPECT_THROW(grading_preserved(RationalFunc::constant(2, 1), P("x0", 2), 0, 1), std::invalid_argument);
}

TEST(GradingPreserved, RandomCorpus) {
    gen::Gen g(15);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = static_cast<std::size_t>(g.integer(2, 3));
        const RationalFunc gf(g.poly(d, 3, 2), g.nonzero_poly(d, 2, 1));
        const MultiPoly h = g.nonconstant_poly(d, 3, 2);
        const int m = g.integer(1, 3);
        const int i = g.integer(0, 2 * m - 1);
        EXPECT_TRUE(grading_preserved(gf, h, m, i));
    }
}

TEST(GradedElementTest, GradeWrapsIntoCoefficient) {
    const MultiPoly h = P("x0^2+x1^2", 2);
    const GradedElement a(RationalFunc::constant(2, 1), 3, h, 1);
    EXPECT_EQ(a.grade, 1);
    EXPECT_EQ(a.coeff, RationalFunc(h));
    const GradedElement sq = a * a;
    EXPECT_EQ(sq.grade, 0);
    EXPECT_EQ(sq.coeff, RationalFunc(pow(h, 3)));
}

TEST(DualQuadric, Examples) {
    EXPECT_TRUE(dual_quadric_divisible(load_octic()));
    EXPECT_FALSE(dual_quadric_divisible(P("x0", 2)));
    EXPECT_TRUE(dual_quadric_divisible(P("x0^2+x1^2+x2^2", 3)));
    EXPECT_FALSE(dual_quadric_divisible(P("x0^4+x1^4+x2^4", 3)));
    EXPECT_THROW(dual_quadric_divisible(MultiPoly(3)), std::domain_error);
}

TEST(DualQuadric, OcticQuotientHasDegreeSix) {
    const MultiPoly p = load_octic();
    const auto q = divide_exact(grad_dot(p, p), p);
    ASSERT_TRUE(q.has_value());
    EXPECT_TRUE(q->is_homogeneous(6));
}

// The predicate is preserved by rational similarities (orthogonal maps up to scale). A
// general invertible map sends the quadric x^T x to x^T M x with grad.grad = 4 x^T M^2 x,
// which x^T M x divides only when M is scalar.
TEST(DualQuadric, SimilarityInvariance) {
    const MultiPoly q = P("x0^2+x1^2+x2^2", 3);
    const Rational a(3, 5), b(4, 5);
    const std::vector<std::vector<Rational>> rot{{a, -b, 0}, {b, a, 0}, {0, 0, 1}};
    const std::vector<std::vector<Rational>> scaled{{2 * a, 0, -2 * b}, {0, 2, 0}, {2 * b, 0, 2 * a}};
    EXPECT_TRUE(dual_quadric_divisible(linear_substitute(q, rot)));
    EXPECT_TRUE(dual_quadric_divisible(linear_substitute(q, scaled)));
    const MultiPoly octic = load_octic();
    const std::vector<std::vector<Rational>> rot4{{a, -b, 0, 0}, {b, a, 0, 0}, {0, 0, a, b}, {0, 0, -b, a}};
    EXPECT_TRUE(dual_quadric_divisible(linear_substitute(octic, rot4)));
}

TEST(DualQuadric, GeneralLinearMapBreaksIt) {
    const MultiPoly q = P("x0^2+x1^2+x2^2", 3);
    const std::vector<std::vector<Rational>> shear{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    EXPECT_FALSE(dual_quadric_divisible(linear_substitute(q, shear)));
}

TEST(GradingPreserved, ReducibleGradeFraction) {
    // grade 2 with m = 2 gives nu = 2/4, which must compare equal to 1/2
    const MultiPoly h = P("-2*x0^2-6*x0+8", 2);
    const RationalFunc g(P("2*x1-10", 2), P("x0-5/2", 2));
    EXPECT_EQ(GradedElement(g, 2, h, 2).nu(), Rational(1, 2));
    EXPECT_TRUE(grading_preserved(g, h, 2, 2));
}
