#include <gtest/gtest.h>

#include "sepint/generators.hpp"
#include "sepint/algext.hpp"

using namespace sepint;

namespace {

MultiPoly P(const char* text, std::size_t nvars = 2) { return parse_poly(text, nvars); }

RationalFunc inv(const MultiPoly& p) { return RationalFunc(p).inverse(); }

MinPolyData random_minpoly(gen::Gen& g, int m) {
    MinPolyData mp;
    mp.m = m;
    for (int i = 0; i < m; ++i) mp.coeffs.emplace_back(g.poly(2, 2, 2), g.nonzero_poly(2, 2, 2));
    if (mp.coeffs[0].is_zero()) mp.coeffs[0] = RationalFunc::constant(2, 1);
    return mp;
}

}  // namespace

TEST(MinPoly, Examples) {
    const MinPolyData q = minpoly_of_root_body(P("x0^2+x1^2"), 2);
    EXPECT_EQ(q.m, 1);
    ASSERT_EQ(q.coeffs.size(), 1u);
    EXPECT_EQ(q.coeffs[0], -inv(P("x0^2+x1^2")));

    const MinPolyData l4 = minpoly_of_root_body(P("x0^4+x1^4"), 4);
    EXPECT_EQ(l4.m, 2);
    EXPECT_EQ(l4.coeffs[0], -inv(P("x0^4+x1^4")));
    EXPECT_TRUE(l4.coeffs[1].is_zero());

    EXPECT_THROW(minpoly_of_root_body(P("x0^4+2*x0^2*x1^2+x1^4"), 4), std::invalid_argument);
}

TEST(MinPoly, InputValidation) {
    EXPECT_THROW(minpoly_of_root_body(P("x0^3+x1^3"), 3), std::invalid_argument);
    EXPECT_THROW(minpoly_of_root_body(P("x0^4+x1^2"), 4), std::invalid_argument);
}

TEST(PerfectPower, Detection) {
    EXPECT_TRUE(is_perfect_power(pow(P("x0^2+x1^2"), 2)));
    EXPECT_TRUE(is_perfect_power(P("3") * pow(P("x0-2*x1"), 3)));
    EXPECT_TRUE(is_perfect_power(P("x0^2*x1^2")));
    EXPECT_FALSE(is_perfect_power(P("x0^4+x1^4")));
    EXPECT_FALSE(is_perfect_power(P("x0^2+x1^2")));
    const auto root = perfect_power_root(P("4") * pow(P("x0+x1^2"), 2), 2);
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(root->second, 4);
    EXPECT_EQ(pow(root->first, 2) * root->second, P("4") * pow(P("x0+x1^2"), 2));
}

TEST(Companion, Examples) {
    const MultiPoly h = P("x0^2+x1^2");
    const CompanionMatrix c1 = companion(minpoly_of_root_body(h, 2));
    ASSERT_EQ(c1.size(), 1u);
    EXPECT_EQ(c1.entries[0][0], inv(h));

    const MultiPoly h4 = P("x0^4+x1^4");
    const CompanionMatrix c2 = companion(minpoly_of_root_body(h4, 4));
    EXPECT_TRUE(c2.entries[0][0].is_zero());
    EXPECT_EQ(c2.entries[0][1], inv(h4));
    EXPECT_EQ(c2.entries[1][0], RationalFunc::constant(2, 1));
    EXPECT_TRUE(c2.entries[1][1].is_zero());
}

TEST(Companion, CharpolyRecoversMinimalPolynomial) {
    gen::Gen g(31);
    for (int m = 1; m <= 3; ++m)
        for (int trial = 0; trial < 5; ++trial) {
            const MinPolyData mp = random_minpoly(g, m);
            const auto chi = charpoly(companion(mp));
            ASSERT_EQ(chi.size(), mp.coeffs.size());
            for (std::size_t i = 0; i < chi.size(); ++i) EXPECT_EQ(chi[i], mp.coeffs[i]) << "m=" << m << " i=" << i;
        }
}

TEST(CharpolyOfPower, Examples) {
    const MultiPoly h = P("x0^4+x1^4");
    const MinPolyData mp = minpoly_of_root_body(h, 4);
    const CompanionMatrix c = companion(mp);

    const auto chi2 = charpoly_of_power(c, 2);
    EXPECT_EQ(chi2[0], inv(h * h));
    EXPECT_EQ(chi2[1], RationalFunc(P("-2"), h));

    const auto chi1 = charpoly_of_power(c, 1);
    EXPECT_EQ(chi1, mp.coeffs);

    // det(C^3) = det(C)^3 with det C = -1/h
    const auto chi3 = charpoly_of_power(c, 3);
    EXPECT_EQ(chi3[0], -inv(h * h * h));
}

TEST(CharpolyOfPower, ViRelationsThroughPowerSums) {
    gen::Gen g(32);
    std::vector<MinPolyData> corpus{minpoly_of_root_body(P("x0^4+x1^4"), 4), minpoly_of_root_body(P("x0^6+x1^6+x0^2*x1^4", 2), 6)};
    for (int m = 1; m <= 3; ++m) corpus.push_back(random_minpoly(g, m));
    for (const auto& mp : corpus) {
        const auto p = power_sums(mp, 4);
        for (int s = 1; s <= 4 && s * mp.m <= 9; ++s) {
            const auto chi = charpoly_of_power(companion(mp), s);
            const auto viete = viete_coefficients_of_power(mp, s);
            // trace coefficient is minus the power sum
            EXPECT_EQ(chi[static_cast<std::size_t>(mp.m - 1)], -p[static_cast<std::size_t>(s - 1)]);
            for (int j = 1; j <= mp.m; ++j) EXPECT_EQ(chi[static_cast<std::size_t>(mp.m - j)], viete[static_cast<std::size_t>(j)]);
        }
    }
}

TEST(ValuationGrowth, Examples) {
    const MultiPoly h = P("x0^4+x1^4");
    const CompanionMatrix c = companion(minpoly_of_root_body(h, 4));
    const std::vector<int> even{2, 4, 6};
    EXPECT_EQ(valuation_growth(c, h, even), (std::vector<long>{-1, -2, -3}));
    EXPECT_EQ(valuation_growth(c, P("x0+x1"), even), (std::vector<long>{0, 0, 0}));

    const MultiPoly q = P("x0^2+x1^2");
    const CompanionMatrix c1 = companion(minpoly_of_root_body(q, 2));
    EXPECT_EQ(valuation_growth(c1, q, {1, 2, 3, 5}), (std::vector<long>{-1, -2, -3, -5}));

    EXPECT_THROW(valuation_growth(c, h, {9}), std::invalid_argument);
}

TEST(ValuationGrowth, SlopeMatchesPrediction) {
    const MultiPoly a = P("x0^2+x1^2");
    const MultiPoly b = P("x0^2+2*x1^2");
    struct Case {
        MultiPoly h;
        int two_m;
        MultiPoly p;
    };
    const std::vector<Case> cases{{a, 2, a}, {P("x0^4+x1^4"), 4, P("x0^4+x1^4")}, {a * b, 4, a}, {a * b, 4, b}, {a * b * P("x0^2+3*x1^2"), 6, b}};
    for (const auto& cs : cases) {
        const MinPolyData mp = minpoly_of_root_body(cs.h, cs.two_m);
        std::vector<int> s_list;
        for (int s = mp.m; s <= 8; s += mp.m) s_list.push_back(s);
        const auto values = valuation_growth(companion(mp), cs.p, s_list);
        EXPECT_EQ(growth_slope(s_list, values), expected_growth_slope(mp, cs.p)) << to_string(cs.h);
    }
}

TEST(Homogeneity, Examples) {
    EXPECT_TRUE(coeff_homogeneity_check(minpoly_of_root_body(P("x0^4+x1^4"), 4)));
    EXPECT_TRUE(coeff_homogeneity_check(minpoly_of_root_body(P("x0^2+x1^2"), 2)));
    MinPolyData bad;
    bad.m = 2;
    bad.coeffs = {-inv(P("x0^4+x1^3*x0")), RationalFunc::constant(2, 0)};
    EXPECT_TRUE(coeff_homogeneity_check(bad));  // x0^4 + x0 x1^3 is homogeneous of degree 4
    bad.coeffs[0] = -inv(P("x0^4+x1^3"));
    EXPECT_FALSE(coeff_homogeneity_check(bad));
}

TEST(Homogeneity, AllRootBodiesPass) {
    const std::vector<std::pair<MultiPoly, int>> bodies{{P("x0^2+x1^2"), 2}, {P("x0^4+x1^4"), 4}, {P("x0^4+x1^4+x2^4", 3), 4},
                                                        {P("x0^6+x1^6+x0^2*x1^4"), 6}, {P("x0^2+x1^2") * P("x0^2+2*x1^2"), 4}};
    for (const auto& [h, two_m] : bodies) EXPECT_TRUE(coeff_homogeneity_check(minpoly_of_root_body(h, two_m))) << to_string(h);
}

TEST(StructuralForm, Examples) {
    const MultiPoly h4 = P("x0^4+x1^4");
    EXPECT_EQ(structural_form_check(minpoly_of_root_body(h4, 4), 1), h4);
    const MultiPoly q = P("x0^2+x1^2");
    EXPECT_EQ(structural_form_check(minpoly_of_root_body(q, 2), 1), q);

    MinPolyData bad;
    bad.m = 1;
    bad.coeffs = {-inv(q * q)};
    EXPECT_THROW(structural_form_check(bad, 1), std::domain_error);
}

TEST(StructuralForm, ScaleAndNonPolynomialReciprocal) {
    const MultiPoly h4 = P("x0^4+x1^4");
    const MinPolyData mp = minpoly_of_root_body(h4, 4);
    // r^m mu_0 = -r^2 / h, reciprocal -h / r^2, sign-normalized
    EXPECT_EQ(structural_form_check(mp, 2), P("1/4") * h4);
    MinPolyData bad;
    bad.m = 1;
    bad.coeffs = {RationalFunc(P("x0"), P("x0^2+x1^2"))};
    EXPECT_THROW(structural_form_check(bad, 1), std::domain_error);
    EXPECT_THROW(structural_form_check(mp, 0), std::invalid_argument);
}
