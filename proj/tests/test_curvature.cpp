#include <cmath>

#include <gtest/gtest.h>

#include "gkcurv/calibration.hpp"
#include "gkcurv/curvature.hpp"
#include "gkcurv/examples.hpp"
#include "helpers.hpp"

using namespace gkt;

namespace {

GKPair pair_of(const std::string& name) { return make_example(name).pair; }

SE ratio_gr(const CurvatureReport& c) { return c.gr_complex.re() / c.gr; }

}  // namespace

TEST(Rho, FlatC2IsOne) { EXPECT_EQ(rho(pair_of("flat_kahler_2").J1, pair_of("flat_kahler_2").psi), SE(1)); }

TEST(Rho, FubiniStudyLineIsMultipleOfConformalFactor) {
    auto p = pair_of("fubini_study_1");
    auto ch = p.chart();
    SE q = rho(p.J1, p.psi) / expr(ch, "(1 + x1^2 + x2^2)^2");
    ASSERT_TRUE(q.is_constant());
    EXPECT_FALSE(q.is_zero());
}

TEST(GricGr, FlatVanishes) {
    for (const char* name : {"flat_kahler_1", "flat_kahler_2"}) {
        auto c = gric_gr(pair_of(name));
        EXPECT_TRUE(c.gric.is_zero()) << name;
        EXPECT_TRUE(c.gr.is_zero()) << name;
        EXPECT_TRUE(c.gr_complex.is_zero()) << name;
    }
}

TEST(GricGr, FubiniStudyIsEinsteinWithLambdaTwiceNPlusOne) {
    for (int n : {1, 2}) {
        auto c = gric_gr(pair_of("fubini_study_" + std::to_string(n)));
        ASSERT_TRUE(c.lambda.has_value());
        EXPECT_TRUE(c.lambda_constant);
        EXPECT_EQ(*c.lambda, SE(2 * (n + 1)));
        EXPECT_TRUE(c.gric_closed);
        EXPECT_EQ(c.gr, SE(-2 * n * (n + 1)));
    }
}

TEST(GricGr, ComplexScalarCurvatureIsCalibratedMultiple) {
    for (const char* name : {"fubini_study_1", "fubini_study_2", "kahler_c2"}) {
        auto c = gric_gr(pair_of(name));
        EXPECT_EQ(ratio_gr(c), SE(GaussRat::ratio(kGrComplexNum, kGrComplexDen))) << name;
    }
}

TEST(GricGr, KahlerOracleAgreesOnNonConstantScalarCurvature) {
    auto p = pair_of("kahler_c2");
    auto c = gric_gr(p);
    EXPECT_FALSE(c.gr_constant);
    int d = p.chart()->dim();
    Mat<SE> Jc(d, d);
    const auto& J = p.J1.J();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) Jc(i, j) = J(i, j);
    EXPECT_EQ(kahler_ricci_oracle(p.chart(), Jc, c.rho), c.gric);
}

TEST(GricGr, ClosedOnEveryExample) {
    for (const auto& name : example_names()) {
        if (name == "nonintegrable_t4") continue;  // eta/N split is not that of an integrable pair
        auto c = gric_gr(pair_of(name));
        EXPECT_TRUE(c.gric_closed) << name;
        EXPECT_TRUE(c.gric_real) << name;
    }
}

TEST(Type00, HyperKahlerBothRoutesVanish) {
    auto s = make_example("hyperkahler_t4");
    auto t = type00_gric(s.type00->B, s.type00->w1, s.type00->w2);
    EXPECT_TRUE(t.gric.is_zero());
    EXPECT_TRUE(t.gr.is_zero());
    EXPECT_EQ(t.rho, SE(1));
    EXPECT_TRUE(gric_gr(s.pair).gric.is_zero());
}

TEST(Type00, PerturbedRoutesAgreeAndAreNonzero) {
    auto s = make_example("type00_perturbed_t4");
    auto t = type00_gric(s.type00->B, s.type00->w1, s.type00->w2);
    auto c = gric_gr(s.pair);
    EXPECT_FALSE(t.rho.is_constant());
    EXPECT_FALSE(t.gric.is_zero());
    EXPECT_EQ(t.gric, c.gric);
    EXPECT_EQ(t.gr, c.gr);
}

TEST(Type00, EqualVolumesGiveZero) {
    auto ch = make_chart(2, true);
    F w = omega_std(ch);
    auto t = type00_gric(F(ch), w, w);
    EXPECT_TRUE(t.gric.is_zero());
}

TEST(Integrate, TorusConstantTermAndStokes) {
    auto ch2 = make_chart(1, true);
    EXPECT_EQ(integrate_torus(form(ch2, {{"dx1^dx2", "2 + cos(x1)"}})), GaussRat(2));
    auto ch4 = make_chart(2, true);
    EXPECT_EQ(integrate_torus(form(ch4, {{"dx1^dx2^dx3^dx4", "1"}})), GaussRat(1));
    F exact = ext_d(form(ch2, {{"dx1", "sin(x2) + cos(x1 - x2)"}}));
    EXPECT_EQ(integrate_torus(exact), GaussRat(0));
}

TEST(Integrate, NonPeriodicIsRejected) {
    auto ch = make_chart(1);
    EXPECT_THROW(integrate_torus(form(ch, {{"dx1^dx2", "1"}})), NotExactlyIntegrable);
}

TEST(Integrate, TorusMeanAveragesSelectedAngles) {
    auto ch = make_chart(2, true);
    SE f = expr(ch, "cos(x1 + x3) + sin(x2) + 3");
    EXPECT_EQ(torus_mean(f, *ch, 0b0100), expr(ch, "sin(x2) + 3"));
}

TEST(MomentPairing, FlatTorusVanishesAndMeanIsChecked) {
    auto p = pair_of("flat_t4");
    auto ch = p.chart();
    EXPECT_TRUE(moment_pairing(p, expr(ch, "cos(x1) + sin(x2 - x3)")).value.is_zero());
    EXPECT_THROW(moment_pairing(p, expr(ch, "1 + cos(x1)")), NotMeanZero);
}

TEST(MomentDerivative, ZeroDirectionAndConstantFunction) {
    auto p = pair_of("flat_t4");
    auto ch = p.chart();
    std::vector<std::vector<SE>> zero(2, std::vector<SE>(2, SE(0)));
    auto r0 = moment_derivative_check(p, expr(ch, "cos(x1)"), compatible_direction(p, zero));
    EXPECT_EQ(r0.lhs, 0.0);
    EXPECT_EQ(r0.rhs, 0.0);
    std::vector<std::vector<SE>> c(2, std::vector<SE>(2, SE(0)));
    c[0][1] = expr(ch, "cos(x1)");
    auto r1 = moment_derivative_check(p, SE(0), compatible_direction(p, c));
    EXPECT_EQ(r1.rhs, 0.0);
    EXPECT_LT(std::abs(r1.lhs), 1e-9);
}
