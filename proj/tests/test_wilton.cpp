#include "cotan/wilton.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cotan;

TEST(Wilton, FixedPoints) {
    QuadraticIrrational golden(-1, 5, 2), silver(-1, 2, 1);
    EXPECT_NEAR(wilton(golden).value, 0.29740526367520326, 1e-12);
    EXPECT_NEAR(wilton(silver).value, 0.6232252401402303, 1e-12);
    EXPECT_NEAR(wilton(golden).value, wilton_fixed_point(golden.value()), 1e-12);
    EXPECT_NEAR(wilton(silver).value, wilton_fixed_point(silver.value()), 1e-12);
}

TEST(Wilton, DyadicInputTerminates) {
    auto w = wilton(0.5);
    EXPECT_NEAR(w.value, std::log(2.0), 1e-15);
    EXPECT_EQ(w.error_bound, 0.0);
    EXPECT_THROW(wilton(0.0), std::domain_error);
    EXPECT_THROW(wilton(1.0), std::domain_error);
}

TEST(Wilton, NeumannSumConverges) {
    QuadraticIrrational golden(-1, 5, 2);
    EXPECT_NEAR(neumann_sum(golden, 60), wilton(golden).value, 1e-10);
    EXPECT_NEAR(neumann_sum(golden, 0), std::log(1.0 / golden.value()), 1e-15);
}

TEST(GFunction, RationalValues) {
    auto g = g_rational(ReducedFraction(1, 3));
    EXPECT_NEAR(g.value, std::numbers::pi / 3.0 * c0_naive(ReducedFraction(1, 3)).value, 1e-12);
    EXPECT_NEAR(g.value, 0.2015, 1e-4);
    auto s = g_series(ReducedFraction(1, 3), 300000);
    EXPECT_NEAR(s.value, g.value, 1e-4);
}

TEST(GFunction, RealArgumentAgreesWithWiltonUpToBoundedError) {
    for (double x : {0.1234, 0.41421356, 0.61803398, 0.9}) {
        double d = std::abs(g_real(x).value - wilton(x).value);
        EXPECT_LT(d, 2.0) << x;
    }
}

TEST(BrunoTest, Verdicts) {
    std::vector<i64> ones(60, 1);
    EXPECT_EQ(bt_convergence_test(ones).kind, BTVerdictKind::converges);
    EXPECT_EQ(bt_convergence_test(continued_fraction(ReducedFraction(355, 1131))).kind, BTVerdictKind::converges);
    auto de = bt_convergence_test(doubly_exponential_stream());
    EXPECT_EQ(de.kind, BTVerdictKind::diverges);
    EXPECT_STREQ(bt_verdict_name(de.kind), "diverges");
}

TEST(Contraction, GaussOperator) {
    auto rep = mmy_contraction_check(8, 4000, 42);
    EXPECT_TRUE(rep.passed);
    ASSERT_EQ(rep.ratio.size(), 8u);
    auto again = mmy_contraction_check(8, 4000, 42);
    EXPECT_EQ(rep.ratio, again.ratio);
}

TEST(ALambda, AtOne) {
    auto a = a_lambda(1.0);
    EXPECT_NEAR(a.value, kLog2Pi - kEulerGamma, std::max(a.error_bound, 1e-6));
    EXPECT_THROW(a_lambda(-1.0), std::domain_error);
}

TEST(ALambda, BLSIdentityAtIrrational) {
    auto c = bls_identity_check(std::sqrt(2.0));
    EXPECT_LT(c.defect, std::max(c.bound, 1e-6));
}

TEST(Moments, FirstMomentIsFiveThirtySixths) {
    MCConfig c;
    c.samples = 200000;
    auto t = moments(2, c);
    ASSERT_EQ(t.entries.size(), 2u);
    EXPECT_NEAR(t.entries[0].H, kH1, 4.0 * t.entries[0].H_stderr);
    EXPECT_NEAR(t.entries[0].E, t.entries[0].H / 3.0, 1e-15);
    auto t2 = moments(2, c);
    EXPECT_EQ(t.entries[1].H, t2.entries[1].H);
}

TEST(Moments, StripFirstMoment) {
    auto sm = strip_moments(10007, 0.55, 0.95, {kH1});
    ASSERT_EQ(sm.rows.size(), 1u);
    EXPECT_NEAR(sm.rows[0].even / sm.rows[0].even_target, 1.0, 0.05);
    EXPECT_THROW(strip_moments(10007, 0.9, 0.5, {kH1}), std::domain_error);
}

TEST(FinalConstants, Equation) {
    EXPECT_NEAR(final_theorem_C_equation(1.0), -0.7329, 1e-4);
    auto fc = constants_final_theorem();
    EXPECT_NEAR(fc.C, 1.6021, 1e-4);
    EXPECT_TRUE(fc.constraint_violated);
    EXPECT_LT(std::abs(fc.residual_C), 1e-12);
}

TEST(Calibration, KappaIsMinusPi) {
    auto c = g_vasyunin_calibration(12, 200000);
    EXPECT_NEAR(c.kappa, -std::numbers::pi, 0.05);
}
