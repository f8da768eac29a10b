#include "cotan/estermann.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cotan;

namespace {
const double kZeta3 = 1.2020569031595942854;
}

TEST(Estermann, DivisorSeriesAtIntegerPoint) {
    auto p = estermann_series(cplx(3.0, 0.0), ReducedFraction(1, 1), 0, 100000);
    EXPECT_NEAR(p.value.real(), kZeta3 * kZeta3, p.tail_bound + 1e-12);
    EXPECT_NEAR(p.value.imag(), 0.0, 1e-14);
    EXPECT_LT(p.tail_bound, 1e-6);
}

TEST(Estermann, ConjugateFraction) {
    auto a = estermann_series(cplx(2.5, 1.0), ReducedFraction(1, 5), 0, 20000);
    auto b = estermann_series(cplx(2.5, -1.0), ReducedFraction(4, 5), 0, 20000);
    EXPECT_NEAR(a.value.real(), b.value.real(), 1e-12);
    EXPECT_NEAR(a.value.imag(), -b.value.imag(), 1e-12);
}

TEST(Estermann, RejectsOutsideConvergence) {
    EXPECT_THROW(estermann_series(cplx(2.0, 0.0), ReducedFraction(1, 3), 1, 100), std::domain_error);
    EXPECT_THROW(estermann_series(cplx(3.0, 0.0), ReducedFraction(1, 3), -1, 100), std::domain_error);
    EXPECT_THROW(estermann_series(cplx(3.0, 0.0), ReducedFraction(1, 3), 0, 0), std::domain_error);
}

TEST(CotDerivative, Polynomials) {
    auto p1 = cot_derivative_poly(1);  // -1 - c^2
    ASSERT_EQ(p1.size(), 3u);
    EXPECT_EQ(p1[0], -1);
    EXPECT_EQ(p1[1], 0);
    EXPECT_EQ(p1[2], -1);
    auto p2 = cot_derivative_poly(2);  // 2c + 2c^3
    ASSERT_GE(p2.size(), 4u);
    EXPECT_EQ(p2[1], 2);
    EXPECT_EQ(p2[3], 2);
}

TEST(Ishibashi, ClosedForms) {
    EXPECT_NEAR(ishibashi_value(ReducedFraction(1, 3), 1).real(), 1.0 / 24.0, 1e-16);
    cplx v = ishibashi_value(ReducedFraction(1, 3), 0);
    EXPECT_NEAR(v.real(), 0.25, 1e-15);
    EXPECT_NEAR(v.imag(), 1.0 / (6.0 * std::sqrt(3.0)), 1e-15);
    EXPECT_NEAR(ishibashi_value(ReducedFraction(0, 1), 0).real(), 0.25, 1e-16);
}

TEST(Ishibashi, MatchesC0) { EXPECT_LT(ishibashi_c0_crosscheck(60).max_defect, 1e-11); }
