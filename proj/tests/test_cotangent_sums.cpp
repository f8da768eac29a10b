#include "cotan/cotangent_sums.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cotan;

namespace {
const double kC013 = 1.0 / (3.0 * std::sqrt(3.0));  // c_0(1/3)
}

TEST(C0Naive, SmallValues) {
    EXPECT_EQ(c0_naive(ReducedFraction(1, 2)).value, 0.0);
    EXPECT_NEAR(c0_naive(ReducedFraction(1, 3)).value, kC013, 1e-16);
    EXPECT_NEAR(c0_naive(ReducedFraction(2, 3)).value, -kC013, 1e-16);
    EXPECT_NEAR(c0_naive(ReducedFraction(1, 3)).value, 0.19245008972987526, 1e-16);
}

TEST(C0Naive, BoundCoversDoubleVsExtended) {
    for (i64 b : {101, 997, 10007}) {
        ReducedFraction x(3, b);
        auto e = c0_naive(x, Precision::extended), d = c0_naive(x, Precision::double_);
        EXPECT_LE(std::abs(e.value - d.value), e.error_bound + d.error_bound) << b;
        EXPECT_GT(e.error_bound, 0.0);
    }
}

TEST(C0Naive, OddSymmetry) {
    auto all = c0_naive_all(1021);
    for (i64 r = 1; r < 1021; ++r) EXPECT_NEAR(all[r] + all[1021 - r], 0.0, 1e-11);
}

TEST(C0Naive, RejectsDenominatorOne) { EXPECT_THROW(c0_naive(ReducedFraction(0, 1)), std::domain_error); }

TEST(Vasyunin, HandValues) {
    EXPECT_NEAR(vasyunin(ReducedFraction(1, 2)).value, 0.0, 1e-16);
    EXPECT_NEAR(vasyunin(ReducedFraction(1, 3)).value, -kC013, 1e-15);
    EXPECT_NEAR(vasyunin(ReducedFraction(2, 3)).value, kC013, 1e-15);
}

TEST(Vasyunin, IdentityWithC0) {
    EXPECT_LT(vasyunin_c0_identity_check(3).max_defect, 1e-12);
    auto rep = vasyunin_c0_identity_check(50);
    EXPECT_LT(rep.max_defect, 1e-10);
    EXPECT_EQ(rep.count, 773);  // reduced r/b with 2 <= b <= 50, 1 <= r < b
    EXPECT_EQ(vasyunin_c0_identity_check(2).max_defect, 0.0);
}

TEST(QSum, Identity) {
    for (i64 b : {5, 12, 97}) EXPECT_EQ(q_sum(ReducedFraction(1, b)).value, 0.0);
    EXPECT_NEAR(q_sum(ReducedFraction(2, 3)).value, 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(c0_via_q(ReducedFraction(2, 3)).value, -kC013, 1e-15);
    for (i64 b = 2; b <= 60; ++b)
        for (i64 r = 1; r < b; ++r)
            if (gcd64(r, b) == 1)
                EXPECT_NEAR(c0_via_q(ReducedFraction(r, b)).value, c0_naive(ReducedFraction(r, b)).value, 1e-10);
}

TEST(Dedekind, Values) {
    EXPECT_EQ(dedekind_exact(ReducedFraction(1, 3)), rational(1, 18));
    EXPECT_EQ(dedekind_exact(ReducedFraction(2, 3)), rational(-1, 18));
    EXPECT_EQ(dedekind_exact(ReducedFraction(5, 1)), rational(0));
    EXPECT_NEAR(dedekind_cotprod(ReducedFraction(1, 3)).value, 1.0 / 18.0, 1e-16);
}

TEST(Dedekind, FormsAgree) {
    for (i64 b = 2; b <= 80; ++b)
        for (i64 r = 1; r < b; ++r)
            if (gcd64(r, b) == 1)
                EXPECT_NEAR(dedekind_sawtooth(ReducedFraction(r, b)).value, dedekind_cotprod(ReducedFraction(r, b)).value, 1e-12);
}

TEST(Dedekind, Reciprocity) {
    EXPECT_EQ(dedekind_reciprocity_check(2, 3), 0.0);
    EXPECT_EQ(dedekind_reciprocity_check(1, 2), 0.0);
    std::mt19937_64 gen(7);
    int done = 0;
    while (done < 500) {
        i64 r = 1 + static_cast<i64>(gen() % 1000), b = 1 + static_cast<i64>(gen() % 1000);
        if (gcd64(r, b) != 1) continue;
        EXPECT_LT(dedekind_reciprocity_check(r, b), 1e-9);
        ++done;
    }
    EXPECT_THROW(dedekind_reciprocity_check(2, 4), std::domain_error);
}

TEST(CA, GeneralizedSums) {
    for (i64 b = 2; b <= 100; ++b)
        for (i64 r = 1; r < b; ++r)
            if (gcd64(r, b) == 1)
                EXPECT_NEAR(c_a(ReducedFraction(r, b), 0).value, c0_naive(ReducedFraction(r, b)).value, 1e-11);
    EXPECT_NEAR(c_minus1(ReducedFraction(1, 3)).value, 2.0 * std::numbers::pi / 18.0, 1e-14);
    for (int a : {0, 1, 2, 5}) EXPECT_NEAR(c_a(ReducedFraction(1, 2), a).value, 0.0, 1e-16);
}

TEST(FractionalSeries, ConvergesToC0) {
    auto v3 = c0_fractional_series(3, 200000);
    EXPECT_NEAR(v3.value, kC013, v3.error_bound);
    EXPECT_LT(v3.error_bound, 1e-5);
    EXPECT_NEAR(c0_fractional_series(2, 1000).value, 0.0, 1e-12);
    auto v5 = c0_fractional_series(5, 10000);
    EXPECT_NEAR(v5.value, c0_naive(ReducedFraction(1, 5)).value, v5.error_bound);
}

TEST(SSum, ExactValues) {
    EXPECT_EQ(s_sum(10, 3), rational(96, 7));
    EXPECT_EQ(s_sum(6, 7), rational(0));
    rational brute = 0;
    for (i64 a = 1; a <= 100; ++a) brute += rational(a / 7, a);
    EXPECT_EQ(s_sum(100, 7), brute * 14);
}
