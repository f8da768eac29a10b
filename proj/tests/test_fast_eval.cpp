#include "cotan/fast_eval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace cotan;

TEST(Reciprocity, DefectValues) {
    EXPECT_NEAR(reciprocity_defect(ReducedFraction(2, 3)), -0.35160503282177, 1e-12);
    // c_0(1/2) = 0 and c_0(0/1) = 0, so only -1/π remains
    EXPECT_NEAR(reciprocity_defect(ReducedFraction(1, 2)), -1.0 / std::numbers::pi, 1e-15);
}

TEST(PeriodFunction, ReferenceValues) {
    const auto& pf = PeriodFunction::instance();
    EXPECT_NEAR(pf(0.1), 3.325267046287841793, 1e-12);
    EXPECT_NEAR(pf(0.5), -1.0 / std::numbers::pi, 1e-13);
    EXPECT_NEAR(pf(1.0), -1.0 / std::numbers::pi, 1e-13);
    EXPECT_THROW(pf(0.0), std::domain_error);
    EXPECT_THROW(pf(1.5), std::domain_error);
}

TEST(PeriodFunction, MatchesReciprocityDefect) {
    const auto& pf = PeriodFunction::instance();
    for (i64 b = 2; b <= 40; ++b)
        for (i64 r = 1; r < b; ++r)
            if (gcd64(r, b) == 1) {
                double x = static_cast<double>(r) / b;
                EXPECT_NEAR(pf(x), reciprocity_defect(ReducedFraction(r, b)), 1e-10 + pf.error_bound(x)) << r << "/" << b;
            }
}

TEST(Psi, ModularRelationInUpperHalfPlane) {
    // ψ_a(s) = E(s) - s^{-(a+1)} E(-1/s); the relation is an identity, so ψ_a(-1/s) = -(-1/s)^{-(a+1)} ψ_a(s)
    cplx s(0.3, 0.8);
    auto p1 = psi(5, s);
    auto p2 = psi(5, -1.0 / s);
    cplx rhs = -std::pow(-1.0 / s, -6) * p1.value;
    EXPECT_LT(std::abs(p2.value - rhs), 1e-8 * (1.0 + std::abs(rhs)));
}

TEST(Psi, BoundaryMatchesDefect) {
    for (auto [r, b] : {std::pair<i64, i64>{1, 3}, {2, 5}, {3, 7}}) {
        double x = static_cast<double>(r) / b;
        auto bv = psi0_boundary(x);
        double d = reciprocity_defect(ReducedFraction(r, b));
        EXPECT_NEAR(bv.value.real(), 0.0, bv.error_bound + 1e-12);
        EXPECT_NEAR(bv.value.imag(), -2.0 * d, bv.error_bound + 1e-12);
    }
}

TEST(PsiConfig, Validation) {
    PsiSeriesConfig c;
    c.epsilon_ladder = {1e-3, 1e-2};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.extrapolation_order = 4;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.n_terms = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(FastC0, AgreesWithNaive) {
    for (i64 b : {3, 10, 97, 1000, 65537}) {
        for (i64 r : {1, 2, 3}) {
            if (gcd64(r, b) != 1 || r >= b) continue;
            ReducedFraction x(r, b);
            auto f = c0_fast(x), n = c0_naive(x);
            EXPECT_NEAR(f.value, n.value, f.error_bound + n.error_bound) << r << "/" << b;
        }
    }
    EXPECT_NEAR(c0_fast(ReducedFraction(1, 3)).value, 1.0 / (3.0 * std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(c0_fast(ReducedFraction(1, 2)).value, 0.0, c0_fast(ReducedFraction(1, 2)).error_bound);
}

TEST(FastC0, StepsAreLogarithmic) {
    std::mt19937_64 gen(3);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < 200; ++i) {
        i64 b = 2 + static_cast<i64>(gen() % 1'000'000'000'000ULL);
        i64 r = 1 + static_cast<i64>(gen() % (b - 1));
        if (gcd64(r, b) != 1) continue;
        auto d = c0_fast_detail(ReducedFraction(r, b));
        EXPECT_LE(d.steps, std::log(static_cast<double>(b)) / std::log(phi) + 2.0);
        EXPECT_TRUE(std::isfinite(d.sum.value));
    }
}

TEST(Asymptotic, OneOverB) {
    for (i64 b : {1000, 5000, 20000}) {
        double exact = c0_naive(ReducedFraction(1, b)).value;
        double main = c0_main_terms(1, b);
        EXPECT_NEAR(exact - main, 1.0 / std::numbers::pi, 1e-3) << b;
        auto a = c0_asymptotic(b, 1);
        EXPECT_NEAR(a.value, exact, std::max(a.error_bound, 1e-6));
    }
    EXPECT_THROW(c0_asymptotic(1, 0), std::domain_error);
    EXPECT_THROW(c0_asymptotic(4, 3), std::domain_error);
    EXPECT_THROW(c0_asymptotic(10, 1, 2), std::domain_error);
}

TEST(Asymptotic, FittedLinearCoefficientVanishesForROne) {
    std::vector<i64> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(static_cast<i64>(std::pow(10.0, 3.0 + 2.0 * i / 19.0)));
    auto f = fit_constants(1, 1, grid);
    EXPECT_LT(std::abs(f.C1), 3.0 * f.C1_stderr + 1e-12);
    EXPECT_NEAR(f.constant, 1.0 / std::numbers::pi, 1e-3);
    EXPECT_EQ(c1_reciprocity(1, 1), 0.0);
}

TEST(ShortInterval, StripBoundsAndScan) {
    auto [lo, hi] = strip_bounds(1009, 0.3, 0.4);
    EXPECT_LT(lo, hi);
    EXPECT_LE(hi, 1009);
    auto fast = max_scan(1009, 0.4, 0.3);
    auto naive = max_scan(1009, 0.4, 0.3, std::nullopt, true);
    EXPECT_EQ(fast.argmax, naive.argmax);
    EXPECT_NEAR(fast.M, naive.M, 1e-6 * std::abs(naive.M));
    EXPECT_GT(fast.observed_D, 0.0);
}

TEST(ShortInterval, Census) {
    auto c = cf_growth_census(1009, ThresholdKind::loglog);
    EXPECT_EQ(c.fractions, 1008);
    i64 total = 0;
    for (auto [k, v] : c.histogram) total += v;
    EXPECT_EQ(total, 1008);
    EXPECT_THROW(cf_growth_census(50, ThresholdKind::eps_log), std::domain_error);
}

TEST(Bench, RecordsBothMethods) {
    auto recs = bench_c0({1009});
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_NEAR(recs[0].value, recs[1].value, recs[0].error_bound + recs[1].error_bound + 1e-12);
}
