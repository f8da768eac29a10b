#include "cotan/bernoulli.hpp"
#include "cotan/euler_maclaurin.hpp"
#include "cotan/numtheory.hpp"
#include "cotan/quadrature.hpp"
#include "cotan/zeta.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace cotan;

TEST(ReducedFraction, ReducesAndValidates) {
    ReducedFraction x(6, 8);
    EXPECT_EQ(x.r(), 3);
    EXPECT_EQ(x.b(), 4);
    EXPECT_THROW(ReducedFraction(1, 0), std::invalid_argument);
    EXPECT_THROW(ReducedFraction(-1, 3), std::invalid_argument);
    EXPECT_THROW(ReducedFraction::coprime(2, 4), std::invalid_argument);
    EXPECT_THROW(ReducedFraction(1, kMaxDenominator), std::invalid_argument);
}

TEST(ModInverse, SmallCases) {
    EXPECT_EQ(mod_inverse(3, 7), 5);
    EXPECT_EQ(mod_inverse(2, 3), 2);
    for (i64 b : {2, 5, 97, 1000003}) EXPECT_EQ(mod_inverse(1, b), 1);
    EXPECT_THROW(mod_inverse(2, 4), std::domain_error);
}

TEST(ModInverse, LargeModulusUses128BitProducts) {
    const i64 b = (i64{1} << 61) - 1;
    i64 r = 123456789012345;
    i64 inv = mod_inverse(r, b);
    EXPECT_EQ(mulmod(r, inv, b), 1);
}

TEST(ContinuedFraction, FiveSevenths) {
    auto cf = continued_fraction(ReducedFraction(5, 7));
    EXPECT_EQ(cf.quotients, (std::vector<i64>{0, 1, 2, 2}));
    ASSERT_EQ(cf.convergents.size(), 4u);
    EXPECT_EQ(cf.convergents[1].u, 1);
    EXPECT_EQ(cf.convergents[1].v, 1);
    EXPECT_EQ(cf.convergents[2].u, 2);
    EXPECT_EQ(cf.convergents[2].v, 3);
    EXPECT_EQ(cf.convergents[3].u, 5);
    EXPECT_EQ(cf.convergents[3].v, 7);
}

TEST(ContinuedFraction, OneOverBAndReconstruction) {
    auto cf = continued_fraction(ReducedFraction(1, 9));
    EXPECT_EQ(cf.quotients, (std::vector<i64>{0, 9}));
    auto c2 = continued_fraction(ReducedFraction(17, 12));
    EXPECT_EQ(c2.quotients, (std::vector<i64>{1, 2, 2, 2}));
    EXPECT_EQ(c2.reconstruct(), ReducedFraction(17, 12));
}

TEST(GaussMap, GoldenRatioIsFixed) {
    QuadraticIrrational g(-1, 5, 2);
    auto orb = gauss_map_orbit(g, 20);
    const double x = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t k = 1; k < orb.size(); ++k) {
        EXPECT_EQ(orb[k].a, 1);
        EXPECT_NEAR(orb[k].alpha, x, 1e-15);
    }
}

TEST(GaussMap, SqrtTwoMinusOneHasQuotientTwo) {
    auto orb = gauss_map_orbit(QuadraticIrrational(-1, 2, 1), 20);
    for (std::size_t k = 1; k < orb.size(); ++k) EXPECT_EQ(orb[k].a, 2);
}

TEST(GaussMap, OneThirdTerminates) {
    auto orb = gauss_map_orbit(ReducedFraction(1, 3), 10);
    ASSERT_GE(orb.size(), 2u);
    EXPECT_EQ(orb[1].a, 3);
    EXPECT_EQ(orb[1].alpha, 0.0);
}

TEST(Arithmetical, Values) {
    auto v12 = arithmetical(12, 1.0);
    EXPECT_EQ(v12.mu, 0);
    EXPECT_EQ(v12.phi, 4);
    EXPECT_DOUBLE_EQ(v12.sigma, 28.0);
    EXPECT_DOUBLE_EQ(arithmetical(12, 0.0).sigma, 6.0);
    auto v30 = arithmetical(30, 1.0);
    EXPECT_EQ(v30.mu, -1);
    EXPECT_EQ(v30.phi, 8);
    EXPECT_DOUBLE_EQ(v30.sigma, 72.0);
    auto v1 = arithmetical(1, 2.5);
    EXPECT_EQ(v1.mu, 1);
    EXPECT_EQ(v1.phi, 1);
    EXPECT_DOUBLE_EQ(v1.sigma, 1.0);
}

TEST(Arithmetical, SievesAgreeWithDirect) {
    auto mu = mobius_sieve(500);
    auto phi = totient_sieve(500);
    for (i64 n = 1; n <= 500; ++n) {
        EXPECT_EQ(mu[n], mobius(n)) << n;
        EXPECT_EQ(phi[n], totient(n)) << n;
    }
}

TEST(Bernoulli, HurwitzAtNegativeIntegers) {
    for (double x : {0.1, 0.37, 0.9}) EXPECT_NEAR(hurwitz_zeta_neg(0, x), 0.5 - x, 1e-15);
    EXPECT_NEAR(hurwitz_zeta_neg(1, 1.0), -1.0 / 12.0, 1e-15);
    EXPECT_EQ(hurwitz_zeta_neg(0, 0.5), 0.0);
    EXPECT_DOUBLE_EQ(zeta_neg_int(1), -1.0 / 12.0);
    EXPECT_DOUBLE_EQ(zeta_neg_int(3), 1.0 / 120.0);
    EXPECT_EQ(zeta_neg_int(2), 0.0);
}

TEST(Zeta, CriticalLine) {
    EXPECT_NEAR(zeta_critical_line(0.0).real(), -1.4603545088095868, 1e-12);
    EXPECT_LT(std::abs(zeta_critical_line(14.134725)), 1e-4);
    cplx a = zeta_critical_line(23.7), b = zeta_critical_line(-23.7);
    EXPECT_NEAR(a.real(), b.real(), 1e-13);
    EXPECT_NEAR(a.imag(), -b.imag(), 1e-13);
}

TEST(Zeta, EvenValues) { EXPECT_NEAR(zeta_even(2), std::numbers::pi * std::numbers::pi / 6.0, 1e-15); }

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
    GaussLegendreRule gl(8);
    double v = gl.integrate([](double x) { return std::pow(x, 15) + 3 * x * x; }, 0.0, 2.0);
    EXPECT_NEAR(v, std::pow(2.0, 16) / 16.0 + 8.0, 1e-9);
}

TEST(Quadrature, AdaptiveSimpson) {
    auto q = adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 3.0, 1e-12);
    EXPECT_NEAR(q.value, 0.886207348259521, 1e-10);
}

TEST(EulerMaclaurin, SquareIsExact) {
    auto f = [](int k, double u) { return k == 0 ? u * u : k == 1 ? 2 * u : k == 2 ? 2.0 : 0.0; };
    auto r = euler_maclaurin_sum(f, 10, 1);
    EXPECT_NEAR(r.sum, 385.0, 1e-9);
    EXPECT_NEAR(r.remainder, 0.0, 1e-9);
}

TEST(EulerMaclaurin, Constant) {
    auto f = [](int k, double) { return k == 0 ? 2.5 : 0.0; };
    EXPECT_NEAR(euler_maclaurin_sum(f, 7, 2).sum, 20.0, 1e-12);
}

TEST(EulerMaclaurin, HarmonicTail) {
    auto f = [](int k, double u) {
        double s = (k % 2 ? -1.0 : 1.0);
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return s * fact / std::pow(u + 1.0, k + 1);
    };
    double direct = 0.0;
    for (int v = 0; v <= 100; ++v) direct += 1.0 / (v + 1.0);
    EXPECT_NEAR(euler_maclaurin_sum(f, 100, 3).sum, direct, 1e-10);
}
