#include "cotan/nyman_beurling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cotan;

TEST(Gram, ClosedFormValues) {
    EXPECT_NEAR(gram_entry(1, 1), kLog2Pi - kEulerGamma, 1e-15);
    EXPECT_DOUBLE_EQ(gram_entry(2, 3), gram_entry(3, 2));
    EXPECT_DOUBLE_EQ(gram_entry(2, 4), gram_entry(1, 2));  // depends on r/b only
    EXPECT_THROW(gram_entry(0, 1), std::domain_error);
}

TEST(Gram, LinearTerm) {
    EXPECT_NEAR(linear_term(1), 1.0 - kEulerGamma, 1e-16);
    EXPECT_NEAR(linear_term(2), 0.55797, 1e-5);
    EXPECT_THROW(linear_term(0), std::domain_error);
}

TEST(Gram, QuadratureAgreesWithClosedForm) {
    for (auto [r, b] : {std::pair<i64, i64>{1, 1}, {1, 2}, {2, 3}, {3, 5}}) {
        auto q = gram_quadrature_check(r, b);
        EXPECT_TRUE(q.within_tol) << r << "," << b << " defect " << q.relative_defect;
    }
    EXPECT_TRUE(linear_term_quadrature_check(3).within_tol);
}

TEST(Distance, VnCoefficients) {
    auto a = vn_coefficients(4);
    ASSERT_EQ(a.size(), 4u);
    EXPECT_DOUBLE_EQ(a[0], 1.0);
    EXPECT_NEAR(a[1], -0.5, 1e-15);
    EXPECT_NEAR(a[2], -0.20752, 1e-5);
    EXPECT_EQ(a[3], 0.0);
    EXPECT_THROW(vn_coefficients(1), std::domain_error);
}

TEST(Distance, OneTerm) {
    auto gs = d_squared(1, DKind::optimal);
    EXPECT_NEAR(gs.d2, 0.85821205139551093, 1e-12);
    EXPECT_THROW(d_squared(1, DKind::v_n_polynomial), std::domain_error);
}

TEST(Distance, OptimalIsMonotoneAndBelowVn) {
    auto full = assemble_gram(60);
    auto seq = optimal_d2_sequence(full);
    ASSERT_EQ(seq.size(), 60u);
    for (std::size_t i = 1; i < seq.size(); ++i) EXPECT_LE(seq[i], seq[i - 1] + 1e-12);
    for (int N : {2, 10, 30, 60}) {
        auto opt = d_squared_from(full, N, DKind::optimal);
        auto vn = d_squared_from(full, N, DKind::v_n_polynomial);
        EXPECT_NEAR(opt.d2, seq[N - 1], 1e-10);
        EXPECT_LE(opt.d2, vn.d2 + 1e-12);
        EXPECT_GT(opt.d2, 0.0);
        EXPECT_GT(opt.min_eigenvalue, 0.0);
    }
}

TEST(Distance, BCFReport) {
    auto rep = bcf_asymptotic_report({10, 20});
    ASSERT_EQ(rep.rows.size(), 2u);
    EXPECT_NEAR(rep.constant, 2.0 + kEulerGamma - std::log(4.0 * std::numbers::pi), 1e-15);
    EXPECT_LT(rep.rows[1].d2_opt, rep.rows[0].d2_opt);
    EXPECT_THROW(bcf_asymptotic_report({5}), std::domain_error);
}
