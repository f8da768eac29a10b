/**
 * @file bernoulli.hpp
 * @brief Exact Bernoulli numbers (B_1 = -1/2), Bernoulli polynomials and ζ(-a, x).
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cotan {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline bigint binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    bigint c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

class BernoulliTable {
public:
    static constexpr int kMax = 120;

    static const BernoulliTable& instance() {
        static const BernoulliTable table;
        return table;
    }

    int max_index() const { return kMax; }

    const rational& exact(int n) const {
        check(n);
        return exact_[n];
    }

    double operator[](int n) const {
        check(n);
        return approx_[n];
    }

    /// B_n(x) = Σ_k C(n,k) B_k x^{n-k}, Horner in x.
    double polynomial(int n, double x) const {
        check(n);
        const auto& c = poly_coeffs_[n];
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc = acc * x + c[k];
        return acc;
    }

    long double polynomial_ld(int n, long double x) const {
        check(n);
        const auto& c = poly_coeffs_ld_[n];
        long double acc = 0.0L;
        for (int k = 0; k <= n; ++k) acc = acc * x + c[k];
        return acc;
    }

    rational polynomial_exact(int n, const rational& x) const {
        check(n);
        rational acc = 0;
        for (int k = 0; k <= n; ++k) acc = acc * x + rational(binomial(n, k)) * exact_[k];
        return acc;
    }

private:
    BernoulliTable() : exact_(kMax + 1), approx_(kMax + 1), poly_coeffs_(kMax + 1), poly_coeffs_ld_(kMax + 1) {
        exact_[0] = 1;
        for (int n = 1; n <= kMax; ++n) {
            if (n > 1 && n % 2 == 1) {
                exact_[n] = 0;
                continue;
            }
            rational s = 0;
            for (int k = 0; k < n; ++k) s += rational(binomial(n + 1, k)) * exact_[k];
            exact_[n] = -s / (n + 1);
        }
        for (int n = 0; n <= kMax; ++n) {
            approx_[n] = exact_[n].convert_to<double>();
            poly_coeffs_[n].resize(n + 1);
            poly_coeffs_ld_[n].resize(n + 1);
            for (int k = 0; k <= n; ++k) {
                rational c = rational(binomial(n, k)) * exact_[k];
                poly_coeffs_[n][k] = c.convert_to<double>();
                poly_coeffs_ld_[n][k] = c.convert_to<long double>();
            }
        }
    }

    static void check(int n) {
        if (n < 0 || n > kMax) throw std::out_of_range("BernoulliTable: index out of range");
    }

    std::vector<rational> exact_;
    std::vector<double> approx_;
    std::vector<std::vector<double>> poly_coeffs_;
    std::vector<std::vector<long double>> poly_coeffs_ld_;
};

/// ζ(-a, x) = -B_{a+1}(x)/(a+1) for integer a ≥ 0.
inline double hurwitz_zeta_neg(int a, double x) {
    if (a < 0) throw std::domain_error("hurwitz_zeta_neg: a must be >= 0");
    return -BernoulliTable::instance().polynomial(a + 1, x) / (a + 1);
}

inline long double hurwitz_zeta_neg_ld(int a, long double x) {
    if (a < 0) throw std::domain_error("hurwitz_zeta_neg: a must be >= 0");
    return -BernoulliTable::instance().polynomial_ld(a + 1, x) / (a + 1);
}

/// ζ(-a) for integer a ≥ 0.
inline double zeta_neg_int(int a) {
    if (a < 0) throw std::domain_error("zeta_neg_int: a must be >= 0");
    if (a == 0) return -0.5;
    rational v = -BernoulliTable::instance().exact(a + 1) / (a + 1);
    return v.convert_to<double>();
}

}  // namespace cotan
