/**
 * @file euler_maclaurin.hpp
 * @brief Generalized Euler summation with the periodic-Bernoulli remainder r_N(f, Z).
 */
#pragma once

#include "bernoulli.hpp"
#include "numtheory.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cotan {

struct EulerMaclaurinResult {
    double sum = 0.0;          // right-hand side including r_N; equals Σ_{ν=0}^{Z} f(ν)
    double remainder = 0.0;    // r_N(f, Z)
    double integral = 0.0;     // ∫_0^Z f
    double boundary = 0.0;     // (f(0) + f(Z))/2
    double corrections = 0.0;  // Σ_j B_2j/(2j)! (f^{(2j-1)}(Z) - f^{(2j-1)}(0))
    double quad_error = 0.0;
};

/// (u + B)^{(n)} := Σ_j C(n,j) u^j B_{n-j}, i.e. the Bernoulli polynomial B_n(u).
inline double bernoulli_kernel(int n, double frac) { return BernoulliTable::instance().polynomial(n, frac); }

/// f(order, u) must return the order-th derivative of f at u, for 0 ≤ order ≤ 2N+1.
template <class F>
EulerMaclaurinResult euler_maclaurin_sum(F&& f, i64 Z, int N, double tol = 1e-12) {
    if (N < 1) throw std::invalid_argument("euler_maclaurin_sum: N must be >= 1");
    if (Z < 0) throw std::invalid_argument("euler_maclaurin_sum: Z must be >= 0");
    const auto& B = BernoulliTable::instance();
    if (2 * N + 1 > B.max_index()) throw std::invalid_argument("euler_maclaurin_sum: N too large");
    EulerMaclaurinResult r;
    r.boundary = 0.5 * (f(0, 0.0) + f(0, static_cast<double>(Z)));
    double fact = 1.0;
    for (int j = 1; j <= N; ++j) {
        fact *= (2.0 * j - 1.0) * (2.0 * j);
        r.corrections += B[2 * j] / fact * (f(2 * j - 1, static_cast<double>(Z)) - f(2 * j - 1, 0.0));
    }
    double fact_p = fact * (2.0 * N + 1.0);
    const int p = 2 * N + 1;
    // Both integrands are smooth on each [k, k+1]; the kernel jumps only at integers.
    double per_tol = tol / static_cast<double>(Z > 0 ? Z : 1);
    for (i64 k = 0; k < Z; ++k) {
        double a = static_cast<double>(k), b = a + 1.0;
        auto qi = adaptive_simpson([&](double u) { return f(0, u); }, a, b, per_tol);
        auto qr = adaptive_simpson(
            [&](double u) { return bernoulli_kernel(p, u - a) * f(p, u); }, a, b, per_tol);
        r.integral += qi.value;
        r.remainder += qr.value;
        r.quad_error += qi.error_estimate + qr.error_estimate / fact_p;
    }
    r.remainder /= fact_p;
    r.sum = r.boundary + r.integral + r.corrections + r.remainder;
    return r;
}

}  // namespace cotan
