/**
 * @file estermann.hpp
 * @brief Estermann zeta E(s, r/b, α) from its Dirichlet series, and closed forms at s = 0.
 */
#pragma once

#include "bernoulli.hpp"
#include "cotangent_sums.hpp"
#include "fast_eval.hpp"
#include "numtheory.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cotan {

struct EstermannPoint {
    cplx s;
    ReducedFraction x;
    int alpha = 0;
    cplx value;
    double tail_bound = 0.0;
};

namespace detail {

// log of sup_n d(n)/n^δ = Σ_p log max_k (k+1) p^{-kδ}; only primes p < 2^{1/δ} contribute.
inline double log_divisor_constant(double delta) {
    double plim = std::pow(2.0, 1.0 / delta);
    if (plim > 5e7) return std::numeric_limits<double>::infinity();
    i64 P = static_cast<i64>(plim) + 1;
    std::vector<bool> comp(P + 1, false);
    double acc = 0.0;
    for (i64 p = 2; p <= P; ++p) {
        if (comp[p]) continue;
        for (i64 q = p * p; q <= P; q += p) comp[q] = true;
        double lp = std::log(static_cast<double>(p)), best = 0.0;
        for (int k = 1; k < 400; ++k) {
            double v = std::log(k + 1.0) - k * delta * lp;
            if (v > best) best = v;
            if (v < best - 5.0) break;
        }
        acc += best;
    }
    return acc;
}

}  // namespace detail

/// Σ_{n ≤ N} σ_α(n) e^{2πinr/b} n^{-s}, valid for Re s > α + 1.1.
/// Tail: σ_α(n) ≤ n^α d(n) ≤ C_δ n^{α+δ}, then the integral test.
inline EstermannPoint estermann_series(cplx s, const ReducedFraction& x, int alpha, i64 N) {
    if (alpha < 0) throw std::domain_error("estermann_series: alpha must be >= 0");
    if (N < 1) throw std::domain_error("estermann_series: N must be >= 1");
    const double sigma = s.real();
    if (!(sigma > alpha + 1.1)) throw std::domain_error("estermann_series: need Re s > alpha + 1.1");
    EstermannPoint out{s, x, alpha, 0.0, 0.0};
    auto sig = detail::SigmaCache::instance().get(alpha, N);
    const i64 b = x.b(), r = x.r() % b;
    std::complex<long double> acc = 0.0L;
    i64 k = 0;
    for (i64 n = 1; n <= N; ++n) {
        k += r;
        if (k >= b) k -= b;
        long double ph = 2.0L * kPiL * static_cast<long double>(k) / static_cast<long double>(b);
        long double ln = std::log(static_cast<long double>(n));
        std::complex<long double> ns = std::exp(-std::complex<long double>(sigma, s.imag()) * ln);
        acc += static_cast<long double>((*sig)[n]) * std::polar(1.0L, ph) * ns;
    }
    out.value = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    // minimize the tail bound over δ in (0, σ - α - 1)
    const double room = sigma - alpha - 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 19; ++j) {
        double delta = room * j / 20.0;
        double lc = detail::log_divisor_constant(delta);
        if (!std::isfinite(lc)) continue;
        double ex = 1.0 + alpha + delta - sigma;  // < 0
        double lb = lc + ex * std::log(static_cast<double>(N)) - std::log(-ex);
        best = std::min(best, std::exp(lb));
    }
    out.tail_bound = best;
    return out;
}

/// Coefficients of the polynomial P_n with d^n/dθ^n cot θ = P_n(cot θ); P_0 = c, P_{n+1} = P_n'(c)(-1 - c^2).
inline std::vector<bigint> cot_derivative_poly(int n) {
    if (n < 0) throw std::domain_error("cot_derivative_poly: n must be >= 0");
    std::vector<bigint> p{0, 1};
    for (int k = 0; k < n; ++k) {
        std::vector<bigint> q(p.size() + 1, 0);
        for (std::size_t j = 1; j < p.size(); ++j) {
            bigint d = p[j] * static_cast<long>(j);  // coefficient of c^{j-1} in P'
            q[j - 1] -= d;
            q[j + 1] -= d;
        }
        while (q.size() > 1 && q.back() == 0) q.pop_back();
        p = std::move(q);
    }
    return p;
}

/// E(0, r/b, α) from the closed forms: cotangent-derivative sum for even α (b ≥ 2), Bernoulli numbers for
/// odd α, and the special case r = b = 1.
inline cplx ishibashi_value(const ReducedFraction& x, int alpha) {
    if (alpha < 0) throw std::domain_error("ishibashi_value: alpha must be >= 0");
    const auto& B = BernoulliTable::instance();
    if (x.b() == 1) {
        double sgn = (alpha + 1) % 2 == 0 ? 1.0 : -1.0;
        return sgn * B[alpha + 1] / (2.0 * (alpha + 1));
    }
    if (alpha % 2 == 1) return B[alpha + 1] / (2.0 * (alpha + 1));
    const auto poly = cot_derivative_poly(alpha);
    std::vector<long double> c(poly.size());
    for (std::size_t j = 0; j < poly.size(); ++j) c[j] = poly[j].convert_to<long double>();
    const i64 b = x.b(), r = x.r() % b;
    long double acc = 0.0L;
    i64 k = 0;
    for (i64 m = 1; m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        long double ct = cot_pi_frac(k, b), pv = 0.0L;
        for (std::size_t j = c.size(); j-- > 0;) pv = pv * ct + c[j];
        acc += static_cast<long double>(m) / static_cast<long double>(b) * pv;
    }
    // (-i/2)^{α+1} with α even: (-1)^{α/2} (-i) / 2^{α+1}
    double mag = std::ldexp(1.0, -(alpha + 1)) * ((alpha / 2) % 2 == 0 ? 1.0 : -1.0);
    cplx v(0.0, -mag * static_cast<double>(acc));
    if (alpha == 0) v += 0.25;
    return v;
}

/// max |ishibashi_value(r/b, 0) - (1/4 + (i/2) c_0(r/b))| over reduced fractions with 2 ≤ b ≤ b_max.
inline IdentityReport ishibashi_c0_crosscheck(i64 b_max) {
    IdentityReport rep;
    for (i64 b = 2; b <= b_max; ++b) {
        for (i64 r = 1; r < b; ++r) {
            if (gcd64(r, b) != 1) continue;
            ReducedFraction x(r, b);
            cplx lhs = ishibashi_value(x, 0);
            cplx rhs(0.25, 0.5 * c0_naive(x).value);
            rep.record(std::abs(lhs - rhs), r, b);
        }
    }
    return rep;
}

}  // namespace cotan
