/**
 * @file zeta.hpp
 * @brief ζ(s) by Euler–Maclaurin summation (aimed at the critical line) and complex log-Gamma.
 */
#pragma once

#include "bernoulli.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cotan {

using cplx = std::complex<double>;

struct ZetaConfig {
    double t_max = 1e4;
    double rel_tol = 1e-16;
};

struct ZetaValue {
    cplx value;
    double error_estimate = 0.0;
    bool accuracy_warning = false;
};

/// ζ(s) for Re s > -10, s ≠ 1, by Euler–Maclaurin with an adaptive number of correction terms.
inline ZetaValue zeta_em(cplx s, const ZetaConfig& cfg = {}) {
    if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("zeta_em: pole at s = 1");
    const auto& B = BernoulliTable::instance();
    double t = std::abs(s.imag());
    int N = 12 + static_cast<int>(std::ceil(t / std::numbers::pi));
    cplx sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    double logN = std::log(static_cast<double>(N));
    cplx Nms = std::exp(-s * logN);
    sum += Nms * static_cast<double>(N) / (s - 1.0) + 0.5 * Nms;
    // term_k = B_2k/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    cplx rising = s;                  // s(s+1)...(s+2k-2)
    cplx power = Nms / static_cast<double>(N);  // N^{-s-1}
    double fact = 2.0;                // (2k)!
    double last = 0.0;
    ZetaValue out;
    int kmax = B.max_index() / 2 - 1;
    for (int k = 1; k <= kmax; ++k) {
        cplx term = B[2 * k] / fact * rising * power;
        sum += term;
        last = std::abs(term);
        if (last <= cfg.rel_tol * std::abs(sum)) break;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        power /= static_cast<double>(N) * N;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    out.value = sum;
    out.error_estimate = last + 4e-16 * N;
    out.accuracy_warning = t > cfg.t_max;
    return out;
}

/// ζ(1/2 + it); conjugate symmetry is enforced exactly.
inline cplx zeta_critical_line(double t, const ZetaConfig& cfg = {}) {
    if (t < 0) return std::conj(zeta_em(cplx(0.5, -t), cfg).value);
    return zeta_em(cplx(0.5, t), cfg).value;
}

inline ZetaValue zeta_critical_line_checked(double t, const ZetaConfig& cfg = {}) {
    ZetaValue v = zeta_em(cplx(0.5, std::abs(t)), cfg);
    if (t < 0) v.value = std::conj(v.value);
    return v;
}

/// log Γ(z) for Re z > 0 (continuous branch), Stirling after shifting Re z past 15.
inline cplx log_gamma(cplx z) {
    if (z.real() <= 0.0) throw std::domain_error("log_gamma: Re z must be positive");
    cplx shift = 0.0;
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const auto& B = BernoulliTable::instance();
    cplx res = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
    cplx zinv = 1.0 / z, zp = zinv, z2 = zinv * zinv;
    for (int k = 1; k <= 12; ++k) {
        res += B[2 * k] / (2.0 * k * (2.0 * k - 1.0)) * zp;
        zp *= z2;
    }
    return res - shift;
}

/// ζ(n) for even positive n from the Bernoulli numbers.
inline double zeta_even(int n) {
    if (n < 2 || n % 2) throw std::domain_error("zeta_even: n must be a positive even integer");
    const auto& B = BernoulliTable::instance();
    double v = std::abs(B[n]) * std::pow(2.0 * std::numbers::pi, n) / 2.0;
    for (int i = 2; i <= n; ++i) v /= i;
    return v;
}

}  // namespace cotan
