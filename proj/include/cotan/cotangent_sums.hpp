/**
 * @file cotangent_sums.hpp
 * @brief Direct evaluation of c_0, the Vasyunin sum, Q, Dedekind sums, c_a and S(L;b),
 *        plus identity checks that serve as oracles for the faster paths.
 */
#pragma once

#include "bernoulli.hpp"
#include "numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan {

enum class Method { naive, fast, asymptotic, series };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::fast: return "fast";
        case Method::asymptotic: return "asymptotic";
        case Method::series: return "series";
    }
    return "?";
}

enum class Precision { double_, extended };

struct SumValue {
    double value = 0.0;
    Method method = Method::naive;
    double error_bound = 0.0;
};

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// cot(π k / b) for 0 < k < b, reduced to the half period so that cot(π(b-k)/b) = -cot(πk/b) exactly.
inline long double cot_pi_frac(i64 k, i64 b) {
    bool neg = false;
    if (2 * static_cast<i128>(k) > b) {
        k = b - k;
        neg = true;
    }
    long double th = kPiL * static_cast<long double>(k) / static_cast<long double>(b);
    long double c = std::cos(th) / std::sin(th);
    return neg ? -c : c;
}

inline double cot_pi_frac_d(i64 k, i64 b) {
    bool neg = false;
    if (2 * static_cast<i128>(k) > b) {
        k = b - k;
        neg = true;
    }
    double th = std::numbers::pi * static_cast<double>(k) / static_cast<double>(b);
    double c = std::cos(th) / std::sin(th);
    return neg ? -c : c;
}

inline bigint to_bigint(i128 v) {
    bool neg = v < 0;
    u128 mag = neg ? static_cast<u128>(0) - static_cast<u128>(v) : static_cast<u128>(v);
    bigint out = static_cast<u64>(mag >> 64);
    out <<= 64;
    out += static_cast<u64>(mag);
    return neg ? bigint(-out) : out;
}

namespace detail {
inline void require_b2(const ReducedFraction& x, const char* who) {
    if (x.b() < 2) throw std::domain_error(std::string(who) + ": denominator must be >= 2");
}
}  // namespace detail

/// c_0(r/b) = -Σ_{m=1}^{b-1} (m/b) cot(π m r / b), with m paired against b-m.
inline SumValue c0_naive(const ReducedFraction& x, Precision prec = Precision::extended) {
    detail::require_b2(x, "c0_naive");
    const i64 b = x.b(), r = x.r() % b;
    long double acc = 0.0L, mag = 0.0L;
    i64 k = 0;
    for (i64 m = 1; 2 * m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        long double w = static_cast<long double>(b - 2 * m) / static_cast<long double>(b);
        long double t = w * (prec == Precision::extended ? cot_pi_frac(k, b) : static_cast<long double>(cot_pi_frac_d(k, b)));
        acc += t;
        mag += std::abs(t);
    }
    // a few ulps per cot, plus worst-case linear growth of the summation error
    const double u = prec == Precision::extended ? 1.1e-19 : 2.3e-16;
    double err = static_cast<double>(mag) * (8.0 * u + 1.1e-19 * 0.5 * static_cast<double>(b)) +
                 2.3e-16 * std::abs(static_cast<double>(acc));
    return {static_cast<double>(acc), Method::naive, err};
}

/// c_0(r/b) for every r in [0,b); entries with gcd(r,b) > 1 are NaN.
inline std::vector<double> c0_naive_all(i64 b) {
    if (b < 2) throw std::domain_error("c0_naive_all: denominator must be >= 2");
    std::vector<long double> cot(b);
    cot[0] = 0.0L;
    for (i64 k = 1; k < b; ++k) cot[k] = (2 * k > b) ? -cot[b - k] : cot_pi_frac(k, b);
    std::vector<long double> w((b + 1) / 2);
    for (i64 m = 1; 2 * m < b; ++m) w[m] = static_cast<long double>(b - 2 * m) / static_cast<long double>(b);
    std::vector<double> out(b, std::numeric_limits<double>::quiet_NaN());
    for (i64 r = 1; r < b; ++r) {
        if (gcd64(r, b) != 1) continue;
        if (2 * r > b && !std::isnan(out[b - r])) {
            out[r] = -out[b - r];
            continue;
        }
        long double acc = 0.0L;
        i64 k = 0;
        for (i64 m = 1; 2 * m < b; ++m) {
            k += r;
            if (k >= b) k -= b;
            acc += w[m] * cot[k];
        }
        out[r] = static_cast<double>(acc);
    }
    return out;
}

/// V(r/b) = Σ_{m=1}^{b-1} {mr/b} cot(π m / b).
inline SumValue vasyunin(const ReducedFraction& x) {
    detail::require_b2(x, "vasyunin");
    const i64 b = x.b(), r = x.r() % b;
    long double acc = 0.0L;
    i64 k = 0;
    for (i64 m = 1; 2 * m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        long double frac = static_cast<long double>(2 * k - b) / static_cast<long double>(b);  // 2{mr/b} - 1
        acc += frac * cot_pi_frac(m, b);
    }
    return {static_cast<double>(acc), Method::naive, 0.0};
}

struct IdentityReport {
    double max_defect = 0.0;
    i64 count = 0;
    i64 worst_r = 0;
    i64 worst_b = 0;

    void record(double defect, i64 r, i64 b) {
        ++count;
        if (count == 1 || defect > max_defect) {
            max_defect = defect;
            worst_r = r;
            worst_b = b;
        }
    }
};

/// V(r/b) = -c_0(r̄/b) over all reduced fractions with 2 ≤ b ≤ b_max.
inline IdentityReport vasyunin_c0_identity_check(i64 b_max, i64 b_min = 2) {
    if (b_max < 2) throw std::domain_error("vasyunin_c0_identity_check: b_max must be >= 2");
    IdentityReport rep;
    for (i64 b = std::max<i64>(2, b_min); b <= b_max; ++b) {
        auto c0 = c0_naive_all(b);
        for (i64 r = 1; r < b; ++r) {
            if (gcd64(r, b) != 1) continue;
            double v = vasyunin(ReducedFraction(r, b)).value;
            double d = std::abs(v + c0[mod_inverse(r, b)]);
            rep.record(d, r, b);
        }
    }
    return rep;
}

/// Q(r/b) = Σ_{m=1}^{b-1} cot(π m r/b) ⌊rm/b⌋.
inline SumValue q_sum(const ReducedFraction& x) {
    detail::require_b2(x, "q_sum");
    const i64 b = x.b(), r = x.r();
    const i64 rr = r % b;
    long double acc = 0.0L;
    i64 k = 0;
    for (i64 m = 1; 2 * m < b; ++m) {
        k += rr;
        if (k >= b) k -= b;
        i64 fl = static_cast<i64>(static_cast<i128>(r) * m / b);
        acc += static_cast<long double>(2 * fl - r + 1) * cot_pi_frac(k, b);
    }
    return {static_cast<double>(acc), Method::naive, 0.0};
}

/// (1/r) c_0(1/b) - (1/r) Q(r/b).
inline SumValue c0_via_q(const ReducedFraction& x) {
    detail::require_b2(x, "c0_via_q");
    if (x.r() == 0) throw std::domain_error("c0_via_q: r must be >= 1");
    double c1 = c0_naive(ReducedFraction(1, x.b())).value;
    double q = q_sum(x).value;
    return {(c1 - q) / static_cast<double>(x.r()), Method::naive, 0.0};
}

/// Dedekind sum s(r/b) as an exact rational via the sawtooth form.
inline rational dedekind_exact(const ReducedFraction& x) {
    const i64 b = x.b();
    if (b == 1) return 0;
    const i64 r = x.r() % b;
    i128 acc = 0;
    i64 k = 0;
    for (i64 m = 1; m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        if (k == 0) continue;
        acc += static_cast<i128>(2 * m - b) * (2 * k - b);
    }
    bigint num = to_bigint(acc);
    return rational(num, bigint(4) * b * b);
}

inline SumValue dedekind_sawtooth(const ReducedFraction& x) {
    return {dedekind_exact(x).convert_to<double>(), Method::naive, 0.0};
}

/// s(r/b) = (1/4b) Σ cot(π m/b) cot(π m r/b).
inline SumValue dedekind_cotprod(const ReducedFraction& x) {
    const i64 b = x.b();
    if (b == 1) return {0.0, Method::naive, 0.0};
    const i64 r = x.r() % b;
    long double acc = 0.0L;
    i64 k = 0;
    for (i64 m = 1; 2 * m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        acc += cot_pi_frac(m, b) * cot_pi_frac(k, b);
    }
    return {static_cast<double>(2.0L * acc / (4.0L * b)), Method::naive, 0.0};
}

/// |s(r/b) + s(b/r) - 1/(12rb) - (r/b + b/r - 3)/12|, evaluated exactly then rounded.
inline double dedekind_reciprocity_check(i64 r, i64 b) {
    if (r < 1 || b < 1 || gcd64(r, b) != 1) throw std::domain_error("dedekind_reciprocity_check: need coprime r,b >= 1");
    rational lhs = dedekind_exact(ReducedFraction(r, b)) + dedekind_exact(ReducedFraction(b, r));
    rational rhs = rational(1, 12 * r) / b + (rational(r, b) + rational(b, r) - 3) / 12;
    rational d = lhs - rhs;
    return std::abs(d.convert_to<double>());
}

/// c_minus1 := 2π s(r/b).
inline SumValue c_minus1(const ReducedFraction& x) {
    return {2.0 * std::numbers::pi * dedekind_cotprod(x).value, Method::naive, 0.0};
}

/// c_a(r/b) = b^a Σ cot(π m r/b) ζ(-a, m/b) for integer a ≥ 0; a = -1 routes to the Dedekind form.
inline SumValue c_a(const ReducedFraction& x, int a) {
    if (a < -1) throw std::domain_error("c_a: a must be >= -1");
    if (a == -1) return c_minus1(x);
    detail::require_b2(x, "c_a");
    if (a % 2 == 1) return {0.0, Method::naive, 0.0};  // ζ(-a,1-x) = -ζ(-a,x) cancels the odd cot pairs
    const i64 b = x.b(), r = x.r() % b;
    long double acc = 0.0L;
    i64 k = 0;
    for (i64 m = 1; 2 * m < b; ++m) {
        k += r;
        if (k >= b) k -= b;
        long double z = hurwitz_zeta_neg_ld(a, static_cast<long double>(m) / static_cast<long double>(b));
        acc += z * cot_pi_frac(k, b);
    }
    return {static_cast<double>(2.0L * acc * std::pow(static_cast<long double>(b), a)), Method::naive, 0.0};
}

/// (1/π) Σ_{a ≤ blocks·b, b∤a} b(1 - 2{a/b})/a, summed by complete blocks.
inline SumValue c0_fractional_series(i64 b, i64 blocks) {
    if (b < 2) throw std::domain_error("c0_fractional_series: b must be >= 2");
    if (blocks < 1) throw std::domain_error("c0_fractional_series: blocks must be >= 1");
    long double acc = 0.0L;
    for (i64 k = 0; k < blocks; ++k) {
        long double n = static_cast<long double>(k) * b;
        long double blk = 0.0L;
        for (i64 j = 1; 2 * j < b; ++j) {
            // pair j with b-j: (b-2j)(1/(n+j) - 1/(n+b-j))
            long double d = static_cast<long double>(b - 2 * j);
            blk += d * d / ((n + j) * (n + b - j));
        }
        acc += blk;
    }
    double K = static_cast<double>(blocks);
    double tail = static_cast<double>(b) / (6.0 * std::numbers::pi) * (1.0 / K + 1.0 / (K * K));
    double rounding = 1e-15 * static_cast<double>(b) * std::log(static_cast<double>(b) * K + 1.0);
    return {static_cast<double>(acc / kPiL), Method::series, tail + rounding};
}

/// S(L;b) = 2b Σ_{a ≤ L} ⌊a/b⌋ / a, exactly.
inline rational s_sum(i64 L, i64 b) {
    if (L < 1) throw std::domain_error("s_sum: L must be >= 1");
    if (b < 2) throw std::domain_error("s_sum: b must be >= 2");
    rational acc = 0;
    for (i64 a = b; a <= L; ++a) acc += rational(a / b, a);
    return acc * (2 * b);
}

}  // namespace cotan
