/**
 * @file wilton.hpp
 * @brief g(x) = Σ (1 - 2{lx})/l: block series, rational values through c_0, the Wilton series 𝒲 along
 *        the Gauss map, the integral A(λ), Monte Carlo moments and distribution, strip moments of c_0,
 *        and Möbius-weighted sums of g.
 */
#pragma once

#include "cotangent_sums.hpp"
#include "fast_eval.hpp"
#include "numtheory.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan {

enum class GMethod { block_series, wilton, rational_vasyunin };

inline const char* gmethod_name(GMethod m) {
    switch (m) {
        case GMethod::block_series: return "block_series";
        case GMethod::wilton: return "wilton";
        case GMethod::rational_vasyunin: return "rational_vasyunin";
    }
    return "?";
}

struct GValue {
    double x = 0.0;
    double value = 0.0;
    GMethod method = GMethod::block_series;
    double error_bound = 0.0;
    i64 p = 0, q = 0;  // the rational actually evaluated, when one was used
};

namespace detail {

// Oscillation of the partial sums over their last half, as an error estimate.
struct Oscillation {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double half_width() const { return hi >= lo ? 0.5 * (hi - lo) : 0.0; }
};

// x = num/den exactly, den a power of two (x in (0,1)).
inline bool dyadic_parts(double x, u128& num, u128& den) {
    int e = 0;
    double m = std::frexp(x, &e);
    u64 mant = static_cast<u64>(std::ldexp(m, 53));
    int shift = 53 - e;
    if (shift > 126) return false;
    den = static_cast<u128>(1) << shift;
    num = mant;
    while ((num & 1) == 0 && den > 1) {
        num >>= 1;
        den >>= 1;
    }
    return true;
}

}  // namespace detail

/// Partial sum Σ_{l ≤ L} (1 - 2{lx})/l for real x.
inline GValue g_series(double x, i64 L) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("g_series: x must lie in (0,1)");
    if (L < 2) throw std::domain_error("g_series: need at least two terms");
    long double acc = 0.0L;
    detail::Oscillation osc;
    for (i64 l = 1; l <= L; ++l) {
        double ld = static_cast<double>(l);
        double p = ld * x;
        double err = std::fma(ld, x, -p);  // l x = p + err exactly
        long double fr = static_cast<long double>(p - std::floor(p)) + err;
        if (fr < 0) fr += 1.0L;
        if (fr >= 1) fr -= 1.0L;
        acc += (1.0L - 2.0L * fr) / static_cast<long double>(l);
        if (2 * l > L) osc.add(static_cast<double>(acc));
    }
    return {x, static_cast<double>(acc), GMethod::block_series, osc.half_width()};
}

/// Partial sum for x = p/q with the terms q | l excluded.
inline GValue g_series(const ReducedFraction& x, i64 L) {
    if (L < 2) throw std::domain_error("g_series: need at least two terms");
    const i64 q = x.b(), p = x.r() % q;
    long double acc = 0.0L;
    detail::Oscillation osc;
    i64 k = 0;
    for (i64 l = 1; l <= L; ++l) {
        k += p;
        if (k >= q) k -= q;
        if (k != 0) acc += (1.0L - 2.0L * static_cast<long double>(k) / q) / static_cast<long double>(l);
        if (2 * l > L) osc.add(static_cast<double>(acc));
    }
    GValue g{x.value(), static_cast<double>(acc), GMethod::block_series, osc.half_width(), p, q};
    return g;
}

/// g(p/q) with multiples of q excluded, in closed form: (π/q) c_0(p̄/q) = -(π/q) V(p/q).
inline GValue g_rational(const ReducedFraction& x) {
    const i64 q = x.b(), p = x.r() % q;
    GValue g{x.value(), 0.0, GMethod::rational_vasyunin, 0.0, p, q};
    if (p == 0) return g;  // every term excluded
    SumValue c = q <= 4096 ? c0_naive(ReducedFraction(mod_inverse(p, q), q))
                           : c0_fast(ReducedFraction(mod_inverse(p, q), q));
    g.value = std::numbers::pi / static_cast<double>(q) * c.value;
    g.error_bound = std::numbers::pi / static_cast<double>(q) * c.error_bound;
    return g;
}

/// g at a real point through its first continued-fraction convergent with q_n ≥ q_min (periodic in x).
/// Error estimate (log(q_{n+1}/q_n) + 2)/q_n.
inline GValue g_real(double x, i64 q_min = 1'000'000) {
    if (!std::isfinite(x)) throw std::domain_error("g_real: x must be finite");
    if (q_min < 2 || q_min > (i64{1} << 40)) throw std::domain_error("g_real: q_min out of range");
    double xf = x - std::floor(x);
    GValue out{x, 0.0, GMethod::rational_vasyunin, 0.0, 0, 1};
    if (xf == 0.0) return out;
    u128 num, den;
    if (!detail::dyadic_parts(xf, num, den)) throw std::domain_error("g_real: x too close to an integer");
    // convergents P/Q of num/den = [0; a_1, a_2, ...]
    u128 Pp = 1, Qp = 0, P = 0, Q = 1;
    u128 n = num, d = den;
    std::optional<std::pair<u128, u128>> chosen;
    u128 next_q = 0;
    const u128 qcap = static_cast<u128>(1) << 61;
    while (n != 0) {
        u128 a = d / n, rem = d % n;
        u128 Pn = a * P + Pp, Qn = a * Q + Qp;
        d = n;
        n = rem;
        if (chosen) {
            next_q = Qn;
            break;
        }
        if (Qn >= static_cast<u128>(q_min)) {
            if (Qn < qcap) {
                chosen = std::make_pair(Pn, Qn);
                Pp = P; Qp = Q; P = Pn; Q = Qn;
                continue;
            }
            // the next denominator is out of range: stay with the previous convergent
            chosen = std::make_pair(P, Q);
            next_q = Qn;
            break;
        }
        Pp = P; Qp = Q; P = Pn; Q = Qn;
    }
    if (!chosen) chosen = std::make_pair(P, Q);  // x itself
    const i64 pn = static_cast<i64>(chosen->first), qn = static_cast<i64>(chosen->second);
    GValue g = g_rational(ReducedFraction(pn, qn));
    g.x = x;
    if (next_q != 0) {
        double ratio = static_cast<double>(static_cast<long double>(next_q) / static_cast<long double>(qn));
        g.error_bound += (std::log(ratio) + 2.0) / static_cast<double>(qn);
    }
    return g;
}

// ---------------------------------------------------------------------------------------------
// Gauss map, 𝒲 and T

namespace detail {

inline std::vector<GaussStep> orbit_checked(double x, int steps) {
    auto orb = gauss_map_orbit(x, steps);
    if (static_cast<int>(orb.size()) < steps || orb.back().alpha == 0.0)
        throw std::domain_error("orbit terminated: input behaves as a rational at this depth");
    return orb;
}

inline GValue wilton_from_orbit(double x, const std::vector<GaussStep>& orb, int depth) {
    long double acc = 0.0L;
    for (int k = 0; k < depth; ++k) acc += (k % 2 ? -1.0L : 1.0L) * orb[k].gamma;
    return {x, static_cast<double>(acc), GMethod::wilton, std::abs(orb[depth].gamma)};
}

}  // namespace detail

/// 𝒲(x) = Σ_{k<depth} (-1)^k γ_k(x) with error bound γ_depth. x is the exact dyadic value of the double,
/// so the orbit may terminate before depth; the sum is then exact.
inline GValue wilton(double x, int depth = 64) {
    if (depth < 1) throw std::domain_error("wilton: depth must be >= 1");
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("wilton: x must lie in (0,1)");
    auto orb = gauss_map_orbit(x, depth + 1);
    int n = 0;
    while (n < depth && n < static_cast<int>(orb.size()) && std::isfinite(orb[n].gamma) && orb[n].alpha > 0.0) ++n;
    long double acc = 0.0L;
    for (int k = 0; k < n; ++k) acc += (k % 2 ? -1.0L : 1.0L) * orb[k].gamma;
    double err = 0.0;
    if (n == depth && n < static_cast<int>(orb.size()) && std::isfinite(orb[n].gamma)) err = std::abs(orb[n].gamma);
    return {x, static_cast<double>(acc), GMethod::wilton, err};
}

inline GValue wilton(const QuadraticIrrational& x, int depth = 80) {
    if (depth < 1) throw std::domain_error("wilton: depth must be >= 1");
    auto orb = gauss_map_orbit(x, depth + 1);
    return detail::wilton_from_orbit(x.value(), orb, depth);
}

/// (T^n f)(x) = β_{n-1}(x) f(α_n(x)) with β_{-1} = 1.
template <class F>
double T_operator(F&& f, double x, int n) {
    if (n < 0) throw std::domain_error("T_operator: n must be >= 0");
    auto orb = detail::orbit_checked(x, n + 1);
    double beta = n == 0 ? 1.0 : orb[n - 1].beta;
    return beta * f(orb[n].alpha);
}

/// ℒ(x, n) = Σ_{k=0}^{n} (-1)^k (T^k l)(x), l(x) = log(1/x).
inline double neumann_sum(double x, int n) {
    if (n < 0) throw std::domain_error("neumann_sum: n must be >= 0");
    auto orb = detail::orbit_checked(x, n + 1);
    long double acc = 0.0L;
    for (int k = 0; k <= n; ++k) acc += (k % 2 ? -1.0L : 1.0L) * orb[k].gamma;
    return static_cast<double>(acc);
}

inline double neumann_sum(const QuadraticIrrational& x, int n) {
    if (n < 0) throw std::domain_error("neumann_sum: n must be >= 0");
    auto orb = gauss_map_orbit(x, n + 1);
    long double acc = 0.0L;
    for (int k = 0; k <= n; ++k) acc += (k % 2 ? -1.0L : 1.0L) * orb[k].gamma;
    return static_cast<double>(acc);
}

/// log(1/x)/(1+x): the value of 𝒲 at a fixed point x = {1/x} of the Gauss map.
inline double wilton_fixed_point(double x) { return std::log(1.0 / x) / (1.0 + x); }

// ---------------------------------------------------------------------------------------------
// Convergence of g along continued fractions: Σ (-1)^m log(q_{m+1})/q_m

enum class BTVerdictKind { converges, diverges, undecided };

inline const char* bt_verdict_name(BTVerdictKind v) {
    switch (v) {
        case BTVerdictKind::converges: return "converges";
        case BTVerdictKind::diverges: return "diverges";
        case BTVerdictKind::undecided: return "undecided";
    }
    return "?";
}

struct BTVerdict {
    BTVerdictKind kind = BTVerdictKind::undecided;
    double partial_sum = 0.0;
    double tail_bound = std::numeric_limits<double>::infinity();  // Σ|terms| over the second half examined
    std::vector<double> terms;                                      // log(q_{m+1})/q_m
};

/// Quotients given as natural logs, log a_1, log a_2, ... (a_0 omitted). finite marks a terminating
/// expansion, i.e. a rational x.
inline BTVerdict bt_convergence_test(const std::vector<double>& log_quotients, bool finite = false) {
    BTVerdict v;
    if (finite) {
        // finitely many terms: the series is a finite sum
        v.kind = BTVerdictKind::converges;
        v.tail_bound = 0.0;
    }
    // log-domain recurrence q_{m+1} = a_{m+1} q_m + q_{m-1}, q_0 = 1, q_{-1} = 0
    std::vector<double> lq{0.0};
    double prev_ratio = 0.0;  // q_{m-1}/q_m
    for (double la : log_quotients) {
        if (!std::isfinite(la)) break;
        double a = std::exp(std::min(la, 700.0));
        double step = la > 700.0 ? la : std::log(a + prev_ratio);
        double lnext = lq.back() + step;
        prev_ratio = std::exp(-step);
        lq.push_back(lnext);
    }
    const std::size_t M = lq.size() >= 2 ? lq.size() - 1 : 0;  // terms m = 1..M-1 need q_{m+1}
    long double ps = 0.0L;
    for (std::size_t m = 1; m < M; ++m) {
        double lt = std::log(std::max(lq[m + 1], 1e-300)) - lq[m];
        double t = lq[m + 1] > 0 ? std::exp(lt) : 0.0;
        v.terms.push_back(t);
        ps += (m % 2 ? -1.0L : 1.0L) * t;
    }
    v.partial_sum = static_cast<double>(ps);
    if (finite) return v;
    const std::size_t n = v.terms.size();
    if (n < 3) return v;
    double tail = 0.0;
    for (std::size_t i = n / 2; i < n; ++i) tail += v.terms[i];
    v.tail_bound = tail;
    // term test: terms bounded below along the examined tail
    std::size_t kb = std::min<std::size_t>(n, std::max<std::size_t>(3, n / 3));
    bool bounded_below = true;
    for (std::size_t i = n - kb; i < n; ++i) bounded_below = bounded_below && v.terms[i] >= 0.5;
    if (bounded_below) {
        v.kind = BTVerdictKind::diverges;
        return v;
    }
    // geometric decay over the second half
    double worst_ratio = 0.0;
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        worst_ratio = std::max(worst_ratio, v.terms[i] / std::max(v.terms[i - 1], 1e-300));
    if (worst_ratio < 0.95 && v.terms.back() < 1e-6) {
        v.kind = BTVerdictKind::converges;
        v.tail_bound = v.terms.back() * worst_ratio / (1.0 - worst_ratio);
    }
    return v;
}

inline BTVerdict bt_convergence_test(const std::vector<i64>& quotients, bool finite = false) {
    std::vector<double> lq;
    for (i64 a : quotients) {
        if (a < 1) throw std::domain_error("bt_convergence_test: quotients must be >= 1");
        lq.push_back(std::log(static_cast<double>(a)));
    }
    return bt_convergence_test(lq, finite);
}

inline BTVerdict bt_convergence_test(const ContinuedFraction& cf) {
    std::vector<i64> q(cf.quotients.begin() + 1, cf.quotients.end());
    if (q.empty()) {
        BTVerdict v;
        v.kind = BTVerdictKind::converges;
        v.tail_bound = 0.0;
        return v;
    }
    return bt_convergence_test(q, true);
}

/// log a_{m+1} = q_m log 2, starting from a_1 = 1; stops when the next quotient no longer fits a double exponent.
inline std::vector<double> doubly_exponential_stream(int max_len = 12) {
    std::vector<double> out{0.0};  // a_1 = 1
    double lq = 0.0, lq_prev = 0.0;  // log q_1 = log a_1 = 0, log q_0 = 0
    while (static_cast<int>(out.size()) < max_len) {
        double qm = std::exp(lq);
        if (!std::isfinite(qm) || qm * std::log(2.0) > 1e300) break;
        double la = qm * std::log(2.0);
        out.push_back(la);
        double next = la + lq + std::log1p(std::exp(lq_prev - lq - la));
        lq_prev = lq;
        lq = next;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Contraction of T in L²(Gauss measure)

struct ContractionReport {
    std::vector<double> ratio;  // ratio[n-1] = ||T^n l|| / ||l||, n = 1..n_max
    std::vector<double> bound;  // 1.1 g^{n-1}
    bool passed = true;
    i64 samples = 0;
};

namespace detail {

inline u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline double unit_double(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace detail

inline ContractionReport mmy_contraction_check(int n_max = 12, i64 samples = 20000, u64 seed = 42) {
    if (n_max < 1) throw std::domain_error("mmy_contraction_check: n_max must be >= 1");
    ContractionReport rep;
    rep.samples = samples;
    std::mt19937_64 gen(detail::splitmix64(seed ^ 0x4d4d59ULL));
    std::vector<long double> num(n_max + 1, 0.0L);
    for (i64 i = 0; i < samples; ++i) {
        std::vector<GaussStep> orb;
        while (true) {
            double x = std::exp2(detail::unit_double(gen)) - 1.0;  // Gauss measure
            if (!(x > 0.0 && x < 1.0)) continue;
            orb = gauss_map_orbit(x, n_max + 1);
            if (static_cast<int>(orb.size()) == n_max + 1 && orb.back().alpha > 0.0) break;
        }
        for (int n = 0; n <= n_max; ++n) {
            double t = orb[n].gamma;  // β_{n-1} l(α_n)
            num[n] += static_cast<long double>(t) * t;
        }
    }
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int n = 1; n <= n_max; ++n) {
        double r = std::sqrt(static_cast<double>(num[n] / num[0]));
        double bnd = 1.1 * std::pow(g, n - 1);
        rep.ratio.push_back(r);
        rep.bound.push_back(bnd);
        rep.passed = rep.passed && r <= bnd;
    }
    return rep;
}

// ---------------------------------------------------------------------------------------------
// A(λ) = ∫_0^∞ {t}{λt} dt/t²

struct ALambdaConfig {
    double T = 1e6;
    int gl_points = 8;
};

struct ALambdaResult {
    double value = 0.0;
    double error_bound = 0.0;
    double tail = 0.0;
    bool converged = true;
};

namespace detail {

// mean of {t}{λt}: 1/4 for irrational λ, 1/4 + 1/(12 p q) for λ = p/q
inline double frac_product_mean(double lambda) {
    for (i64 q = 1; q <= 1000; ++q) {
        double p = std::round(lambda * q);
        if (p >= 1 && std::abs(lambda * q - p) < 1e-12 * q * std::max(1.0, lambda)) {
            i64 pi = static_cast<i64>(p);
            if (gcd64(pi, q) == 1) return 0.25 + 1.0 / (12.0 * static_cast<double>(pi) * static_cast<double>(q));
        }
    }
    return 0.25;
}

}  // namespace detail

inline ALambdaResult a_lambda(double lambda, const ALambdaConfig& cfg = {}) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("a_lambda: λ must be positive");
    if (!(cfg.T >= 4.0)) throw std::domain_error("a_lambda: T too small");
    GaussLegendreRule gl(cfg.gl_points);
    const double T = cfg.T;
    long double acc = 0.0L;
    // pieces between consecutive breakpoints k and j/λ
    double t = 0.0;
    i64 k = 0;  // next integer breakpoint index: integers k+1, ...
    i64 j = 0;  // next λ breakpoint index: (j+1)/λ
    while (t < T) {
        double nk = static_cast<double>(k + 1);
        double nj = static_cast<double>(j + 1) / lambda;
        double v = std::min({nk, nj, T});
        if (v > t) {
            const double fk = static_cast<double>(k), fj = static_cast<double>(j);
            if (t < 1.0) {
                // closed form: λ(v-u) - (j + λk) log(v/u) + kj (1/u - 1/v); here k = 0
                double piece = lambda * (v - t);
                if (fj > 0) piece -= fj * std::log(v / t);
                acc += piece;
            } else {
                acc += gl.integrate(
                    [&](double s) {
                        double a = s - fk, b = lambda * s - fj;
                        return a * b / (s * s);
                    },
                    t, v);
            }
        }
        t = v;
        if (v == nk) ++k;
        if (v == nj) ++j;
        // keep j consistent with floor(λ t) despite rounding of (j+1)/λ
        while (static_cast<double>(j + 1) <= lambda * t * (1.0 - 1e-15) ) ++j;
    }
    ALambdaResult res;
    double m = detail::frac_product_mean(lambda);
    res.tail = m / T;
    res.value = static_cast<double>(acc) + res.tail;
    res.error_bound = std::max(m, 1.0 - m) / T + 1e-13 * (1.0 + lambda);
    return res;
}

struct BLSIdentityCheck {
    double lambda = 0.0;
    double lhs = 0.0, rhs = 0.0;
    double defect = 0.0, bound = 0.0;
};

/// A(λ) against (1-λ)/2 log λ + (λ+1)/2 (log 2π - γ) + (g({λ}) + λ g({1/λ}))/2.
inline BLSIdentityCheck bls_identity_check(double lambda, i64 q_min = 1'000'000, const ALambdaConfig& cfg = {}) {
    BLSIdentityCheck c;
    c.lambda = lambda;
    ALambdaResult a = a_lambda(lambda, cfg);
    // the identity holds with Σ({lx} - 1/2)/l = -g(x)/2 in place of g
    GValue g1 = g_real(lambda - std::floor(lambda), q_min);
    GValue g2 = g_real(1.0 / lambda - std::floor(1.0 / lambda), q_min);
    c.lhs = a.value;
    c.rhs = (1.0 - lambda) / 2.0 * std::log(lambda) + (lambda + 1.0) / 2.0 * (kLog2Pi - kEulerGamma) +
            0.5 * (g1.value + lambda * g2.value);
    c.defect = std::abs(c.lhs - c.rhs);
    c.bound = a.error_bound + 0.5 * (g1.error_bound + lambda * g2.error_bound);
    return c;
}

// ---------------------------------------------------------------------------------------------
// Monte Carlo over x: equal-width strata, one RNG stream per stratum

struct MCConfig {
    i64 samples = 1'000'000;
    u64 seed = 42;
    int strata = 64;
    i64 q_min = 1'000'000;
};

namespace detail {

inline std::mt19937_64 stratum_rng(u64 seed, int s) { return std::mt19937_64(splitmix64(seed * 0x100000001B3ULL + s)); }

inline i64 stratum_count(const MCConfig& c, int s) { return c.samples / c.strata + (s < c.samples % c.strata ? 1 : 0); }

template <class F>
void for_each_g_sample(const MCConfig& c, int s, F&& f) {
    auto gen = stratum_rng(c.seed, s);
    const i64 n = stratum_count(c, s);
    for (i64 i = 0; i < n; ++i) {
        double x;
        do {
            x = (static_cast<double>(s) + unit_double(gen)) / c.strata;
        } while (!(x > 0.0 && x < 1.0));
        f(g_real(x, c.q_min).value);
    }
}

// Per-stratum sums of f_j(g) and f_j(g)^2.
struct StratumSums {
    i64 n = 0;
    std::vector<long double> s1, s2;
};

inline std::vector<StratumSums> stratified_sums(const MCConfig& c, const std::vector<std::function<double(double)>>& fs) {
    if (c.strata < 1 || c.samples < 2 * c.strata) throw std::domain_error("Monte Carlo: need >= 2 samples per stratum");
    std::vector<StratumSums> out(c.strata);
    parallel_for(c.strata, [&](std::int64_t s) {
        StratumSums& ss = out[s];
        ss.s1.assign(fs.size(), 0.0L);
        ss.s2.assign(fs.size(), 0.0L);
        for_each_g_sample(c, static_cast<int>(s), [&](double g) {
            ++ss.n;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                long double v = fs[j](g);
                ss.s1[j] += v;
                ss.s2[j] += v * v;
            }
        });
    });
    return out;
}

// Stratified mean and its standard error for statistic j.
inline std::pair<double, double> stratified_estimate(const std::vector<StratumSums>& ss, std::size_t j) {
    long double mean = 0.0L, var = 0.0L;
    const long double S = static_cast<long double>(ss.size());
    for (const auto& s : ss) {
        long double m = s.s1[j] / s.n;
        long double v = (s.s2[j] - s.n * m * m) / (s.n - 1);
        mean += m / S;
        var += std::max(0.0L, v) / s.n / (S * S);
    }
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var))};
}

}  // namespace detail

/// H_1 = ∫ (g/π)^2 = 5/36 (Parseval).
inline constexpr double kH1 = 5.0 / 36.0;

struct MomentEntry {
    int k = 0;
    double H = 0.0, H_stderr = 0.0;
    double E = 0.0, E_stderr = 0.0;  // E_k = H_k/(2k+1)
    i64 samples = 0;
    u64 seed = 0;
};

struct MomentTable {
    std::vector<MomentEntry> entries;
    bool variance_warning = false;
};

/// H_k = ∫ (g/π)^{2k} for k ≤ k_max by stratified Monte Carlo.
inline MomentTable moments(int k_max, const MCConfig& c = {}) {
    if (k_max < 1) throw std::domain_error("moments: k_max must be >= 1");
    std::vector<std::function<double(double)>> fs;
    for (int k = 1; k <= k_max; ++k)
        fs.push_back([k](double g) { return std::pow(g / std::numbers::pi, 2 * k); });
    auto ss = detail::stratified_sums(c, fs);
    MomentTable t;
    for (int k = 1; k <= k_max; ++k) {
        auto [m, se] = detail::stratified_estimate(ss, k - 1);
        MomentEntry e{k, m, se, m / (2 * k + 1), se / (2 * k + 1), c.samples, c.seed};
        if (!std::isfinite(m) || !std::isfinite(se) || se > 0.25 * m) t.variance_warning = true;
        t.entries.push_back(e);
    }
    return t;
}

struct AbsMomentRow {
    double K = 0.0;
    double moment = 0.0, stderr_ = 0.0;
    double ratio = 0.0;  // moment / Γ(K+1)
    bool variance_warning = false;
};

struct AbsMomentReport {
    std::vector<AbsMomentRow> rows;
    double target = std::exp(kEulerGamma) / std::numbers::pi;  // e^γ/π
    double A1 = 0.0, A1_error = 0.0;
    double two_exp_minus_A1 = 0.0;
    double consistency_defect = 0.0;  // |2 e^{-A(1)} - e^γ/π|
};

/// ∫|g|^K / Γ(K+1) against e^γ/π, and the cross-check 2 e^{-A(1)} = e^γ/π.
inline AbsMomentReport abs_moment_asymptotic_check(const std::vector<double>& K_list, const MCConfig& c = {}) {
    AbsMomentReport rep;
    for (double K : K_list)
        if (!(K > 0.0 && K <= 20.0)) throw std::domain_error("abs_moment_asymptotic_check: K must lie in (0, 20]");
    std::vector<std::function<double(double)>> fs;
    for (double K : K_list) fs.push_back([K](double g) { return std::pow(std::abs(g), K); });
    if (!fs.empty()) {
        auto ss = detail::stratified_sums(c, fs);
        for (std::size_t j = 0; j < K_list.size(); ++j) {
            auto [m, se] = detail::stratified_estimate(ss, j);
            double K = K_list[j];
            rep.rows.push_back({K, m, se, m / std::tgamma(K + 1.0), K > 12.0 || se > 0.25 * m});
        }
    }
    ALambdaResult a = a_lambda(1.0);
    rep.A1 = a.value;
    rep.A1_error = a.error_bound;
    rep.two_exp_minus_A1 = 2.0 * std::exp(-a.value);
    rep.consistency_defect = std::abs(rep.two_exp_minus_A1 - rep.target);
    return rep;
}

struct DistributionRow {
    double z = 0.0;
    double F = 0.0, lo = 0.0, hi = 0.0;
};

struct DistributionReport {
    std::vector<DistributionRow> rows;
    double dkw_epsilon = 0.0;  // 95% band half-width
    double max_jump = 0.0;     // largest single-sample CDF step (1/n without ties)
    i64 samples = 0;
};

/// Empirical F(z) = meas{x : g(x) ≤ z} with a Dvoretzky–Kiefer–Wolfowitz band.
inline DistributionReport distribution_F(const std::vector<double>& z_grid, const MCConfig& c = {}) {
    if (!std::is_sorted(z_grid.begin(), z_grid.end())) throw std::domain_error("distribution_F: grid must be sorted");
    if (c.samples < c.strata) throw std::domain_error("distribution_F: too few samples");
    std::vector<std::vector<double>> per(c.strata);
    parallel_for(c.strata, [&](std::int64_t s) {
        detail::for_each_g_sample(c, static_cast<int>(s), [&](double g) { per[s].push_back(g); });
    });
    std::vector<double> all;
    for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    DistributionReport rep;
    rep.samples = static_cast<i64>(all.size());
    const double n = static_cast<double>(all.size());
    rep.dkw_epsilon = std::sqrt(std::log(2.0 / 0.05) / (2.0 * n));
    for (double z : z_grid) {
        double F = static_cast<double>(std::upper_bound(all.begin(), all.end(), z) - all.begin()) / n;
        rep.rows.push_back({z, F, std::max(0.0, F - rep.dkw_epsilon), std::min(1.0, F + rep.dkw_epsilon)});
    }
    std::size_t i = 0, run = 1;
    for (std::size_t j = 1; j <= all.size(); ++j) {
        if (j < all.size() && all[j] == all[i]) {
            ++run;
            continue;
        }
        rep.max_jump = std::max(rep.max_jump, static_cast<double>(run) / n);
        i = j;
        run = 1;
    }
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Strip moments of c_0 and Q

struct StripMomentRow {
    int k = 0;
    double even = 0.0;         // Σ c_0^{2k} / (b^{2k} φ(b))
    double even_target = 0.0;  // H_k (A1 - A0)
    double odd = 0.0;          // Σ c_0^{2k-1} / (b^{2k-1} φ(b)), normalized by (A1 - A0) H_k^{(2k-1)/(2k)}
    double q_even = 0.0;       // Σ Q^{2k} / (b^{4k} φ(b))
    double q_target = 0.0;     // E_k (A1^{2k+1} - A0^{2k+1})
    double q_odd = 0.0;        // Σ Q^{2k-1} / (b^{4k-2} φ(b)), normalized like odd
};

struct StripMoments {
    i64 b = 0;
    double A0 = 0.0, A1 = 0.0;
    i64 count = 0;  // reduced r in the strip
    std::vector<StripMomentRow> rows;
};

/// H must hold H_1, ..., H_{k_max}.
inline StripMoments strip_moments(i64 b, double A0, double A1, const std::vector<double>& H) {
    if (!(0.0 <= A0 && A0 < A1 && A1 <= 1.0)) throw std::domain_error("strip_moments: need 0 <= A0 < A1 <= 1");
    if (b < 3) throw std::domain_error("strip_moments: b must be >= 3");
    if (H.empty()) throw std::domain_error("strip_moments: need H_1");
    const int k_max = static_cast<int>(H.size());
    auto c0 = c0_naive_all(b);
    const double c1b = c0_naive(ReducedFraction(1, b)).value;
    const double bd = static_cast<double>(b);
    const double phi = static_cast<double>(totient(b));
    std::vector<long double> ce(k_max + 1, 0.0L), co(k_max + 1, 0.0L), qe(k_max + 1, 0.0L), qo(k_max + 1, 0.0L);
    StripMoments out{b, A0, A1, 0, {}};
    for (i64 r = 1; r < b; ++r) {
        if (gcd64(r, b) != 1) continue;
        double rb = static_cast<double>(r) / bd;
        if (rb < A0 || rb > A1) continue;
        ++out.count;
        long double y = c0[r] / bd;
        long double qn = (c1b - static_cast<double>(r) * c0[r]) / (bd * bd);
        for (int k = 1; k <= k_max; ++k) {
            ce[k] += std::pow(y, 2 * k);
            co[k] += std::pow(y, 2 * k - 1);
            qe[k] += std::pow(qn, 2 * k);
            qo[k] += std::pow(qn, 2 * k - 1);
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        StripMomentRow row;
        row.k = k;
        row.even = static_cast<double>(ce[k] / phi);
        row.even_target = H[k - 1] * (A1 - A0);
        double scale = (A1 - A0) * std::pow(H[k - 1], (2.0 * k - 1.0) / (2.0 * k));
        row.odd = static_cast<double>(co[k] / phi) / scale;
        row.q_even = static_cast<double>(qe[k] / phi);
        double Ek = H[k - 1] / (2 * k + 1);
        row.q_target = Ek * (std::pow(A1, 2 * k + 1) - std::pow(A0, 2 * k + 1));
        double qscale = std::pow(Ek, (2.0 * k - 1.0) / (2.0 * k)) * (std::pow(A1, 2 * k) - std::pow(A0, 2 * k));
        row.q_odd = static_cast<double>(qo[k] / phi) / qscale;
        out.rows.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Möbius-weighted sums of g

enum class GWeights { flat, logtaper };

/// μ(n) for lo ≤ n ≤ hi by a segmented sieve.
inline std::vector<int> mobius_segment(i64 lo, i64 hi) {
    if (lo < 1 || hi < lo) throw std::domain_error("mobius_segment: need 1 <= lo <= hi");
    const i64 n = hi - lo + 1;
    std::vector<int> mu(n, 1);
    std::vector<i64> rest(n);
    for (i64 i = 0; i < n; ++i) rest[i] = lo + i;
    i64 lim = QuadraticIrrational::isqrt(hi);
    std::vector<bool> comp(lim + 1, false);
    for (i64 p = 2; p <= lim; ++p) {
        if (comp[p]) continue;
        for (i64 m = p * p; m <= lim; m += p) comp[m] = true;
        i64 start = (lo + p - 1) / p * p;
        for (i64 m = start; m <= hi; m += p) {
            i64 i = m - lo;
            if ((m / p) % p == 0) mu[i] = 0;
            else mu[i] = -mu[i];
            while (rest[i] % p == 0) rest[i] /= p;
        }
    }
    for (i64 i = 0; i < n; ++i)
        if (rest[i] > 1 && mu[i] != 0) mu[i] = -mu[i];
    return mu;
}

struct MobiusGSum {
    double value = 0.0;
    double abs_sum = 0.0;  // Σ |μ(n) w(n) g(n/b)|
    i64 n_lo = 0, n_hi = 0;
    double error_bound = 0.0;
};

/// Σ_{Bb ≤ n ≤ (1+η)Bb} μ(n) w(n) g(n/b), g at rationals with the excluded-multiples convention.
inline MobiusGSum mobius_g_sum(i64 b, double B, double eta, GWeights w = GWeights::flat, double N_taper = 0.0) {
    if (b < 1) throw std::domain_error("mobius_g_sum: b must be >= 1");
    if (!(B > 0) || !(eta >= 0)) throw std::domain_error("mobius_g_sum: need B > 0, η >= 0");
    if (w == GWeights::logtaper && !(N_taper > 1.0)) throw std::domain_error("mobius_g_sum: taper needs N > 1");
    long double lo = static_cast<long double>(B) * b, hi = (1.0L + eta) * static_cast<long double>(B) * b;
    MobiusGSum out;
    out.n_lo = static_cast<i64>(std::ceil(lo - 1e-9L * lo));
    out.n_hi = static_cast<i64>(std::floor(hi + 1e-9L * hi));
    if (out.n_hi < out.n_lo) throw std::domain_error("mobius_g_sum: interval contains no integer");
    std::vector<double> gv(b), ge(b);
    for (i64 k = 0; k < b; ++k) {
        GValue g = g_rational(ReducedFraction(k, b));
        gv[k] = g.value;
        ge[k] = g.error_bound;
    }
    long double acc = 0.0L, mag = 0.0L, err = 0.0L;
    const i64 seg = 1 << 20;
    for (i64 s = out.n_lo; s <= out.n_hi; s += seg) {
        i64 e = std::min(out.n_hi, s + seg - 1);
        auto mu = mobius_segment(s, e);
        for (i64 n = s; n <= e; ++n) {
            int m = mu[n - s];
            if (m == 0) continue;
            long double wt = 1.0L;
            if (w == GWeights::logtaper) wt = 1.0L - std::log(static_cast<long double>(n)) / std::log(static_cast<long double>(N_taper));
            long double t = m * wt * gv[n % b];
            acc += t;
            mag += std::abs(t);
            err += std::abs(wt) * ge[n % b];
        }
    }
    out.value = static_cast<double>(acc);
    out.abs_sum = static_cast<double>(mag);
    out.error_bound = static_cast<double>(err) + 1.1e-19 * static_cast<double>(mag) * (out.n_hi - out.n_lo + 1);
    return out;
}

struct GVasyuninCalibration {
    double kappa = 0.0;          // fitted g(n/b) ≈ κ V(n/b)/b
    double max_rel_residual = 0.0;
    double inverse_n_max_rel = 0.0;  // same for the (1/n) V(n/b) normalization, for comparison
    i64 points = 0;
};

/// Fits g(n/b) (block series, multiples excluded) against V(n/b)/b over reduced n/b with 3 ≤ b ≤ b_max.
inline GVasyuninCalibration g_vasyunin_calibration(i64 b_max = 30, i64 L = 2'000'000) {
    if (b_max < 3) throw std::domain_error("g_vasyunin_calibration: b_max must be >= 3");
    std::vector<double> gs, vs, vn;
    for (i64 b = 3; b <= b_max; ++b)
        for (i64 n = 1; n < b; ++n) {
            if (gcd64(n, b) != 1) continue;
            ReducedFraction x(n, b);
            i64 Lb = L / b * b;  // whole blocks
            gs.push_back(g_series(x, Lb).value);
            double V = vasyunin(x).value;
            vs.push_back(V / static_cast<double>(b));
            vn.push_back(V / static_cast<double>(n));
        }
    long double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        sxy += static_cast<long double>(gs[i]) * vs[i];
        sxx += static_cast<long double>(vs[i]) * vs[i];
    }
    GVasyuninCalibration c;
    c.points = static_cast<i64>(gs.size());
    c.kappa = static_cast<double>(sxy / sxx);
    long double sxy2 = 0, sxx2 = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        sxy2 += static_cast<long double>(gs[i]) * vn[i];
        sxx2 += static_cast<long double>(vn[i]) * vn[i];
    }
    double k2 = static_cast<double>(sxy2 / sxx2);
    for (std::size_t i = 0; i < gs.size(); ++i) {
        double scale = std::max(std::abs(gs[i]), 1e-3);
        c.max_rel_residual = std::max(c.max_rel_residual, std::abs(gs[i] - c.kappa * vs[i]) / scale);
        c.inverse_n_max_rel = std::max(c.inverse_n_max_rel, std::abs(gs[i] - k2 * vn[i]) / scale);
    }
    return c;
}

// ---------------------------------------------------------------------------------------------
// Exponent constants for Möbius sums over [b^D, 2b^D)

struct FinalConstants {
    double C = 0.0, v0 = 0.0, z0 = 0.0;
    double residual_C = 0.0, residual_v0 = 0.0, residual_z0 = 0.0;
    bool constraint_violated = false;  // no root with C ≥ (√5+1)/2
    bool no_root = false;
};

inline double final_theorem_C_equation(double C) { return 2.0 * C - std::log(C) - 1.0 - 2.5 * std::log(2.0); }

inline FinalConstants constants_final_theorem() {
    FinalConstants out;
    const double lower = (std::sqrt(5.0) + 1.0) / 2.0;
    auto f = final_theorem_C_equation;
    // f is increasing on (1/2, ∞); any root ≥ lower lies there
    auto bisect = [&](double a, double b) {
        for (int i = 0; i < 200; ++i) {
            double m = 0.5 * (a + b);
            ((f(a) < 0) == (f(m) < 0) ? a : b) = m;
        }
        return 0.5 * (a + b);
    };
    double C;
    if (f(lower) <= 0.0) {
        double hi = lower;
        while (f(hi) < 0.0) hi *= 2.0;
        C = bisect(lower, hi);
    } else if (f(0.5) < 0.0) {
        C = bisect(0.5, lower);  // nearest root, below the constraint
        out.constraint_violated = true;
    } else {
        out.no_root = true;
        return out;
    }
    // one Newton polish
    C -= f(C) / (2.0 - 1.0 / C);
    out.C = C;
    out.residual_C = f(C);
    const double l2 = std::log(2.0);
    double K = 1.0 - 1.0 / (1.0 + 2.0 * l2 / (C + l2 / 2.0)) + 2.0 + 4.0 / l2 * C;
    out.v0 = 2.0 / K;
    out.residual_v0 = out.v0 * K - 2.0;
    out.z0 = 2.0 - (2.0 + 4.0 / l2 * C) * out.v0;
    out.residual_z0 = out.z0 - (2.0 - (2.0 + 4.0 / l2 * C) * out.v0);
    return out;
}

}  // namespace cotan
