/**
 * @file numtheory.hpp
 * @brief Integer and rational primitives: reduced fractions, modular inverse,
 *        continued fractions, the Gauss map, and small multiplicative functions.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Denominators are kept below 2^62 so that r*m products fit comfortably in 128 bits.
inline constexpr i64 kMaxDenominator = i64{1} << 62;

inline i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

class ReducedFraction {
public:
    ReducedFraction(i64 r, i64 b) {
        if (b < 1) throw std::invalid_argument("ReducedFraction: denominator must be >= 1");
        if (b >= kMaxDenominator) throw std::invalid_argument("ReducedFraction: denominator exceeds 2^62");
        if (r < 0) throw std::invalid_argument("ReducedFraction: numerator must be >= 0");
        i64 g = gcd64(r, b);
        if (g == 0) g = 1;
        r_ = r / g;
        b_ = b / g;
    }

    // Accepts only an already coprime pair; used where the caller's pair must not be silently changed.
    static ReducedFraction coprime(i64 r, i64 b) {
        if (b >= 1 && r >= 0 && gcd64(r, b) != 1)
            throw std::invalid_argument("ReducedFraction: " + std::to_string(r) + "/" + std::to_string(b) +
                                        " is not in lowest terms");
        return ReducedFraction(r, b);
    }

    i64 r() const { return r_; }
    i64 b() const { return b_; }
    double value() const { return static_cast<double>(r_) / static_cast<double>(b_); }
    long double value_ld() const { return static_cast<long double>(r_) / static_cast<long double>(b_); }

    // r mod b as a fraction in [0,1).
    ReducedFraction fractional_part() const { return ReducedFraction(r_ % b_, b_); }

    friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;

private:
    i64 r_ = 0;
    i64 b_ = 1;
};

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

/// r̄ in [1,b) with r·r̄ ≡ 1 (mod b).
inline i64 mod_inverse(i64 r, i64 b) {
    if (b < 2) throw std::domain_error("mod_inverse: modulus must be >= 2");
    i64 a = ((r % b) + b) % b;
    i64 old_r = a, cur_r = b;
    i64 old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        i64 q = old_r / cur_r;
        i64 t = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = t;
        t = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = t;
    }
    if (old_r != 1)
        throw std::domain_error("mod_inverse: " + std::to_string(r) + " is not invertible mod " + std::to_string(b));
    i64 inv = old_s % b;
    if (inv < 0) inv += b;
    return inv;
}

struct Convergent {
    i64 u;
    i64 v;
};

struct ContinuedFraction {
    std::vector<i64> quotients;
    std::vector<Convergent> convergents;

    // Folds the quotients back into a fraction (exact).
    ReducedFraction reconstruct() const {
        if (quotients.empty()) throw std::logic_error("ContinuedFraction: empty");
        i128 num = quotients.back(), den = 1;
        for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) {
            i128 t = *it * num + den;
            den = num;
            num = t;
        }
        return ReducedFraction(static_cast<i64>(num), static_cast<i64>(den));
    }
};

inline ContinuedFraction continued_fraction(const ReducedFraction& x) {
    ContinuedFraction cf;
    i64 p = x.r(), q = x.b();
    i64 u2 = 0, v2 = 1;  // u_{-2}/v_{-2}
    i64 u1 = 1, v1 = 0;  // u_{-1}/v_{-1}
    while (true) {
        i64 a = p / q;
        i64 rem = p % q;
        cf.quotients.push_back(a);
        i64 u = static_cast<i64>(static_cast<i128>(a) * u1 + u2);
        i64 v = static_cast<i64>(static_cast<i128>(a) * v1 + v2);
        cf.convergents.push_back({u, v});
        u2 = u1; v2 = v1; u1 = u; v1 = v;
        if (rem == 0) break;
        p = q;
        q = rem;
    }
    return cf;
}

/// Real quadratic irrational (P + sqrt(D)) / Q with Q | (D - P^2); exact Gauss-map orbits.
class QuadraticIrrational {
public:
    QuadraticIrrational(i64 P, i64 D, i64 Q) {
        if (Q == 0) throw std::invalid_argument("QuadraticIrrational: Q = 0");
        if (D <= 0) throw std::invalid_argument("QuadraticIrrational: D must be positive");
        i64 s = isqrt(D);
        if (s * s == D) throw std::invalid_argument("QuadraticIrrational: D is a perfect square");
        if ((static_cast<i128>(D) - static_cast<i128>(P) * P) % Q != 0) {
            // Rescale so that the divisibility invariant holds.
            i64 aq = Q < 0 ? -Q : Q;
            P *= aq;
            D *= aq * aq;
            Q *= aq;
        }
        P_ = P; D_ = D; Q_ = Q; sqrtD_ = isqrt(D);
    }

    i64 P() const { return P_; }
    i64 D() const { return D_; }
    i64 Q() const { return Q_; }

    double value() const {
        long double sd = std::sqrt(static_cast<long double>(D_));
        long double num;
        if (P_ < 0) num = static_cast<long double>(D_ - static_cast<i128>(P_) * P_) / (sd - P_);
        else num = P_ + sd;
        return static_cast<double>(num / Q_);
    }

    i64 floor() const {
        // floor((P + sqrt D)/Q) using floor(sqrt D) since sqrt D is irrational
        i64 num = P_ + (Q_ > 0 ? sqrtD_ : sqrtD_ + 1);
        i64 q = num / Q_;
        if ((num % Q_ != 0) && ((num < 0) != (Q_ < 0))) --q;
        return q;
    }

    // x -> 1/x
    QuadraticIrrational reciprocal() const {
        i64 newQ = static_cast<i64>((static_cast<i128>(D_) - static_cast<i128>(P_) * P_) / Q_);
        return QuadraticIrrational(-P_, D_, newQ, sqrtD_);
    }

    QuadraticIrrational minus(i64 a) const { return QuadraticIrrational(P_ - a * Q_, D_, Q_, sqrtD_); }

    static i64 isqrt(i64 n) {
        i64 s = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
        while (static_cast<i128>(s) * s > n) --s;
        while (static_cast<i128>(s + 1) * (s + 1) <= n) ++s;
        return s;
    }

private:
    QuadraticIrrational(i64 P, i64 D, i64 Q, i64 s) : P_(P), D_(D), Q_(Q), sqrtD_(s) {}
    i64 P_, D_, Q_, sqrtD_;
};

struct GaussStep {
    double alpha;  // α_k
    i64 a;         // a_k = floor(1/α_{k-1}); a_0 = 0 for x in (0,1)
    double beta;   // β_k = α_0···α_k
    double gamma;  // γ_k = β_{k-1} log(1/α_k); +inf when α_k = 0
};

namespace detail {

inline void push_gauss_step(std::vector<GaussStep>& out, double alpha, i64 a, double& beta_prev) {
    double gamma = alpha > 0 ? beta_prev * std::log(1.0 / alpha) : std::numeric_limits<double>::infinity();
    double beta = beta_prev * alpha;
    out.push_back({alpha, a, beta, gamma});
    beta_prev = beta;
}

// Orbit of the exact rational num/den (0 < num < den) in unsigned 128-bit arithmetic.
inline std::vector<GaussStep> gauss_orbit_u128(u128 num, u128 den, int depth) {
    std::vector<GaussStep> out;
    double beta_prev = 1.0;
    i64 a = 0;
    for (int k = 0; k < depth; ++k) {
        double alpha = num == 0 ? 0.0 : static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
        // β_k is the product of exact α's; for a rational it telescopes to rem_k/den_0 but double products suffice.
        push_gauss_step(out, alpha, a, beta_prev);
        if (num == 0) break;
        u128 q = den / num;
        u128 rem = den % num;
        a = static_cast<i64>(q > static_cast<u128>(std::numeric_limits<i64>::max()) ? std::numeric_limits<i64>::max() : static_cast<i64>(q));
        den = num;
        num = rem;
    }
    return out;
}

}  // namespace detail

inline std::vector<GaussStep> gauss_map_orbit(const ReducedFraction& x, int depth) {
    if (depth < 1) throw std::invalid_argument("gauss_map_orbit: depth must be >= 1");
    if (x.r() <= 0 || x.r() >= x.b()) throw std::domain_error("gauss_map_orbit: x must lie in (0,1)");
    return detail::gauss_orbit_u128(static_cast<u128>(x.r()), static_cast<u128>(x.b()), depth);
}

/// Orbit of a double, treated as the exact dyadic rational it represents.
inline std::vector<GaussStep> gauss_map_orbit(double x, int depth) {
    if (depth < 1) throw std::invalid_argument("gauss_map_orbit: depth must be >= 1");
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("gauss_map_orbit: x must lie in (0,1)");
    int e = 0;
    double m = std::frexp(x, &e);  // x = m 2^e, m in [0.5,1)
    u64 mant = static_cast<u64>(std::ldexp(m, 53));
    int shift = 53 - e;
    if (shift > 126) throw std::domain_error("gauss_map_orbit: x too small for exact dyadic orbit");
    u128 den = static_cast<u128>(1) << shift;
    u128 num = mant;
    while ((num & 1) == 0 && den > 1) { num >>= 1; den >>= 1; }
    return detail::gauss_orbit_u128(num, den, depth);
}

inline std::vector<GaussStep> gauss_map_orbit(const QuadraticIrrational& x0, int depth) {
    if (depth < 1) throw std::invalid_argument("gauss_map_orbit: depth must be >= 1");
    double v = x0.value();
    if (!(v > 0.0 && v < 1.0)) throw std::domain_error("gauss_map_orbit: x must lie in (0,1)");
    std::vector<GaussStep> out;
    double beta_prev = 1.0;
    QuadraticIrrational x = x0;
    i64 a = 0;
    for (int k = 0; k < depth; ++k) {
        detail::push_gauss_step(out, x.value(), a, beta_prev);
        QuadraticIrrational inv = x.reciprocal();
        a = inv.floor();
        x = inv.minus(a);
    }
    return out;
}

struct ArithmeticalValues {
    int mu;
    i64 phi;
    double sigma;  // σ_α(n)
};

struct PrimePower {
    i64 p;
    int e;
};

inline std::vector<PrimePower> factorize(i64 n) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    std::vector<PrimePower> f;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

inline int mobius(i64 n) {
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline i64 totient(i64 n) {
    i64 phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

/// σ_α(n) = Σ_{d|n} d^α for real α.
inline double divisor_sigma(i64 n, double alpha) {
    double s = 1.0;
    for (auto [p, e] : factorize(n)) {
        double term = 1.0, acc = 1.0, pa = std::pow(static_cast<double>(p), alpha);
        for (int i = 0; i < e; ++i) { term *= pa; acc += term; }
        s *= acc;
    }
    return s;
}

inline ArithmeticalValues arithmetical(i64 n, double alpha = 0.0) {
    if (n < 1) throw std::domain_error("arithmetical: n must be >= 1");
    return {mobius(n), totient(n), divisor_sigma(n, alpha)};
}

inline std::vector<int> mobius_sieve(i64 N) {
    std::vector<int> mu(N + 1, 1);
    std::vector<bool> composite(N + 1, false);
    if (N >= 0) mu[0] = 0;
    for (i64 p = 2; p <= N; ++p) {
        if (composite[p]) continue;
        for (i64 m = p; m <= N; m += p) {
            if (m > p) composite[m] = true;
            mu[m] = -mu[m];
        }
        if (p <= N / p)
            for (i64 m = p * p; m <= N; m += p * p) mu[m] = 0;
    }
    return mu;
}

/// d(n) for n ≤ N.
inline std::vector<std::uint32_t> divisor_count_sieve(i64 N) {
    std::vector<std::uint32_t> d(N + 1, 0);
    for (i64 k = 1; k <= N; ++k)
        for (i64 m = k; m <= N; m += k) ++d[m];
    return d;
}

inline std::vector<i64> totient_sieve(i64 N) {
    std::vector<i64> phi(N + 1);
    std::iota(phi.begin(), phi.end(), i64{0});
    for (i64 p = 2; p <= N; ++p) {
        if (phi[p] != p) continue;
        for (i64 m = p; m <= N; m += p) phi[m] -= phi[m] / p;
    }
    return phi;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

}  // namespace cotan
