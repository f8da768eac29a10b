/**
 * @file nyman_beurling.hpp
 * @brief The quadratic form d_N^2 = (1/2π) ∫ |1 - ζ D_N|^2 dt/(1/4 + t^2) on the critical line:
 *        Gram entries from the Vasyunin closed form, the linear term, V_N and optimal coefficients.
 */
#pragma once

#include "cotangent_sums.hpp"
#include "fast_eval.hpp"
#include "io.hpp"
#include "numtheory.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "zeta.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan {

/// 2 + γ - log 4π
inline double bcf_constant() { return 2.0 + kEulerGamma - std::log(4.0 * std::numbers::pi); }

/// (1/2π) ∫ |ζ(1/2+it)|^2 (r/b)^{it} dt/(1/4+t^2) for coprime r, b, from the Vasyunin closed form.
/// Non-coprime pairs are reduced first; the integral only sees r/b.
inline double gram_entry(i64 r, i64 b) {
    if (r < 1 || b < 1) throw std::domain_error("gram_entry: r, b must be >= 1");
    i64 g = gcd64(r, b);
    r /= g;
    b /= g;
    const double rd = static_cast<double>(r), bd = static_cast<double>(b);
    auto V = [](i64 num, i64 den) { return den == 1 ? 0.0 : vasyunin(ReducedFraction(num % den, den)).value; };
    double rhs = (kLog2Pi - kEulerGamma) / 2.0 * (1.0 / rd + 1.0 / bd) + (bd - rd) / (2.0 * rd * bd) * std::log(rd / bd) -
                 std::numbers::pi / (2.0 * rd * bd) * (V(r, b) + V(b, r));
    return std::sqrt(rd * bd) * rhs;
}

/// (1 + log n - γ)/n; the cross-term integral (1/2π) ∫ ζ(1/2+it) n^{-1/2-it} dt/(1/4+t^2) equals minus this.
inline double linear_term(i64 n) {
    if (n < 1) throw std::domain_error("linear_term: n must be >= 1");
    double nd = static_cast<double>(n);
    return (1.0 + std::log(nd) - kEulerGamma) / nd;
}

// ---------------------------------------------------------------------------------------------
// Quadrature cross-checks on [0, T]

namespace detail {

struct CriticalLineSamples {
    double T = 0.0;
    std::vector<double> t, w;
    std::vector<cplx> zeta;
};

// Gauss–Legendre nodes per unit interval on [0, T], with ζ(1/2+it); cached per T.
inline std::shared_ptr<const CriticalLineSamples> critical_line_samples(double T) {
    static std::mutex mu;
    static std::vector<std::shared_ptr<const CriticalLineSamples>> cache;
    std::lock_guard<std::mutex> lk(mu);
    for (auto& c : cache)
        if (c->T == T) return c;
    auto s = std::make_shared<CriticalLineSamples>();
    s->T = T;
    GaussLegendreRule gl(10);
    const i64 units = static_cast<i64>(std::ceil(T));
    s->t.resize(units * 10);
    s->w.resize(units * 10);
    s->zeta.resize(units * 10);
    for (i64 u = 0; u < units; ++u) {
        double a = static_cast<double>(u), b = std::min(T, a + 1.0);
        for (int i = 0; i < 10; ++i) {
            s->t[u * 10 + i] = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
            s->w[u * 10 + i] = 0.5 * (b - a) * gl.weights[i];
        }
    }
    parallel_for(static_cast<std::int64_t>(s->t.size()), [&](std::int64_t i) { s->zeta[i] = zeta_critical_line(s->t[i]); });
    cache.push_back(s);
    return s;
}

}  // namespace detail

struct QuadratureCheck {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double tail = 0.0;
    double relative_defect = 0.0;
    bool within_tol = false;
};

/// Gram integral by quadrature on [-T, T] plus the mean-value tail log(t/2π) + 2γ.
inline QuadratureCheck gram_quadrature_check(i64 r, i64 b, double T = 2000.0, double tol = 2e-3) {
    if (r < 1 || b < 1) throw std::domain_error("gram_quadrature_check: r, b must be >= 1");
    if (!(T >= 10.0 && T <= 1e4)) throw std::domain_error("gram_quadrature_check: T must lie in [10, 1e4]");
    auto s = detail::critical_line_samples(T);
    const double lam = std::log(static_cast<double>(r) / static_cast<double>(b));
    long double acc = 0.0L;
    for (std::size_t i = 0; i < s->t.size(); ++i) {
        double t = s->t[i];
        acc += s->w[i] * std::norm(s->zeta[i]) * std::cos(lam * t) / (0.25 + t * t);
    }
    QuadratureCheck q;
    double fT = (std::log(T / (2.0 * std::numbers::pi)) + 2.0 * kEulerGamma) / (T * T);
    if (std::abs(lam) < 1e-15) q.tail = (std::log(T / (2.0 * std::numbers::pi)) + 2.0 * kEulerGamma + 1.0) / T;
    else q.tail = -fT * std::sin(lam * T) / lam;  // leading term of integration by parts
    q.quadrature = static_cast<double>(acc / std::numbers::pi) + q.tail / std::numbers::pi;
    q.closed_form = gram_entry(r, b);
    q.relative_defect = std::abs(q.quadrature - q.closed_form) / std::abs(q.closed_form);
    q.within_tol = q.relative_defect < tol;
    return q;
}

/// Cross-term integral by quadrature, compared with -linear_term(n).
inline QuadratureCheck linear_term_quadrature_check(i64 n, double T = 2000.0, double tol = 2e-3) {
    if (n < 1) throw std::domain_error("linear_term_quadrature_check: n must be >= 1");
    auto s = detail::critical_line_samples(T);
    const double ln = std::log(static_cast<double>(n)), sn = 1.0 / std::sqrt(static_cast<double>(n));
    long double acc = 0.0L;
    for (std::size_t i = 0; i < s->t.size(); ++i) {
        double t = s->t[i];
        cplx v = s->zeta[i] * std::polar(sn, -t * ln);
        acc += s->w[i] * v.real() / (0.25 + t * t);
    }
    QuadratureCheck q;
    q.tail = n == 1 ? 1.0 / T : 0.0;  // ζ(1/2+it) n^{-it} has mean 1 only for n = 1
    q.quadrature = static_cast<double>(acc / std::numbers::pi) + q.tail / std::numbers::pi;
    q.closed_form = -linear_term(n);
    q.relative_defect = std::abs(q.quadrature - q.closed_form) / std::abs(q.closed_form);
    q.within_tol = q.relative_defect < tol;
    return q;
}

// ---------------------------------------------------------------------------------------------
// Gram systems

enum class DKind { v_n_polynomial, optimal };

inline const char* dkind_name(DKind k) { return k == DKind::optimal ? "optimal" : "v_n_polynomial"; }

struct GramSystem {
    int N = 0;
    Eigen::MatrixXd G;       // G_{rb} = gram_entry(r,b)/√(rb)
    Eigen::VectorXd linear;  // c_n = -linear_term(n)
    Eigen::VectorXd coeffs;
    DKind kind = DKind::optimal;
    double d2 = 0.0;
    double min_eigenvalue = 0.0;
};

/// a_n = (1 - log n / log N) μ(n), n = 1..N.
inline std::vector<double> vn_coefficients(int N) {
    if (N < 2) throw std::domain_error("vn_coefficients: N must be >= 2");
    std::vector<double> a(N);
    auto mu = mobius_sieve(N);
    const double lN = std::log(static_cast<double>(N));
    for (int n = 1; n <= N; ++n) a[n - 1] = mu[n] == 0 ? 0.0 : (1.0 - std::log(static_cast<double>(n)) / lN) * mu[n];
    return a;
}

namespace detail {

// V(r/b) for all coprime pairs with b ≤ N, via V(r/b) = -c_0(r̄/b).
inline std::vector<std::vector<double>> vasyunin_table(int N) {
    std::vector<std::vector<double>> V(N + 1);
    parallel_for(N + 1, [&](std::int64_t b) {
        if (b < 2) return;
        auto c0 = c0_naive_all(b);
        V[b].assign(b, 0.0);
        for (i64 r = 1; r < b; ++r)
            if (gcd64(r, b) == 1) V[b][r] = -c0[mod_inverse(r, b)];
    });
    return V;
}

}  // namespace detail

/// G (N×N) and c, with d^2(a) = 1 - 2 a·c + aᵀ G a. c_n = (1/2π)∫ ζ(1/2+it) n^{-1/2-it} dt/(1/4+t^2) = -linear_term(n).
inline GramSystem assemble_gram(int N) {
    if (N < 1 || N > 2000) throw std::domain_error("assemble_gram: N must lie in [1, 2000]");
    auto V = detail::vasyunin_table(N);
    auto Vf = [&](i64 num, i64 den) { return den == 1 ? 0.0 : V[den][num % den]; };
    GramSystem gs;
    gs.N = N;
    gs.G.resize(N, N);
    gs.linear.resize(N);
    parallel_for(N, [&](std::int64_t i) {
        const i64 r = i + 1;
        for (i64 b = r; b <= N; ++b) {
            i64 g = gcd64(r, b), rr = r / g, bb = b / g;
            const double rd = static_cast<double>(rr), bd = static_cast<double>(bb);
            double rhs = (kLog2Pi - kEulerGamma) / 2.0 * (1.0 / rd + 1.0 / bd) +
                         (bd - rd) / (2.0 * rd * bd) * std::log(rd / bd) -
                         std::numbers::pi / (2.0 * rd * bd) * (Vf(rr, bb) + Vf(bb, rr));
            double entry = std::sqrt(rd * bd) * rhs / std::sqrt(static_cast<double>(r) * static_cast<double>(b));
            gs.G(r - 1, b - 1) = entry;
        }
    });
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < i; ++j) gs.G(i, j) = gs.G(j, i);
    for (int n = 1; n <= N; ++n) gs.linear(n - 1) = -linear_term(n);
    return gs;
}

inline double d2_of(const GramSystem& gs, const Eigen::VectorXd& a) {
    return 1.0 - 2.0 * a.dot(gs.linear) + a.dot(gs.G * a);
}

/// d^2 for a prefix N ≤ gs.N of an assembled system.
inline GramSystem d_squared_from(const GramSystem& full, int N, DKind kind) {
    if (N < 1 || N > full.N) throw std::domain_error("d_squared: N out of range");
    GramSystem gs;
    gs.N = N;
    gs.kind = kind;
    gs.G = full.G.topLeftCorner(N, N);
    gs.linear = full.linear.head(N);
    if (kind == DKind::optimal) {
        Eigen::LLT<Eigen::MatrixXd> llt(gs.G);
        if (llt.info() != Eigen::Success) throw std::runtime_error("d_squared: Gram matrix not positive definite");
        gs.coeffs = llt.solve(gs.linear);
        // 1 - cᵀ G^{-1} c, from the triangular factor for accuracy
        Eigen::VectorXd y = llt.matrixL().solve(gs.linear);
        gs.d2 = 1.0 - y.squaredNorm();
    } else {
        if (N < 2) throw std::domain_error("d_squared: V_N needs N >= 2");
        auto a = vn_coefficients(N);
        gs.coeffs = Eigen::Map<Eigen::VectorXd>(a.data(), N);
        gs.d2 = d2_of(gs, gs.coeffs);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gs.G, Eigen::EigenvaluesOnly);
    gs.min_eigenvalue = es.eigenvalues()(0);
    return gs;
}

inline GramSystem d_squared(int N, DKind kind) { return d_squared_from(assemble_gram(N), N, kind); }

/// Optimal d^2(n) for n = 1..N from one incremental Cholesky factorization; nonincreasing by construction.
inline std::vector<double> optimal_d2_sequence(const GramSystem& full) {
    const int N = full.N;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
    std::vector<double> out;
    long double acc = 0.0L;  // ||y||^2
    Eigen::VectorXd y(N);
    for (int n = 0; n < N; ++n) {
        for (int j = 0; j < n; ++j) {
            double s = full.G(n, j);
            for (int k = 0; k < j; ++k) s -= L(n, k) * L(j, k);
            L(n, j) = s / L(j, j);
        }
        double d = full.G(n, n);
        for (int k = 0; k < n; ++k) d -= L(n, k) * L(n, k);
        if (!(d > 0.0)) throw std::runtime_error("optimal_d2_sequence: Gram matrix not positive definite");
        L(n, n) = std::sqrt(d);
        double s = full.linear(n);
        for (int k = 0; k < n; ++k) s -= L(n, k) * y(k);
        y(n) = s / L(n, n);
        acc += static_cast<long double>(y(n)) * y(n);
        out.push_back(static_cast<double>(1.0L - acc));
    }
    return out;
}

struct BCFRow {
    int N = 0;
    double d2_vn = 0.0, d2_opt = 0.0;
    double vn_scaled = 0.0, opt_scaled = 0.0;  // d^2 log N
};

struct BCFReport {
    double constant = bcf_constant();
    std::vector<BCFRow> rows;
    std::string trend;  // of d^2(V_N) log N over the table
};

inline BCFReport bcf_asymptotic_report(const std::vector<int>& N_list) {
    BCFReport rep;
    if (N_list.empty()) return rep;
    int Nmax = 0;
    for (int N : N_list) {
        if (N < 10 || N > 2000) throw std::domain_error("bcf_asymptotic_report: N must lie in [10, 2000]");
        Nmax = std::max(Nmax, N);
    }
    GramSystem full = assemble_gram(Nmax);
    auto opt = optimal_d2_sequence(full);
    for (int N : N_list) {
        BCFRow row;
        row.N = N;
        row.d2_vn = d_squared_from(full, N, DKind::v_n_polynomial).d2;
        row.d2_opt = opt[N - 1];
        row.vn_scaled = row.d2_vn * std::log(static_cast<double>(N));
        row.opt_scaled = row.d2_opt * std::log(static_cast<double>(N));
        rep.rows.push_back(row);
    }
    if (rep.rows.size() >= 2) {
        double first = rep.rows.front().vn_scaled, last = rep.rows.back().vn_scaled;
        rep.trend = last < first ? "decreasing" : (last > first ? "increasing" : "flat");
    } else {
        rep.trend = "single point";
    }
    return rep;
}

/// Gram matrix as CSV (17 significant digits) and metadata as JSON.
inline void export_gram(const GramSystem& gs, std::ostream& csv, std::ostream& json) {
    for (int i = 0; i < gs.N; ++i) {
        std::vector<std::string> cells;
        for (int j = 0; j < gs.N; ++j) cells.push_back(format_real(gs.G(i, j)));
        csv << csv_row(cells) << '\n';
    }
    nlohmann::ordered_json meta;
    meta["N"] = gs.N;
    meta["kind"] = dkind_name(gs.kind);
    meta["d2"] = format_real(gs.d2);
    meta["constants"] = {{"log2pi_minus_gamma", format_real(kLog2Pi - kEulerGamma)},
                         {"one_minus_gamma", format_real(1.0 - kEulerGamma)},
                         {"bcf_constant", format_real(bcf_constant())}};
    std::vector<std::string> lin, co;
    for (int i = 0; i < gs.N; ++i) lin.push_back(format_real(gs.linear(i)));
    for (int i = 0; i < gs.coeffs.size(); ++i) co.push_back(format_real(gs.coeffs(i)));
    meta["linear"] = lin;
    meta["coeffs"] = co;
    json << meta.dump(2) << '\n';
}

}  // namespace cotan
