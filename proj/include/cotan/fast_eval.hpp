/**
 * @file fast_eval.hpp
 * @brief Eisenstein-type series E_a and the period functions ψ_a, a fast evaluator for the
 *        real period function ψ on (0,1], and the O(CF length) evaluation of c_0 built on it.
 */
#pragma once

#include "cotangent_sums.hpp"
#include "numtheory.hpp"
#include "zeta.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotan {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;

// ---------------------------------------------------------------------------------------------
// Eisenstein-type series

struct PsiSeriesConfig {
    i64 n_terms = 0;  // 0: choose the truncation from the tail bound
    std::vector<double> epsilon_ladder{1e-2, 1e-3, 1e-4, 1e-5};
    int extrapolation_order = 3;
    double tolerance = 1e-15;
    i64 max_terms = 20'000'000;

    void validate() const {
        if (n_terms < 0) throw std::invalid_argument("PsiSeriesConfig: n_terms must be >= 0");
        if (epsilon_ladder.empty()) throw std::invalid_argument("PsiSeriesConfig: empty epsilon ladder");
        for (std::size_t i = 0; i < epsilon_ladder.size(); ++i) {
            if (!(epsilon_ladder[i] > 0)) throw std::invalid_argument("PsiSeriesConfig: ladder entries must be > 0");
            if (i && !(epsilon_ladder[i] < epsilon_ladder[i - 1]))
                throw std::invalid_argument("PsiSeriesConfig: ladder must be strictly decreasing");
        }
        if (extrapolation_order < 0 || extrapolation_order >= static_cast<int>(epsilon_ladder.size()))
            throw std::invalid_argument("PsiSeriesConfig: extrapolation order needs order+1 ladder points");
    }
};

struct SeriesValue {
    cplx value;
    double tail_bound = 0.0;      // truncation
    double rounding_bound = 0.0;  // accumulated floating-point error
    i64 terms = 0;
    bool divergence_warning = false;

    double error_bound() const { return tail_bound + rounding_bound; }
};

namespace detail {

// σ_a(n) tables for n ≤ N, grown on demand and shared read-only.
class SigmaCache {
public:
    static SigmaCache& instance() {
        static SigmaCache c;
        return c;
    }

    std::shared_ptr<const std::vector<double>> get(int a, i64 N) {
        std::lock_guard<std::mutex> lk(mu_);
        auto& slot = tables_[a];
        if (!slot || static_cast<i64>(slot->size()) <= N) {
            i64 M = std::max<i64>(N, slot ? 2 * static_cast<i64>(slot->size()) : 1024);
            auto t = std::make_shared<std::vector<double>>(M + 1, 0.0);
            for (i64 d = 1; d <= M; ++d) {
                double da = a == 0 ? 1.0 : std::pow(static_cast<double>(d), a);
                for (i64 m = d; m <= M; m += d) (*t)[m] += da;
            }
            slot = t;
        }
        return slot;
    }

private:
    std::mutex mu_;
    std::map<int, std::shared_ptr<const std::vector<double>>> tables_;
};

// Σ_{m>n} 2 m^{a+1/2} r^m, an upper bound for Σ_{m>n} σ_a(m) r^m.
inline double sigma_tail_bound(int a, i64 n, double r) {
    double m = static_cast<double>(n + 1);
    double rho = std::pow(1.0 + 1.0 / m, a + 0.5) * r;
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    double lead = 2.0 * std::exp((a + 0.5) * std::log(m) + m * std::log(r));
    return lead / (1.0 - rho);
}

}  // namespace detail

/// ζ(-a) for integer a ≥ 0.
inline double zeta_at_neg(int a) { return a == 0 ? -0.5 : zeta_neg_int(a); }

using cplx_ld = std::complex<long double>;

/// E_a(s) = 1 + (2/ζ(-a)) Σ σ_a(n) e^{2πins}, Im s > 0, integer a ≥ 0 with ζ(-a) ≠ 0.
/// Summed in extended precision; the argument s is treated as exact.
namespace detail {

struct ExtSeries {
    cplx_ld value;
    SeriesValue info;
};

inline ExtSeries eisenstein_ext(int a, cplx_ld s, const PsiSeriesConfig& cfg) {
    if (a < 0) throw std::domain_error("eisenstein_E: a must be a nonnegative integer");
    if (a >= 2 && a % 2 == 0) throw std::domain_error("eisenstein_E: ζ(-a) = 0 for even a >= 2");
    if (!(s.imag() > 0)) throw std::domain_error("eisenstein_E: Im s must be positive");
    const double coef = 2.0 / zeta_at_neg(a);
    const long double y = s.imag();
    const double r = std::exp(-2.0 * std::numbers::pi * static_cast<double>(y));
    SeriesValue out;
    i64 N = cfg.n_terms;
    if (N == 0) {
        // smallest N whose tail bound meets the tolerance (relative to 1, the constant term)
        N = 1;
        while (std::abs(coef) * detail::sigma_tail_bound(a, N, r) > cfg.tolerance) {
            N = N < 64 ? N + 1 : N + N / 8;
            if (N > cfg.max_terms) {
                N = cfg.max_terms;
                out.divergence_warning = true;
                break;
            }
        }
    }
    auto sig = detail::SigmaCache::instance().get(a, N);
    const long double xr = s.real() - std::floor(s.real());
    const long double twopi = 2.0L * kPiL;
    cplx_ld acc = 0.0L, qn = 1.0L, q = std::polar(std::exp(-twopi * y), twopi * xr);
    long double abs_sum = 0.0L, nabs_sum = 0.0L;
    for (i64 n = 1; n <= N; ++n) {
        if ((n & 63) == 0) {
            long double ph = std::fmod(static_cast<long double>(n) * xr, 1.0L);
            qn = std::polar(std::exp(-twopi * y * static_cast<long double>(n)), twopi * ph);
        } else {
            qn *= q;
        }
        cplx_ld term = static_cast<long double>((*sig)[n]) * qn;
        acc += term;
        long double at = std::abs(term);
        abs_sum += at;
        nabs_sum += at * static_cast<long double>(n);
    }
    const double eps_ld = 1.1e-19;
    const cplx_ld val = 1.0L + static_cast<long double>(coef) * acc;
    out.value = cplx(static_cast<double>(val.real()), static_cast<double>(val.imag()));
    out.terms = N;
    out.tail_bound = std::abs(coef) * detail::sigma_tail_bound(a, N, r);
    // recurrence drift, phase reduction error (grows with n), final rounding to double
    double phase_err = 2.0 * std::numbers::pi * eps_ld * (1.0 + std::abs(static_cast<double>(s.real())));
    out.rounding_bound = std::abs(coef) * (static_cast<double>(abs_sum) * 200.0 * eps_ld +
                                           static_cast<double>(nabs_sum) * phase_err) +
                         8.0 * eps_ld * (1.0 + std::abs(coef) * static_cast<double>(std::abs(acc)));
    return {val, out};
}

}  // namespace detail

inline SeriesValue eisenstein_E(int a, cplx s, const PsiSeriesConfig& cfg = {}) {
    auto e = detail::eisenstein_ext(a, cplx_ld(s.real(), s.imag()), cfg);
    e.info.rounding_bound += 2.3e-16 * std::abs(e.info.value);
    return e.info;
}

/// 𝒮_a(s) = Σ σ_a(n) e^{2πins}.
inline SeriesValue divisor_series_S(int a, cplx s, const PsiSeriesConfig& cfg = {}) {
    SeriesValue e = eisenstein_E(a, s, cfg);
    double scale = zeta_at_neg(a) / 2.0;
    e.value = (e.value - 1.0) * scale;
    e.tail_bound *= std::abs(scale);
    e.rounding_bound *= std::abs(scale);
    return e;
}

/// ψ_a(s) = E_a(s) - s^{-(a+1)} E_a(-1/s).
inline SeriesValue psi(int a, cplx s, const PsiSeriesConfig& cfg = {}) {
    const cplx_ld sl(s.real(), s.imag());
    auto e1 = detail::eisenstein_ext(a, sl, cfg);
    auto e2 = detail::eisenstein_ext(a, -1.0L / sl, cfg);
    const cplx_ld f = std::pow(sl, -(a + 1));
    const cplx_ld v = e1.value - f * e2.value;
    const double fa = static_cast<double>(std::abs(f));
    SeriesValue out;
    out.value = cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    out.tail_bound = e1.info.tail_bound + fa * e2.info.tail_bound;
    out.rounding_bound = e1.info.rounding_bound + fa * e2.info.rounding_bound +
                         1.1e-19 * (8.0 + 4.0 * (a + 1)) * static_cast<double>(std::abs(f * e2.value)) +
                         2.3e-16 * std::abs(out.value);
    out.terms = e1.info.terms + e2.info.terms;
    out.divergence_warning = e1.info.divergence_warning || e2.info.divergence_warning;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Reciprocity

/// c_0(r/b) + (b/r) c_0(b/r) - 1/(π r), evaluated from the direct sums; equals (i/2) ψ_0(r/b).
inline double reciprocity_defect(const ReducedFraction& x) {
    const i64 r = x.r(), b = x.b();
    if (r < 1) throw std::domain_error("reciprocity_defect: r must be >= 1");
    long double c_rb = b >= 2 ? static_cast<long double>(c0_naive(x).value) : 0.0L;
    long double c_br = r >= 2 ? static_cast<long double>(c0_naive(ReducedFraction(b % r, r)).value) : 0.0L;
    return static_cast<double>(c_rb + static_cast<long double>(b) / r * c_br - 1.0L / (kPiL * r));
}

struct BoundaryValue {
    cplx value;
    double error_bound = 0.0;
    bool unstable = false;
    std::vector<cplx> ladder_values;
};

/// ψ_0(x) on the real axis: ψ_0(x + iε) along the ladder, polynomially extrapolated to ε = 0.
inline BoundaryValue psi0_boundary(double x, const PsiSeriesConfig& cfg = {}) {
    cfg.validate();
    if (!(x > 0)) throw std::domain_error("psi0_boundary: x must be positive");
    const auto& eps = cfg.epsilon_ladder;
    const int k = cfg.extrapolation_order;
    const std::size_t n0 = eps.size() - static_cast<std::size_t>(k) - 1;
    BoundaryValue out;
    std::vector<double> errs;
    for (double e : eps) {
        SeriesValue v = psi(0, cplx(x, e), cfg);
        out.ladder_values.push_back(v.value);
        errs.push_back(v.error_bound());
    }
    // Lagrange extrapolation at ε = 0 through nodes n0..n0+j
    auto extrapolate = [&](std::size_t first, std::size_t count, double* weight_abs) {
        cplx acc = 0.0;
        double wsum = 0.0;
        for (std::size_t i = first; i < first + count; ++i) {
            double w = 1.0;
            for (std::size_t j = first; j < first + count; ++j)
                if (j != i) w *= eps[j] / (eps[j] - eps[i]);
            acc += w * out.ladder_values[i];
            wsum += std::abs(w) * errs[i];
        }
        if (weight_abs) *weight_abs = wsum;
        return acc;
    };
    double prop = 0.0;
    out.value = extrapolate(n0, k + 1, &prop);
    std::vector<double> diffs;
    cplx prev = out.ladder_values.back();
    for (int j = 1; j <= k; ++j) {
        std::size_t first = eps.size() - 1 - j;
        cplx pj = extrapolate(first, j + 1, nullptr);
        diffs.push_back(std::abs(pj - prev));
        prev = pj;
    }
    double trunc = diffs.empty() ? 0.0 : diffs.back();
    out.error_bound = trunc + prop;
    if (diffs.size() >= 2) {
        double tol = 1e-8 * std::max(1.0, std::abs(out.value));
        out.unstable = diffs.back() > diffs[diffs.size() - 2] && diffs.back() > tol;
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Fast real period function
//
// For x in (0,1], ψ(x) := (i/2) ψ_0(x) is real and
//   ψ(x) = -(1/π)[(log 2πx - γ)/x + log(2π/x) - γ] + F(log x)/(π √x),
//   F(L) = ∫ H(t) e^{-itL} dt,  H(t) = Γ(s)(2π)^{-s} ζ(s)^2 / sin(πs/2),  s = 1/2 + it.
// H decays like e^{-π|t|}; F is tabulated by piecewise Chebyshev series in L.

class PeriodFunction {
public:
    static constexpr double kLmin = -44.0;
    static constexpr double kPieceWidth = 4.0;
    static constexpr int kDegree = 40;

    static const PeriodFunction& instance() {
        static const PeriodFunction pf;
        return pf;
    }

    /// ψ(x) for x in (0,1].
    double operator()(double x) const {
        if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("PeriodFunction: x must lie in (0,1]");
        double L = std::log(x);
        return elementary(x) + F(L) / (std::numbers::pi * std::sqrt(x));
    }

    double error_bound(double x) const {
        double L = std::log(x);
        double lx = std::log(2.0 * std::numbers::pi * x) - kEulerGamma;
        double el = (std::abs(lx / x) + std::abs(std::log(2.0 * std::numbers::pi / x)) + kEulerGamma) / std::numbers::pi;
        double f = std::abs(F(L));
        return (f_error_ + 8.0 * 2.3e-16 * f) / (std::numbers::pi * std::sqrt(x)) + 8.0 * 2.3e-16 * el;
    }

    /// ψ(x) by direct trapezoid quadrature, bypassing the Chebyshev table.
    double direct(double x) const {
        if (!(x > 0.0)) throw std::domain_error("PeriodFunction: x must be positive");
        return elementary(x) + F_direct(std::log(x)) / (std::numbers::pi * std::sqrt(x));
    }

    double F(double L) const {
        if (L > 0.0 || L < kLmin) throw std::domain_error("PeriodFunction: log x outside table");
        int idx = std::min(static_cast<int>((L - kLmin) / kPieceWidth), static_cast<int>(pieces_.size()) - 1);
        const auto& p = pieces_[idx];
        double u = (2.0 * L - p.a - p.b) / (p.b - p.a);
        // Clenshaw
        double b1 = 0.0, b2 = 0.0;
        for (int j = kDegree; j >= 1; --j) {
            double t = 2.0 * u * b1 - b2 + p.c[j];
            b2 = b1;
            b1 = t;
        }
        return u * b1 - b2 + 0.5 * p.c[0];
    }

    double F_direct(double L) const {
        double acc = 0.0;
        for (std::size_t j = H_.size() - 1; j >= 1; --j) {
            cplx e = std::polar(1.0, -t_[j] * L);
            acc += 2.0 * (H_[j] * e).real();
        }
        acc += H_[0].real();
        return h_ * acc;
    }

    double table_error() const { return f_error_; }

    static double elementary(double x) {
        return -((std::log(2.0 * std::numbers::pi * x) - kEulerGamma) / x + std::log(2.0 * std::numbers::pi / x) -
                 kEulerGamma) / std::numbers::pi;
    }

    static cplx H(double t) {
        cplx s(0.5, t);
        ZetaConfig zc;
        cplx z = zeta_em(s, zc).value;
        cplx lg = log_gamma(s) - s * kLog2Pi;
        return std::exp(lg) * z * z / std::sin(std::numbers::pi * s / 2.0);
    }

private:
    struct Piece {
        double a, b;
        std::vector<double> c;
    };

    PeriodFunction() {
        h_ = 1.0 / 40.0;
        const double T = 26.0;
        int n = static_cast<int>(T / h_);
        t_.resize(n + 1);
        H_.resize(n + 1);
        double habs = 0.0;
        for (int j = 0; j <= n; ++j) {
            t_[j] = j * h_;
            H_[j] = H(t_[j]);
            habs += (j ? 2.0 : 1.0) * std::abs(H_[j]);
        }
        habs *= h_;
        for (double a = kLmin; a < 0.0 - 1e-12; a += kPieceWidth) {
            Piece p{a, std::min(0.0, a + kPieceWidth), std::vector<double>(kDegree + 1, 0.0)};
            const int m = kDegree + 1;
            std::vector<double> fv(m);
            for (int k = 0; k < m; ++k) {
                double u = std::cos(std::numbers::pi * (k + 0.5) / m);
                fv[k] = F_direct(0.5 * (p.a + p.b) + 0.5 * (p.b - p.a) * u);
            }
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int k = 0; k < m; ++k) acc += fv[k] * std::cos(std::numbers::pi * j * (k + 0.5) / m);
                p.c[j] = 2.0 * acc / m;
            }
            pieces_.push_back(std::move(p));
        }
        // Compare table against direct quadrature off the interpolation nodes.
        double dev = 0.0;
        for (const auto& p : pieces_) {
            for (double frac : {0.013, 0.29, 0.5, 0.77, 0.995}) {
                double L = p.a + frac * (p.b - p.a);
                dev = std::max(dev, std::abs(F(L) - F_direct(L)));
            }
        }
        f_error_ = 4.0 * std::max(dev, 4e-16 * habs);
    }

    double h_ = 0.0;
    std::vector<double> t_;
    std::vector<cplx> H_;
    std::vector<Piece> pieces_;
    double f_error_ = 0.0;
};

/// ψ_0(x) = -2i ψ(x) for x in (0,1], via the fast table.
inline cplx psi0_fast(double x) { return cplx(0.0, -2.0 * PeriodFunction::instance()(x)); }

// ---------------------------------------------------------------------------------------------
// c_0 along the Euclidean chain
//
// c_0(r_l/b_l) = ψ(r_l/b_l) + 1/(π r_l) - (b_l/r_l) c_0(r_{l+1}/b_{l+1}),  (r_{l+1}, b_{l+1}) = (b_l mod r_l, r_l),
// ending when r_l = 1. Unrolled: c_0(r/b) = Σ_l (-1)^l (b/b_l)(ψ(r_l/b_l) + 1/(π r_l)).

struct FastC0 {
    SumValue sum;
    int steps = 0;
    bool fell_back = false;
};

inline FastC0 c0_fast_detail(const ReducedFraction& x) {
    if (x.b() < 2) throw std::domain_error("c0_fast: denominator must be >= 2");
    const auto& pf = PeriodFunction::instance();
    const long double b0 = static_cast<long double>(x.b());
    i64 r = x.r() % x.b(), b = x.b();
    long double acc = 0.0L, abs_acc = 0.0L;
    double err = 0.0;
    int sign = 1, steps = 0;
    while (r != 0) {
        double xl = static_cast<double>(r) / static_cast<double>(b);
        double p = pf(xl);
        long double scale = b0 / static_cast<long double>(b);
        long double term = scale * (static_cast<long double>(p) + 1.0L / (kPiL * r));
        acc += sign * term;
        abs_acc += std::abs(term);
        err += static_cast<double>(scale) * pf.error_bound(xl);
        ++steps;
        i64 nr = b % r;
        b = r;
        r = nr;
        sign = -sign;
    }
    FastC0 out;
    out.steps = steps;
    out.sum = {static_cast<double>(acc), Method::fast, err + 16.0 * 2.3e-16 * static_cast<double>(abs_acc)};
    if (!std::isfinite(out.sum.value)) {
        out.sum = c0_naive(x);
        out.fell_back = true;
    }
    return out;
}

inline SumValue c0_fast(const ReducedFraction& x) { return c0_fast_detail(x).sum; }

// ---------------------------------------------------------------------------------------------
// Asymptotics in b

/// Leading terms (1/(πr)) b log b - (b/(πr))(log 2π - γ).
inline double c0_main_terms(i64 r, i64 b) {
    double bd = static_cast<double>(b), rd = static_cast<double>(r);
    return (bd * std::log(bd) - bd * (kLog2Pi - kEulerGamma)) / (std::numbers::pi * rd);
}

struct FitResult {
    i64 r = 1;
    i64 b0 = 1;
    double C1 = 0.0, C1_stderr = 0.0;
    double constant = 0.0, constant_stderr = 0.0;
    double E1 = 0.0, E1_stderr = 0.0;
    std::vector<i64> grid;
    std::vector<double> residuals;  // after the fit
    double max_abs_residual = 0.0;  // of c_0 - main terms (before the fit)
    bool ill_conditioned = false;
};

/// Least squares of c_0(r/b) - main terms against {b, 1, 1/b} over a grid with b ≡ b0 (mod r).
inline FitResult fit_constants(i64 r, i64 b0, const std::vector<i64>& b_grid) {
    if (r < 1) throw std::domain_error("fit_constants: r must be >= 1");
    if (gcd64(r, b0) != 1) throw std::domain_error("fit_constants: gcd(r, b0) must be 1");
    FitResult res;
    res.r = r;
    res.b0 = b0;
    res.grid = b_grid;
    const int n = static_cast<int>(b_grid.size());
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    double bmax = 1.0;
    for (i64 b : b_grid) bmax = std::max(bmax, static_cast<double>(b));
    for (int i = 0; i < n; ++i) {
        i64 b = b_grid[i];
        if (((b - b0) % r + r) % r != 0) throw std::domain_error("fit_constants: grid point not ≡ b0 (mod r)");
        if (b <= r) throw std::domain_error("fit_constants: grid point must exceed r");
        double bd = static_cast<double>(b);
        double resid = c0_naive(ReducedFraction::coprime(r, b)).value - c0_main_terms(r, b);
        res.max_abs_residual = std::max(res.max_abs_residual, std::abs(resid));
        X(i, 0) = bd / bmax;  // scaled columns
        X(i, 1) = 1.0;
        X(i, 2) = 1000.0 / bd;
        y(i) = resid;
    }
    if (n < 6) res.ill_conditioned = true;
    if (n < 4) return res;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::VectorXd beta = qr.solve(y);
    Eigen::VectorXd e = y - X * beta;
    double s2 = e.squaredNorm() / (n - 3);
    Eigen::MatrixXd XtX = X.transpose() * X;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(XtX);
    double cond = svd.singularValues()(0) / svd.singularValues()(2);
    if (cond > 1e12) res.ill_conditioned = true;
    Eigen::MatrixXd cov = XtX.inverse() * s2;
    res.C1 = beta(0) / bmax;
    res.C1_stderr = std::sqrt(std::max(0.0, cov(0, 0))) / bmax;
    res.constant = beta(1);
    res.constant_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
    res.E1 = beta(2) * 1000.0;
    res.E1_stderr = std::sqrt(std::max(0.0, cov(2, 2))) * 1000.0;
    res.residuals.assign(e.data(), e.data() + n);
    return res;
}

/// Closed-form C_1(r, b0) implied by the reciprocity formula: -c_0(b0/r)/r - log(r)/(π r).
inline double c1_reciprocity(i64 r, i64 b0) {
    if (r == 1) return 0.0;
    double c = c0_naive(ReducedFraction::coprime(((b0 % r) + r) % r, r)).value;
    return -c / static_cast<double>(r) - std::log(static_cast<double>(r)) / (std::numbers::pi * r);
}

struct AsymptoticConstants {
    double C1 = 0.0;
    double constant = 1.0 / std::numbers::pi;   // 1/π for r = 1
    std::vector<double> E;                       // E_1, E_2, ...
    double envelope = 1.0;                       // residual envelope reported as error bound
};

/// Fitted constants for c_0(r/b) with b ≡ b0 (mod r), computed once per (r, b0).
inline AsymptoticConstants asymptotic_constants(i64 r, i64 b0) {
    static std::mutex mu;
    static std::map<std::pair<i64, i64>, AsymptoticConstants> cache;
    b0 = ((b0 % r) + r) % r;
    if (r == 1) b0 = 0;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({r, b0});
        if (it != cache.end()) return it->second;
    }
    std::vector<i64> grid;
    for (double lb = 3.0; lb <= 5.0 + 1e-9; lb += 2.0 / 24.0) {
        i64 b = static_cast<i64>(std::pow(10.0, lb));
        b += ((b0 - b) % r + r) % r;
        if (gcd64(r, b) == 1 && (grid.empty() || grid.back() != b)) grid.push_back(b);
    }
    FitResult f = fit_constants(r, r == 1 ? 1 : b0, grid);
    AsymptoticConstants c;
    c.C1 = r == 1 ? 0.0 : f.C1;
    c.constant = f.constant;
    c.E = {f.E1};
    double worst = 0.0;
    for (double e : f.residuals) worst = std::max(worst, std::abs(e));
    c.envelope = 2.0 * worst + 1e-9;
    std::lock_guard<std::mutex> lk(mu);
    cache[{r, b0}] = c;
    return c;
}

/// (1/(πr)) b log b - (b/(πr))(log 2π - γ) + C_1 b + constant + Σ_{l ≤ n_terms} E_l b^{-l}.
inline SumValue c0_asymptotic(i64 b, int n_terms, i64 r = 1) {
    if (r < 1) throw std::domain_error("c0_asymptotic: r must be >= 1");
    if (n_terms < 0) throw std::domain_error("c0_asymptotic: n_terms must be >= 0");
    if (b < 2 || (n_terms > 0 && b < 6 * (n_terms / 2 + 1))) throw std::domain_error("c0_asymptotic: b below validity threshold");
    if (gcd64(r, b) != 1) throw std::domain_error("c0_asymptotic: gcd(r, b) must be 1");
    AsymptoticConstants c = asymptotic_constants(r, b % r);
    double v = c0_main_terms(r, b) + c.C1 * static_cast<double>(b) + c.constant;
    double bp = 1.0;
    int used = std::min<int>(n_terms, static_cast<int>(c.E.size()));
    for (int l = 0; l < used; ++l) {
        bp /= static_cast<double>(b);
        v += c.E[l] * bp;
    }
    double env = used > 0 ? c.envelope : c.envelope + std::abs(c.E.empty() ? 0.0 : c.E[0]) / static_cast<double>(b);
    return {v, Method::asymptotic, env};
}

// ---------------------------------------------------------------------------------------------
// Short intervals

struct MaxScanResult {
    i64 b = 0;
    double C = 0.0, A0 = 0.0, Delta = 0.0;
    i64 r_lo = 0, r_hi = 0;  // strip is [r_lo, r_hi)
    i64 argmax = 0;
    double M = 0.0;
    double observed_D = 0.0;  // π M / (b log b)
    std::optional<double> Omega;
    std::optional<i64> N;
    i64 coprime_in_strip = 0;
};

inline std::pair<i64, i64> strip_bounds(i64 b, double A0, double width) {
    long double lo = static_cast<long double>(A0) * b;
    long double hi = (static_cast<long double>(A0) + width) * b;
    i64 r_lo = static_cast<i64>(std::ceil(lo));
    i64 r_hi = static_cast<i64>(std::ceil(hi));  // exclusive
    return {r_lo, r_hi};
}

/// M(b, C, A0) = max |c_0(r/b)| over A0 b ≤ r < (A0 + b^{-C}) b, and optionally N(b, Δ, Ω).
inline MaxScanResult max_scan(i64 b, double C, double A0, std::optional<double> Omega = std::nullopt,
                              bool naive_scan = false) {
    if (!(C > 0 && C < 0.5)) throw std::domain_error("max_scan: C must lie in (0, 1/2)");
    if (!(A0 > 0 && A0 < 1)) throw std::domain_error("max_scan: A0 must lie in (0, 1)");
    MaxScanResult res;
    res.b = b;
    res.C = C;
    res.A0 = A0;
    res.Delta = std::pow(static_cast<double>(b), -C);
    if (res.Delta * static_cast<double>(b) < 1.0) throw std::domain_error("max_scan: empty strip (Δ b < 1)");
    auto [lo, hi] = strip_bounds(b, A0, res.Delta);
    hi = std::min(hi, b);
    res.r_lo = lo;
    res.r_hi = hi;
    res.Omega = Omega;
    double best = -1.0;
    i64 count = 0;
    for (i64 r = lo; r < hi; ++r) {
        if (gcd64(r, b) != 1) continue;
        ++res.coprime_in_strip;
        double v = naive_scan ? c0_naive(ReducedFraction(r, b)).value : c0_fast(ReducedFraction(r, b)).value;
        if (std::abs(v) > best) {
            best = std::abs(v);
            res.argmax = r;
        }
        if (Omega && static_cast<double>(mod_inverse(r, b)) <= *Omega * static_cast<double>(b)) ++count;
    }
    if (res.coprime_in_strip == 0) throw std::domain_error("max_scan: no reduced fraction in the strip");
    res.M = std::abs(c0_naive(ReducedFraction(res.argmax, b)).value);
    res.observed_D = std::numbers::pi * res.M / (static_cast<double>(b) * std::log(static_cast<double>(b)));
    if (Omega) res.N = count;
    return res;
}

enum class ThresholdKind { loglog, eps_log };

struct CensusResult {
    i64 b = 0;
    double threshold = 0.0;
    std::map<int, i64> histogram;  // count of l meeting the threshold -> number of r
    int max_count = 0;
    i64 fractions = 0;
};

/// For every reduced r/b, count l with (1/v_l)|ψ(v_{l-1}/v_l)| ≥ threshold along the CF of r̄/b.
inline CensusResult cf_growth_census(i64 b, ThresholdKind kind, double eps = 0.5) {
    if (b < 100) throw std::domain_error("cf_growth_census: b must be >= 100");
    const auto& pf = PeriodFunction::instance();
    CensusResult res;
    res.b = b;
    double lb = std::log(static_cast<double>(b));
    res.threshold = kind == ThresholdKind::loglog ? std::log(lb) : eps * lb;
    for (i64 r = 1; r < b; ++r) {
        if (gcd64(r, b) != 1) continue;
        auto cf = continued_fraction(ReducedFraction(mod_inverse(r, b), b));
        int cnt = 0;
        for (std::size_t l = 1; l < cf.convergents.size(); ++l) {
            double vl = static_cast<double>(cf.convergents[l].v);
            double vp = static_cast<double>(cf.convergents[l - 1].v);
            if (std::abs(pf(vp / vl)) / vl >= res.threshold) ++cnt;
        }
        res.histogram[cnt]++;
        res.max_count = std::max(res.max_count, cnt);
        ++res.fractions;
    }
    return res;
}

// ---------------------------------------------------------------------------------------------
// Benchmark

struct BenchRecord {
    i64 b = 0;
    std::string method;
    double nanoseconds = 0.0;
    double value = 0.0;
    double error_bound = 0.0;
    int steps = 0;
};

/// Times c_0(r/b) by both paths; the naive path is skipped above naive_limit.
inline std::vector<BenchRecord> bench_c0(const std::vector<i64>& bs, i64 r = 3, i64 naive_limit = 20'000'000) {
    using clock = std::chrono::steady_clock;
    std::vector<BenchRecord> out;
    PeriodFunction::instance();
    for (i64 b : bs) {
        ReducedFraction x(r % b == 0 ? 1 : r, b);
        if (x.b() != b) x = ReducedFraction(1, b);
        int reps = 1;
        FastC0 f;
        auto t0 = clock::now();
        double dt = 0.0;
        do {
            for (int i = 0; i < reps; ++i) f = c0_fast_detail(x);
            dt = std::chrono::duration<double, std::nano>(clock::now() - t0).count();
            if (dt < 1e6) {
                reps *= 4;
                t0 = clock::now();
            }
        } while (dt < 1e6 && reps < (1 << 20));
        out.push_back({b, "fast", dt / reps, f.sum.value, f.sum.error_bound, f.steps});
        if (b <= naive_limit) {
            auto t1 = clock::now();
            SumValue v = c0_naive(x);
            double dn = std::chrono::duration<double, std::nano>(clock::now() - t1).count();
            out.push_back({b, "naive", dn, v.value, v.error_bound, 0});
        }
    }
    return out;
}

}  // namespace cotan
