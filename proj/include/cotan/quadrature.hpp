/**
 * @file quadrature.hpp
 * @brief Adaptive Simpson and Gauss–Legendre rules.
 */
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cotan {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth,
                   QuadResult& res) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) {
        res.converged = false;
        res.error_estimate += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol) {
        res.error_estimate += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, res) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, res);
}

}  // namespace detail

template <class F>
QuadResult adaptive_simpson(F&& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    QuadResult res;
    if (a == b) return res;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    res.value = detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth, res);
    return res;
}

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1,1]
    std::vector<double> weights;

    explicit GaussLegendreRule(int n) : nodes(n), weights(n) {
        if (n < 1) throw std::invalid_argument("GaussLegendreRule: n must be >= 1");
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <class F>
    auto integrate(F&& f, double a, double b) const {
        double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        decltype(f(a)) acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(mid + half * nodes[i]);
        return acc * half;
    }
};

}  // namespace cotan
