#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace reslevy {

// Tanh-sinh quadrature on a finite interval. Tolerates integrable endpoint
// singularities; the integrand is never evaluated exactly at a or b.
template <typename F>
double integrate_finite(F f, double a, double b, double rel_tol = 1e-12, int max_level = 12) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double t_max = 6.11;  // tanh(pi/2 sinh 6.11) is 1 ulp from 1
    const double pi_half = 1.5707963267948966;

    auto node_sum = [&](double h, bool odd_only) {
        double sum = 0.0;
        const int kmax = static_cast<int>(t_max / h);
        for (int k = odd_only ? 1 : 0; k <= kmax; k += odd_only ? 2 : 1) {
            const double t = k * h;
            const double s = pi_half * std::sinh(t);
            const double w = pi_half * std::cosh(t) / (std::cosh(s) * std::cosh(s));
            if (w < 1e-320) break;
            const double u = std::tanh(s);  // in (-1, 1)
            const double x1 = mid + half * u;
            const double x2 = mid - half * u;
            double v = 0.0;
            if (k == 0) {
                v = f(x1);
            } else {
                if (x1 > a && x1 < b) v += f(x1);
                if (x2 > a && x2 < b) v += f(x2);
            }
            if (std::isfinite(v)) sum += w * v;
        }
        return sum;
    };

    double h = 1.0;
    double total = node_sum(h, false);
    double result = half * h * total;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        total += node_sum(h, true);
        const double next = half * h * total;
        if (level >= 3 && std::abs(next - result) <= rel_tol * std::abs(next) + 1e-300) {
            return next;
        }
        result = next;
    }
    return result;
}

// Exp-sinh quadrature on (0, inf) via x = exp(pi/2 sinh t). Handles power or
// logarithmic singularities at 0 and exponential decay at infinity.
template <typename F>
double integrate_zero_inf(F f, double rel_tol = 1e-12, int max_level = 12) {
    const double t_max = 6.0;
    const double pi_half = 1.5707963267948966;

    auto node_sum = [&](double h, bool odd_only) {
        double sum = 0.0;
        const int kmax = static_cast<int>(t_max / h);
        for (int k = odd_only ? -kmax + (kmax % 2 == 0 ? 1 : 0) : -kmax; k <= kmax;
             k += odd_only ? 2 : 1) {
            const double t = k * h;
            const double s = pi_half * std::sinh(t);
            if (s > 700.0 || s < -740.0) continue;
            const double x = std::exp(s);
            const double w = x * pi_half * std::cosh(t);
            const double v = f(x);
            if (std::isfinite(v)) {
                const double term = w * v;
                if (std::isfinite(term)) sum += term;
            }
        }
        return sum;
    };

    double h = 1.0;
    double total = node_sum(h, false);
    double result = h * total;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        total += node_sum(h, true);
        const double next = h * total;
        if (level >= 3 && std::abs(next - result) <= rel_tol * std::abs(next) + 1e-300) {
            return next;
        }
        result = next;
    }
    return result;
}

}  // namespace reslevy
