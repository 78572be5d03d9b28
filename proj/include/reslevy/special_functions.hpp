#pragma once

#include <cstddef>

namespace reslevy {

// Digamma function psi(z) for real z away from the poles at 0, -1, -2, ...
// Evaluated by upward argument recurrence into the Bernoulli asymptotic
// series; negative arguments go through the reflection formula. Relative
// error is below 1e-12 on (0, 60] (checked against the integral
// representation in the test suite).
double digamma(double z);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt, x > 0.
double expint_e1(double x);

// Solves E1(z) = target for z > 0 (E1 is strictly decreasing).
double expint_e1_inverse(double target);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Standard normal CDF.
double normal_cdf(double z);

// CDF of Gamma(shape, rate) at t >= 0.
double gamma_cdf(double shape, double rate, double t);

// CDF of Beta(a, b) at t in [0, 1].
double beta_cdf(double a, double b, double t);

}  // namespace reslevy
