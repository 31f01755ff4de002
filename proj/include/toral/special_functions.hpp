#pragma once

// Real-argument special functions used by the Epstein and period code.

namespace toral::special {

/// Gamma function for x > 0.
double gamma(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt for a > 0, x >= 0.
double upper_incomplete_gamma(double a, double x);

/// Gamma(a, x) for any real a and x > 0 (analytic continuation in a).
/// Non-positive a is reached through the downward recurrence from a + k > 0,
/// and a = 0 is the exponential integral E1(x).
double upper_incomplete_gamma_ext(double a, double x);

/// Exponential integral E1(x) for x > 0.
double exp_integral_e1(double x);

double erfc(double x);

/// Kernel of the approximate functional equation:
///   f(s, a) = (pi a^2)^(-s/2) Gamma(s/2, pi a^2) = int_1^inf t^(s/2) exp(-pi t a^2) dt / t.
/// Defined for every real s and a > 0.
double f_term(double s, double a);

/// Riemann zeta for real s != 1 (Euler-Maclaurin).
double riemann_zeta(double s);

/// Hurwitz zeta zeta(s, q) for real s != 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// Volume of the Euclidean unit ball in R^d.
double unit_ball_volume(int d);

} // namespace toral::special
