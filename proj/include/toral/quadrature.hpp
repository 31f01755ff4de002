#pragma once

#include <functional>
#include <vector>

namespace toral::quad {

/// Gauss-Legendre rule on [0, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// m-point Gauss-Legendre rule mapped to [0, 1]; m >= 1.
Rule gauss_legendre(int m);

/// Adaptive bisection with a 15-point Gauss-Legendre panel compared against
/// its two halves. Stops when the panel disagreement is below
/// max(abs_tol, rel_tol * |total|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, double abs_tol = 0.0);

} // namespace toral::quad
