#include "toral/epstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "toral/errors.hpp"
#include "toral/quadrature.hpp"
#include "toral/special_functions.hpp"
#include "toral/summation.hpp"

namespace toral {

void EvalConfig::validate() const {
    if (!(tolerance > 0.0 && tolerance <= 1e-2)) throw DomainError("tolerance must lie in (0, 1e-2]");
    if (!(initial_radius_fudge > 0.0)) throw DomainError("initial_radius_fudge must be positive");
    if (max_radius_doublings < 0) throw DomainError("max_radius_doublings must be non-negative");
}

double completion_factor(double s) {
    return std::pow(std::numbers::pi, -0.5 * s) * std::tgamma(0.5 * s);
}

namespace {

constexpr double kPoleGuard = 1e-14;

void check_square(const LatticeBasis& basis) {
    if (!basis.is_square()) throw DegenerateBasisError("Epstein zeta needs a square basis");
}

// 1/2 sum f(s, |v|) over the sorted norms, split at `inner`.
struct FSums {
    double inner = 0.0;
    double all = 0.0;
};

FSums half_f_sums(const std::vector<double>& norms, double s, double inner) {
    CompensatedSum acc;
    double at_inner = 0.0;
    bool split = false;
    for (double r : norms) {
        if (!split && r > inner) {
            at_inner = acc.value();
            split = true;
        }
        acc += special::f_term(s, r);
    }
    if (!split) at_inner = acc.value();
    return {0.5 * at_inner, 0.5 * acc.value()};
}

} // namespace

CompletedValue epstein_direct(const LatticeBasis& basis, double s, const EvalConfig& config) {
    config.validate();
    check_square(basis);
    const int n = basis.rank();
    if (!(s > n)) throw DomainError("epstein_direct needs s > n; use epstein_completed");

    const LatticeBasis g1 = unimodular_normalize(basis);
    const double shortest = shortest_vector_length(g1);
    const double dual_shortest = shortest_vector_length(dual_basis(g1));

    const double k = std::sqrt(std::log(1.0 / config.tolerance) + 5.0);
    const double sigma = k / (std::numbers::pi * dual_shortest);
    const double r0 = shortest + k * sigma;
    const double r_max = r0 + k * sigma;

    EnumerationOptions opts;
    opts.budget = config.enumeration_budget;
    const std::vector<double> norms = enumerate_norms(g1, r_max, opts);
    CompensatedSum lattice_part;
    for (double r : norms) lattice_part += std::pow(r, -s) * 0.5 * std::erfc((r - r0) / sigma);

    // Complement integrated against the density n V_n r^(n-1) dr of a covolume-1 lattice.
    auto density = [&](double r) { return std::pow(r, n - 1 - s) * 0.5 * std::erfc((r0 - r) / sigma); };
    const double lo = 0.5 * shortest;
    double integral = 0.0;
    const double breaks[] = {lo, std::max(lo, r0 - k * sigma), std::max(lo, r0), r_max};
    for (int i = 0; i < 3; ++i)
        if (breaks[i + 1] > breaks[i]) integral += quad::integrate(density, breaks[i], breaks[i + 1], 1e-14);
    integral += std::pow(r_max, n - s) / (s - n);
    const double smooth_part = n * special::unit_ball_volume(n) * integral;

    const double value = 0.5 * (lattice_part.value() + smooth_part);
    const double err = std::abs(value) * 2.0 * n * std::exp(-k * k);
    return {value, err};
}

CompletedValue epstein_completed(const LatticeBasis& basis, double s, const EvalConfig& config) {
    config.validate();
    check_square(basis);
    const int n = basis.rank();
    if (!std::isfinite(s)) throw DomainError("epstein_completed: non-finite s");
    if (std::abs(s) < kPoleGuard || std::abs(s - n) < kPoleGuard)
        throw DomainError("epstein_completed: s is a pole (s = 0 or s = n)");

    const LatticeBasis g1 = unimodular_normalize(basis);
    const LatticeBasis d1 = dual_basis(g1);
    const double tol = config.tolerance;
    double radius = std::max({1.0, std::sqrt(std::log(1.0 / tol) / std::numbers::pi),
                              std::sqrt(std::max(std::abs(s), std::abs(n - s)) / (2.0 * std::numbers::pi))}) *
                    config.initial_radius_fudge;
    const double poles = -1.0 / s - 1.0 / (n - s);
    EnumerationOptions opts;
    opts.budget = config.enumeration_budget;

    double last = 0.0;
    for (int step = 0; step <= config.max_radius_doublings; ++step) {
        const FSums primal = half_f_sums(enumerate_norms(g1, 2.0 * radius, opts), s, radius);
        const FSums dual = half_f_sums(enumerate_norms(d1, 2.0 * radius, opts), n - s, radius);
        last = std::abs((primal.all + dual.all) - (primal.inner + dual.inner));
        if (last < tol / 10.0) return {poles + primal.all + dual.all, last};
        radius *= 2.0;
    }
    throw ConvergenceError("epstein_completed: radius doubling cap exceeded", last);
}

double functional_equation_residual(const LatticeBasis& basis, double s, const EvalConfig& config) {
    const int n = basis.rank();
    const double lhs = epstein_completed(basis, n - s, config).value;
    const double rhs = epstein_completed(dual_basis(basis), s, config).value;
    return std::abs(lhs - rhs);
}

double residue_target(int n) {
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double residue_estimate(const LatticeBasis& basis, const EvalConfig& config) {
    check_square(basis);
    const int n = basis.rank();
    auto scaled = [&](double h) {
        const double s = n + h;
        return h * epstein_completed(basis, s, config).value / completion_factor(s);
    };
    const double f1 = scaled(1e-3);
    const double f2 = scaled(5e-4);
    const double f3 = scaled(2.5e-4);
    const double r1 = 2.0 * f2 - f1;
    const double r2 = 2.0 * f3 - f2;
    return (4.0 * r2 - r1) / 3.0;
}

double residue_check(const LatticeBasis& basis, const EvalConfig& config) {
    return std::abs(residue_estimate(basis, config) - residue_target(basis.rank()));
}

CuspBound cusp_lower_bound(const LatticeBasis& basis, double s) {
    check_square(basis);
    const int n = basis.rank();
    if (n < 2) throw DomainError("cusp_lower_bound needs n >= 2");
    if (!(s > 0.0 && s < n)) throw DomainError("cusp_lower_bound needs s in (0, n)");
    const double c = std::erfc(std::sqrt(std::numbers::pi));
    CuspBound out;
    out.lambda1 = lambda1(basis);
    const double l = out.lambda1;
    if (std::abs(s - 1.0) < 1e-12) {
        out.threshold = 1.0;
        out.bound = -c * std::log(l) / l;
    } else if (s > 1.0) {
        out.threshold = std::pow(2.0, -1.0 / (s - 1.0));
        out.bound = c * (std::pow(l, -s) - 1.0 / l) / (s - 1.0);
    } else {
        const double v = special::unit_ball_volume(n - 1);
        const double ds = n - s;
        out.threshold = v * std::pow(2.0, -ds * (n - 1) / (ds - 1.0));
        out.bound = c / (2.0 * (ds - 1.0)) * std::pow(l * std::pow(2.0, n - 1) / v, -ds / (n - 1));
    }
    out.applicable = l <= out.threshold;
    return out;
}

} // namespace toral
