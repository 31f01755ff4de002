#pragma once

#include <optional>
#include <vector>

#include "toral/epstein.hpp"
#include "toral/number_field.hpp"
#include "toral/periods.hpp"

namespace toral {

struct CuspConstants {
    double A0 = 0.0;
    double B0 = 0.0;
};

/// Constants of the uniform bound E*(g, ns) >= A0 lambda1(g)^{-ns} - B0,
/// for n >= 2 and s in [1/n, 1).
CuspConstants constants_A0_B0(int n, double s);

/// Measure of {x : sum x = 0, max(|x_real|, |x_complex|/2) <= 1} in the
/// Euclidean measure of the hyperplane, for r1 + r2 >= 2. Computed exactly
/// as sqrt(m) times the box-spline density of the coordinate sum at 0.
/// Returns nullopt when r1 + r2 = 1 (no unit lattice).
std::optional<double> sup_slice_volume(int r1, int r2);

/// log 2 / (4n): lower bound for ||log_E(u)||_inf over non-torsion units.
double height_gap(int n);

/// How the unit-log lattice covolume enters Minkowski's second theorem.
enum class CovolumeConvention {
    euclidean,  ///< covolume sqrt(r1 + r2) R in the hyperplane's Euclidean measure
    regulator,  ///< covolume taken to be R itself
};

struct A1Breakdown {
    double A0 = 0.0;
    double place_factor = 1.0;        ///< 2^{-r2 s}: covolume 2^{-r2} sqrt|D| of O_E
    double short_vector_factor = 1.0; ///< (r1+r2)^{-ns/2}: ||.||_2 <= sqrt(r1+r2) ||.||_{E_infty}
    double slice_volume = 1.0;        ///< V~_{r1,r2}, 1 when the unit rank is 0
    double height_factor = 1.0;       ///< (1 - 2^{-s/4})^{r1+r2-1}
    double minkowski_factor = 1.0;    ///< (2 n s)^{-(r1+r2-1)}
    double covolume_factor = 1.0;     ///< 1 / sqrt(r1+r2) under the Euclidean convention, else 1
    double value = 0.0;
};

A1Breakdown constant_A1(int n, int r1, int r2, double s, CovolumeConvention conv = CovolumeConvention::euclidean);

/// (A1 |D|^{s/2} - B0 R) / R
double trivial_class_lower_bound(const NumberFieldData& field, double s,
                                 CovolumeConvention conv = CovolumeConvention::euclidean);

/// C |D|^{(1 - s - delta + eps)/2} zeta(1 + eps)^n, for 0 < eps < 1/2.
double convexity_bound(const NumberFieldData& field, double s, double epsilon, double delta = 0.0,
                       double c_convex = 1.0);

/// Minkowski's second theorem on the unit-log lattice:
/// prod ||theta_j||_inf * V~ against 2^{r-1} times the covolume.
struct UnitLatticeCheck {
    std::vector<double> minima;
    double product_times_volume = 0.0;
    double bound_euclidean = 0.0; ///< 2^{r-1} sqrt(r1+r2) R
    double bound_regulator = 0.0; ///< 2^{r-1} R
    double min_height = 0.0;      ///< smallest ||theta||_inf among lattice vectors
    double height_gap = 0.0;
};

/// Requires unit rank >= 1.
UnitLatticeCheck unit_lattice_check(const NumberFieldData& field);

/// Volume of the Euclidean unit ball in dimension d.
double unit_ball_volume(int d);

struct BoundConstants {
    double A0 = 0.0;
    double B0 = 0.0;
    double A1 = 0.0;
    double V_ball = 0.0;                ///< V_{n-1}
    std::optional<double> V_sup_slice;  ///< empty when r1 + r2 = 1
    double height_gap = 0.0;
};

BoundConstants bound_constants(int n, int r1, int r2, double s,
                               CovolumeConvention conv = CovolumeConvention::euclidean);

struct NonvanishingReport {
    double s = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    double c_convex = 1.0;
    int h = 0;
    double theorem1_bound = 0.0;  ///< a priori lower bound on the non-vanishing fraction
    double theorem1_count = 0.0;  ///< the same times h
    double lemma_bound = 0.0;     ///< ||Z||_inf / ||Zhat||_inf
    int observed_count = 0;
    double z_trivial = 0.0;       ///< Z(O_E)
    double z_sup = 0.0;
    double zhat_sup = 0.0;
    double trivial_class_bound = 0.0;
    double convexity = 0.0;
    A1Breakdown a1;
    PeriodResult periods;
};

NonvanishingReport theorem1_bound(const NumberFieldData& field, double s, double epsilon, double delta = 0.0,
                                  double c_convex = 1.0, const QuadratureSpec& quad = {},
                                  const EvalConfig& config = {});

/// Same report from already computed periods.
NonvanishingReport theorem1_report(const NumberFieldData& field, const PeriodResult& periods, double epsilon,
                                   double delta = 0.0, double c_convex = 1.0);

} // namespace toral
