#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "toral/abelian_group.hpp"
#include "toral/epstein.hpp"
#include "toral/number_field.hpp"

namespace toral {

/// (log|y_i| at real places, 2 log|y_j| at complex places); y in the
/// real-then-(Re, Im) coordinates of E_infty.
Eigen::VectorXd log_E(const Eigen::RowVectorXd& y, int r1, int r2);

/// Right inverse of log_E with positive real coordinates:
/// (e^{x_i}, ..., (e^{x_j/2}, 0), ...).
Eigen::RowVectorXd exp_E(const Eigen::VectorXd& x, int r1, int r2);

/// Rows of the basis multiplied coordinatewise by exp_E(x); x must be trace-zero.
LatticeBasis torus_translate(const LatticeBasis& basis, int r1, int r2, const Eigen::VectorXd& x);

struct QuadratureSpec {
    int points_per_dimension = 8; ///< Gauss-Legendre nodes per coordinate, in [4, 256]
    int refinement_cap = 5;       ///< maximal number of node doublings
    double tolerance = 1e-8;      ///< stop when successive grids differ by less
    unsigned max_threads = 0;     ///< 0: hardware concurrency

    void validate() const;
};

/// E*(iota(Lambda) exp_E(sum_j eps_j theta_j), n s) at unit-basis coordinates eps.
double period_integrand(const NumberFieldData& field, int class_index, double s, std::span<const double> eps,
                        const EvalConfig& config = {});

/// Z(Lambda): the integral of the integrand over the unit cube of
/// unit-basis coordinates, which is the probability Haar measure on the
/// periodic torus orbit. Tensor Gauss-Legendre with node doubling.
CompletedValue hecke_period(const NumberFieldData& field, int class_index, double s, const QuadratureSpec& quad = {},
                            const EvalConfig& config = {});

/// (pi^{-s/2} Gamma(s/2))^r1 ((2 pi)^{-s} Gamma(s))^r2 |D|^{s/2}
double zeta_gamma_factor(const NumberFieldData& field, double s);

/// w / (2^r1 n R): Z(Lambda) = period_normalization * zeta*_Lambda(s)
double period_normalization(const NumberFieldData& field);

/// zeta*_Lambda(s) = (2^r1 n R / w) Z(Lambda). Partial zeta functions sum over
/// integral ideals of the class (vectors modulo units).
CompletedValue partial_zeta_completed(const NumberFieldData& field, int class_index, double s,
                                      const QuadratureSpec& quad = {}, const EvalConfig& config = {});

/// zeta_Lambda(s), the completed value divided by the Gamma factor.
CompletedValue partial_zeta(const NumberFieldData& field, int class_index, double s, const QuadratureSpec& quad = {},
                            const EvalConfig& config = {});

struct PeriodResult {
    double s = 0.0;
    std::vector<double> Z;                 ///< per class
    std::vector<double> Z_error;           ///< quadrature increments
    std::vector<std::complex<double>> Zhat; ///< per character, mixed-radix order
    std::vector<std::complex<double>> Lstar; ///< L*(s, chi)
    double inversion_residual = 0.0;        ///< max_c |sum_chi Zhat(chi) chi(c) - Z(c)|
};

CharacterTable character_table(const NumberFieldData& field);

/// Z for every class, Zhat = (1/h) sum Z conj(chi), L* = (2^r1 n h R / w) Zhat.
PeriodResult class_group_dft(const NumberFieldData& field, double s, const QuadratureSpec& quad = {},
                             const EvalConfig& config = {});

/// Assembles the Fourier data from already computed class values.
PeriodResult assemble_period_result(const NumberFieldData& field, double s, std::vector<double> Z,
                                    std::vector<double> Z_error);

/// Relative error between a direct evaluation of
///   int_H ||v h||^{-ns} |Nr h|^s dh
/// and pi^{r2} Gamma(s/2)^{r1} Gamma(s)^{r2} / Gamma(ns/2) |Nr v|^{-s},
/// for the degree-2 signatures (2,0) and (0,1).
double hecke_trick_check(int r1, int r2, const Eigen::RowVectorXd& v, double s);

struct CountBound {
    double bound = 0.0; ///< ||f||_inf / ||fhat||_inf
    int count = 0;      ///< characters with |fhat| above the numeric-zero threshold
};

inline constexpr double kNonvanishingThreshold = 1e-7;

/// Lemma bound on the number of non-vanishing Fourier coefficients of f,
/// given f's values on group elements (coords) of the table's group.
CountBound nonvanishing_count_bound(const CharacterTable& table, const std::vector<std::vector<int>>& coords,
                                    const std::vector<std::complex<double>>& values);

} // namespace toral
