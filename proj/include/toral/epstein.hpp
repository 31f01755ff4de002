#pragma once

#include <cstddef>

#include "toral/lattice.hpp"

namespace toral {

struct EvalConfig {
    double tolerance = 1e-10; ///< absolute target, in (0, 1e-2]
    double initial_radius_fudge = 1.0;
    int max_radius_doublings = 8;
    std::size_t enumeration_budget = 10'000'000;

    void validate() const;
};

/// A real value with an estimate of its truncation error.
struct CompletedValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// pi^(-s/2) Gamma(s/2), the factor relating E and E*.
double completion_factor(double s);

/// E(g, s) = 1/2 |det g|^(s/n) sum_{v != 0} ||v g||^-s for s > n.
///
/// The sum is split by a smooth radial weight W(r) = erfc((r - R0)/sigma)/2:
/// the weighted part is summed over lattice points, the complementary part
/// is replaced by its integral against the lattice point density. By Poisson
/// summation the discarded remainder is of size exp(-(pi sigma mu)^2), mu the
/// shortest dual vector, and sigma is chosen from the tolerance accordingly.
CompletedValue epstein_direct(const LatticeBasis& basis, double s, const EvalConfig& config = {});

/// E*(g, s) for real s outside {0, n}, via
///   E* = -1/s - 1/(n-s) + 1/2 sum f(s, |v g1|) + 1/2 sum f(n-s, |v g1^*|)
/// with g1 the unimodular rescaling of g and g1^* its dual.
CompletedValue epstein_completed(const LatticeBasis& basis, double s, const EvalConfig& config = {});

/// |E*(g, n-s) - E*(g^*, s)|.
double functional_equation_residual(const LatticeBasis& basis, double s, const EvalConfig& config = {});

/// pi^(n/2) / Gamma(n/2): the residue of E(g, s) at s = n.
double residue_target(int n);

/// Richardson extrapolation of h E(g, n+h) over h = 1e-3, 5e-4, 2.5e-4.
double residue_estimate(const LatticeBasis& basis, const EvalConfig& config = {});

/// |residue_estimate - residue_target|.
double residue_check(const LatticeBasis& basis, const EvalConfig& config = {});

struct CuspBound {
    bool applicable = false;
    double bound = 0.0;     ///< lower bound on E*(g,s) + 1/s + 1/(n-s) when applicable
    double threshold = 0.0; ///< lambda1 must not exceed this
    double lambda1 = 0.0;
};

/// Explicit lower bound for E* high in the cusp, for s in (0, n):
///   s > 1:  erfc(sqrt(pi)) (l^-s - l^-1) / (s - 1)            if l <= 2^(-1/(s-1))
///   s = 1:  -erfc(sqrt(pi)) l^-1 log l                         if l <= 1
///   s < 1:  erfc(sqrt(pi)) / (2(n-s-1)) (l 2^(n-1)/V_{n-1})^(-(n-s)/(n-1))
///           if l <= V_{n-1} 2^(-(n-s)(n-1)/(n-s-1))
/// where l = lambda1(g). The s < 1 case runs the s > 1 estimate on the dual
/// lattice and transfers it with the dual lambda1 inequality.
CuspBound cusp_lower_bound(const LatticeBasis& basis, double s);

} // namespace toral
