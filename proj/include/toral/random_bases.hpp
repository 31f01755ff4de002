#pragma once

#include <cstdint>
#include <random>

#include "toral/lattice.hpp"

namespace toral {

/// Random basis with |det| = 1, built as L * diag(e^t) * Q with L unit lower
/// triangular (entries uniform in [-1, 1]), t trace-zero with |t_i| <= spread,
/// and Q a random orthogonal matrix. Deterministic for a given engine state.
LatticeBasis random_unimodular_basis(int n, std::mt19937_64& rng, double spread = 1.0);

/// Lattice pushed into the cusp: diag(e^{depth}, ..., e^{-(k depth)/(n-k)}) with
/// the first k coordinates expanded, composed with a random unimodular basis
/// of small spread. lambda1 shrinks like e^{-depth k/(n-k)}.
LatticeBasis random_cusp_basis(int n, int k, double depth, std::mt19937_64& rng);

} // namespace toral
