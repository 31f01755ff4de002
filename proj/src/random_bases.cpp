#include "toral/random_bases.hpp"

#include <cmath>

#include "toral/errors.hpp"

namespace toral {
namespace {

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

} // namespace

LatticeBasis random_unimodular_basis(int n, std::mt19937_64& rng, double spread) {
    if (n < 1) throw DomainError("random basis dimension must be positive");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd lower = Eigen::MatrixXd::Identity(n, n);
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) lower(i, j) = unit(rng);
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) t[i] = spread * unit(rng);
    t.array() -= t.mean();
    const Eigen::MatrixXd scale = t.array().exp().matrix().asDiagonal();
    return LatticeBasis(lower * scale * random_orthogonal(n, rng));
}

LatticeBasis random_cusp_basis(int n, int k, double depth, std::mt19937_64& rng) {
    if (k < 1 || k >= n) throw DomainError("cusp direction count must be in [1, n)");
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) t[i] = i < k ? depth : -depth * k / (n - k);
    const Eigen::MatrixXd scale = t.array().exp().matrix().asDiagonal();
    const LatticeBasis base = random_unimodular_basis(n, rng, 0.3);
    return LatticeBasis(base.rows() * scale);
}

} // namespace toral
