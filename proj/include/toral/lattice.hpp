#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace toral {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Rows generate the lattice Z^r * B inside R^m (row-vector convention: a
/// lattice vector is v * B for an integer row vector v). Rows must be
/// linearly independent; most operations additionally need r == m.
class LatticeBasis {
public:
    explicit LatticeBasis(Eigen::MatrixXd rows);

    const Eigen::MatrixXd& rows() const noexcept { return rows_; }
    int rank() const noexcept { return static_cast<int>(rows_.rows()); }
    int ambient_dim() const noexcept { return static_cast<int>(rows_.cols()); }
    bool is_square() const noexcept { return rank() == ambient_dim(); }

    Eigen::RowVectorXd point(std::span<const long long> coeffs) const;

    /// sqrt(det(B B^t)): the rank-dimensional volume of a fundamental cell.
    double covolume() const;

private:
    Eigen::MatrixXd rows_;
};

/// det of the square row matrix. Throws DegenerateBasisError if non-square or singular.
double determinant(const LatticeBasis& basis);

/// Transpose-inverse basis: rows pair with the input rows to the identity.
LatticeBasis dual_basis(const LatticeBasis& basis);

/// basis scaled to |det| = 1.
LatticeBasis unimodular_normalize(const LatticeBasis& basis);

struct LllResult {
    LatticeBasis reduced;
    IntMatrix transform; ///< reduced.rows() == transform * input.rows()
};

LllResult lll_reduce(const LatticeBasis& basis, double delta = 0.99);

struct LatticeVector {
    std::vector<long long> coeffs; ///< coefficients w.r.t. the input basis
    Eigen::RowVectorXd point;
    double norm = 0.0; ///< Euclidean length
};

struct EnumerationOptions {
    std::size_t budget = 10'000'000;
};

/// Calls visit(coeffs, point, squared_norm) once for every nonzero lattice
/// vector with Euclidean norm <= radius. Coefficients are w.r.t. the input
/// basis. Visiting order is deterministic but not sorted.
void for_each_vector(const LatticeBasis& basis, double radius,
                     const std::function<void(std::span<const long long>, const Eigen::RowVectorXd&, double)>& visit,
                     const EnumerationOptions& options = {});

/// Every nonzero vector with norm <= radius (both signs), sorted
/// lexicographically by coefficient vector.
std::vector<LatticeVector> enumerate_vectors(const LatticeBasis& basis, double radius,
                                             const EnumerationOptions& options = {});

/// Sorted Euclidean norms of all nonzero vectors within radius.
std::vector<double> enumerate_norms(const LatticeBasis& basis, double radius,
                                    const EnumerationOptions& options = {});

/// Exact Euclidean length of a shortest nonzero vector (not normalized).
double shortest_vector_length(const LatticeBasis& basis);

/// |det g|^(-1/n) * min ||v g||_2 for square bases.
double lambda1(const LatticeBasis& basis);

class NormSpec {
public:
    enum class Kind { euclidean, weighted_sup };

    static NormSpec euclidean();
    /// max_i weights[i] * |x_i|
    static NormSpec weighted_sup(std::vector<double> weights);
    /// Weighted sup norm on the unit-log space: weight 1 at the r1 real
    /// places and 1/2 at the r2 complex places.
    static NormSpec unit_log_sup(int r1, int r2);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double operator()(const Eigen::RowVectorXd& x) const;

    /// Smallest c with ||x||_2 <= c * norm(x) in dimension m.
    double euclidean_over_norm(int m) const;

private:
    NormSpec(Kind kind, std::vector<double> weights);
    Kind kind_;
    std::vector<double> weights_;
};

struct MinimaReport {
    std::vector<LatticeVector> vectors;
    std::vector<double> lengths; ///< ascending, measured in the requested norm
};

inline constexpr int kMaxMinimaRank = 4;

/// Vectors realizing the successive minima; rank must be <= kMaxMinimaRank.
MinimaReport successive_minima(const LatticeBasis& basis, const NormSpec& norm);

/// Checks lambda1(dual)^(n-1) <= (2^(n-1) / V_{n-1}) * lambda1(g), n >= 2.
bool dual_lambda1_inequality_check(const LatticeBasis& basis);

} // namespace toral
