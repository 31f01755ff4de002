#include "toral/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "toral/errors.hpp"
#include "toral/special_functions.hpp"

namespace toral {

LatticeBasis::LatticeBasis(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
    if (rows_.rows() < 1 || rows_.cols() < 1) throw DegenerateBasisError("lattice basis must be non-empty");
    if (rows_.rows() > rows_.cols()) throw DegenerateBasisError("more basis vectors than ambient dimensions");
    if (!rows_.allFinite()) throw DegenerateBasisError("lattice basis has non-finite entries");
    // Gram determinant against the Hadamard bound detects dependent rows at any scale.
    const Eigen::MatrixXd gram = rows_ * rows_.transpose();
    double hadamard = 1.0;
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) hadamard *= gram(i, i);
    if (hadamard == 0.0 || std::abs(gram.determinant()) <= 1e-24 * hadamard)
        throw DegenerateBasisError("lattice basis rows are linearly dependent");
}

Eigen::RowVectorXd LatticeBasis::point(std::span<const long long> coeffs) const {
    if (static_cast<Eigen::Index>(coeffs.size()) != rows_.rows())
        throw DomainError("coefficient vector length does not match lattice rank");
    Eigen::RowVectorXd p = Eigen::RowVectorXd::Zero(rows_.cols());
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) p += static_cast<double>(coeffs[i]) * rows_.row(i);
    return p;
}

double LatticeBasis::covolume() const {
    if (is_square()) return std::abs(rows_.determinant());
    return std::sqrt((rows_ * rows_.transpose()).determinant());
}

double determinant(const LatticeBasis& basis) {
    if (!basis.is_square()) throw DegenerateBasisError("determinant requires a square basis");
    return basis.rows().determinant();
}

LatticeBasis dual_basis(const LatticeBasis& basis) {
    if (!basis.is_square()) throw DegenerateBasisError("dual basis requires a square basis");
    return LatticeBasis(basis.rows().inverse().transpose());
}

LatticeBasis unimodular_normalize(const LatticeBasis& basis) {
    const double det = std::abs(determinant(basis));
    return LatticeBasis(basis.rows() / std::pow(det, 1.0 / basis.rank()));
}

namespace {

struct GramSchmidt {
    Eigen::MatrixXd mu;      // mu(i, j) for j < i
    Eigen::VectorXd sq_norm; // ||b*_i||^2
};

GramSchmidt gram_schmidt(const Eigen::MatrixXd& b) {
    const Eigen::Index r = b.rows();
    GramSchmidt gs{Eigen::MatrixXd::Zero(r, r), Eigen::VectorXd::Zero(r)};
    Eigen::MatrixXd star = b;
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            gs.mu(i, j) = b.row(i).dot(star.row(j)) / gs.sq_norm(j);
            star.row(i) -= gs.mu(i, j) * star.row(j);
        }
        gs.sq_norm(i) = star.row(i).squaredNorm();
    }
    return gs;
}

long long round_to_ll(double x) {
    if (std::abs(x) > 9e15) throw UnsupportedError("lattice coefficients exceed 64-bit range");
    return std::llround(x);
}

} // namespace

LllResult lll_reduce(const LatticeBasis& basis, double delta) {
    Eigen::MatrixXd b = basis.rows();
    const Eigen::Index r = b.rows();
    IntMatrix u = IntMatrix::Identity(r, r);
    GramSchmidt gs = gram_schmidt(b);
    Eigen::Index k = 1;
    int guard = 0;
    while (k < r) {
        if (++guard > 100000) throw ConvergenceError("LLL did not terminate", 0.0);
        for (Eigen::Index j = k - 1; j >= 0; --j) {
            const long long q = round_to_ll(gs.mu(k, j));
            if (q == 0) continue;
            b.row(k) -= static_cast<double>(q) * b.row(j);
            u.row(k) -= q * u.row(j);
            for (Eigen::Index i = 0; i < j; ++i) gs.mu(k, i) -= q * gs.mu(j, i);
            gs.mu(k, j) -= q;
        }
        const double lovasz = (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.sq_norm(k - 1);
        if (gs.sq_norm(k) >= lovasz) {
            ++k;
        } else {
            b.row(k).swap(b.row(k - 1));
            u.row(k).swap(u.row(k - 1));
            gs = gram_schmidt(b);
            k = std::max<Eigen::Index>(k - 1, 1);
        }
    }
    return {LatticeBasis(std::move(b)), std::move(u)};
}

void for_each_vector(const LatticeBasis& basis, double radius,
                     const std::function<void(std::span<const long long>, const Eigen::RowVectorXd&, double)>& visit,
                     const EnumerationOptions& options) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("enumeration radius must be positive");
    const LllResult red = lll_reduce(basis);
    const Eigen::MatrixXd& b = red.reduced.rows();
    const int r = basis.rank();
    const GramSchmidt gs = gram_schmidt(b);
    const double r2 = radius * radius * (1.0 + 1e-12);

    std::vector<long long> c(r, 0);
    std::vector<long long> orig(r, 0);
    std::vector<double> partial(r + 1, 0.0);
    std::size_t count = 0;

    // Depth-first over c[r-1], ..., c[0] with the projected-length bound.
    std::function<void(int)> descend = [&](int i) {
        double center = 0.0;
        for (int j = i + 1; j < r; ++j) center -= gs.mu(j, i) * static_cast<double>(c[j]);
        const double room = r2 - partial[i + 1];
        if (room < 0.0) return;
        const double half = std::sqrt(room / gs.sq_norm(i));
        const long long lo = static_cast<long long>(std::ceil(center - half));
        const long long hi = static_cast<long long>(std::floor(center + half));
        for (long long x = lo; x <= hi; ++x) {
            const double d = static_cast<double>(x) - center;
            const double p = partial[i + 1] + d * d * gs.sq_norm(i);
            if (p > r2) continue;
            c[i] = x;
            partial[i] = p;
            if (i > 0) {
                descend(i - 1);
                continue;
            }
            if (std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; })) continue;
            Eigen::RowVectorXd pt = Eigen::RowVectorXd::Zero(b.cols());
            for (int j = 0; j < r; ++j)
                if (c[j] != 0) pt += static_cast<double>(c[j]) * b.row(j);
            const double sq = pt.squaredNorm();
            if (sq > r2) continue;
            if (++count > options.budget)
                throw BudgetExceededError("enumeration exceeded budget of " + std::to_string(options.budget) +
                                          " vectors");
            for (int j = 0; j < r; ++j) {
                long long acc = 0;
                for (int k = 0; k < r; ++k) acc += c[k] * red.transform(k, j);
                orig[j] = acc;
            }
            visit(orig, pt, sq);
        }
        c[i] = 0;
    };
    descend(r - 1);
}

std::vector<LatticeVector> enumerate_vectors(const LatticeBasis& basis, double radius,
                                             const EnumerationOptions& options) {
    std::vector<LatticeVector> out;
    for_each_vector(
        basis, radius,
        [&](std::span<const long long> coeffs, const Eigen::RowVectorXd& pt, double sq) {
            out.push_back({std::vector<long long>(coeffs.begin(), coeffs.end()), pt, std::sqrt(sq)});
        },
        options);
    std::sort(out.begin(), out.end(),
              [](const LatticeVector& a, const LatticeVector& b) { return a.coeffs < b.coeffs; });
    return out;
}

std::vector<double> enumerate_norms(const LatticeBasis& basis, double radius, const EnumerationOptions& options) {
    std::vector<double> out;
    for_each_vector(
        basis, radius,
        [&](std::span<const long long>, const Eigen::RowVectorXd&, double sq) { out.push_back(std::sqrt(sq)); },
        options);
    std::sort(out.begin(), out.end());
    return out;
}

double shortest_vector_length(const LatticeBasis& basis) {
    const LllResult red = lll_reduce(basis);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < red.reduced.rows().rows(); ++i)
        best = std::min(best, red.reduced.rows().row(i).norm());
    for_each_vector(red.reduced, best, [&](std::span<const long long>, const Eigen::RowVectorXd&, double sq) {
        best = std::min(best, std::sqrt(sq));
    });
    return best;
}

double lambda1(const LatticeBasis& basis) {
    const double det = std::abs(determinant(basis));
    return shortest_vector_length(basis) / std::pow(det, 1.0 / basis.rank());
}

NormSpec::NormSpec(Kind kind, std::vector<double> weights) : kind_(kind), weights_(std::move(weights)) {
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("norm weights must be positive");
}

NormSpec NormSpec::euclidean() { return NormSpec(Kind::euclidean, {}); }

NormSpec NormSpec::weighted_sup(std::vector<double> weights) {
    if (weights.empty()) throw DomainError("weighted sup norm needs weights");
    return NormSpec(Kind::weighted_sup, std::move(weights));
}

NormSpec NormSpec::unit_log_sup(int r1, int r2) {
    std::vector<double> w(r1, 1.0);
    w.insert(w.end(), r2, 0.5);
    return weighted_sup(std::move(w));
}

double NormSpec::operator()(const Eigen::RowVectorXd& x) const {
    if (kind_ == Kind::euclidean) return x.norm();
    if (static_cast<std::size_t>(x.size()) != weights_.size()) throw DomainError("norm weight count mismatch");
    double m = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, weights_[i] * std::abs(x[i]));
    return m;
}

double NormSpec::euclidean_over_norm(int m) const {
    if (kind_ == Kind::euclidean) return 1.0;
    return std::sqrt(static_cast<double>(m)) / *std::min_element(weights_.begin(), weights_.end());
}

MinimaReport successive_minima(const LatticeBasis& basis, const NormSpec& norm) {
    const int r = basis.rank();
    if (r > kMaxMinimaRank)
        throw UnsupportedError("successive minima supported up to rank " + std::to_string(kMaxMinimaRank));
    const LllResult red = lll_reduce(basis);
    double longest = 0.0;
    for (int i = 0; i < r; ++i) longest = std::max(longest, norm(red.reduced.rows().row(i)));
    // Every minimum is <= longest, so candidates lie in this Euclidean ball.
    const double radius = longest * norm.euclidean_over_norm(basis.ambient_dim());

    std::vector<LatticeVector> cand;
    for_each_vector(basis, radius, [&](std::span<const long long> coeffs, const Eigen::RowVectorXd& pt, double) {
        const auto first = std::find_if(coeffs.begin(), coeffs.end(), [](long long v) { return v != 0; });
        if (*first < 0) return; // keep one of +-v
        cand.push_back({std::vector<long long>(coeffs.begin(), coeffs.end()), pt, norm(pt)});
    });
    std::sort(cand.begin(), cand.end(), [](const LatticeVector& a, const LatticeVector& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.coeffs < b.coeffs;
    });

    MinimaReport report;
    Eigen::MatrixXd chosen(0, r);
    for (const LatticeVector& v : cand) {
        Eigen::MatrixXd trial(chosen.rows() + 1, r);
        trial.topRows(chosen.rows()) = chosen;
        for (int j = 0; j < r; ++j) trial(chosen.rows(), j) = static_cast<double>(v.coeffs[j]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
        lu.setThreshold(1e-9);
        if (lu.rank() != trial.rows()) continue;
        chosen = std::move(trial);
        report.vectors.push_back(v);
        report.lengths.push_back(v.norm);
        if (static_cast<int>(report.vectors.size()) == r) break;
    }
    if (static_cast<int>(report.vectors.size()) != r)
        throw ConvergenceError("successive minima search did not find a full set", 0.0);
    return report;
}

bool dual_lambda1_inequality_check(const LatticeBasis& basis) {
    const int n = basis.rank();
    if (n < 2) throw DomainError("dual lambda1 inequality needs n >= 2");
    const double lhs = std::pow(lambda1(dual_basis(basis)), n - 1);
    const double rhs = std::pow(2.0, n - 1) / special::unit_ball_volume(n - 1) * lambda1(basis);
    return lhs <= rhs * (1.0 + 1e-10);
}

} // namespace toral
