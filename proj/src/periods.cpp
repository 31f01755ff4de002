#include "toral/periods.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toral/errors.hpp"
#include "toral/parallel.hpp"
#include "toral/quadrature.hpp"
#include "toral/summation.hpp"

namespace toral {

namespace {

void check_signature(int r1, int r2, Eigen::Index len) {
    if (r1 < 0 || r2 < 0 || r1 + r2 < 1) throw DomainError("invalid signature");
    if (len != r1 + 2 * r2) throw DomainError("coordinate vector has the wrong length");
}

} // namespace

Eigen::VectorXd log_E(const Eigen::RowVectorXd& y, int r1, int r2) {
    check_signature(r1, r2, y.size());
    Eigen::VectorXd x(r1 + r2);
    for (int i = 0; i < r1; ++i) {
        if (y[i] == 0.0) throw DomainError("log_E: zero coordinate");
        x[i] = std::log(std::abs(y[i]));
    }
    for (int j = 0; j < r2; ++j) {
        const double a = std::hypot(y[r1 + 2 * j], y[r1 + 2 * j + 1]);
        if (a == 0.0) throw DomainError("log_E: zero coordinate");
        x[r1 + j] = 2.0 * std::log(a);
    }
    return x;
}

Eigen::RowVectorXd exp_E(const Eigen::VectorXd& x, int r1, int r2) {
    if (x.size() != r1 + r2) throw DomainError("exp_E: vector has the wrong length");
    Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(r1 + 2 * r2);
    for (int i = 0; i < r1; ++i) y[i] = std::exp(x[i]);
    for (int j = 0; j < r2; ++j) y[r1 + 2 * j] = std::exp(0.5 * x[r1 + j]);
    return y;
}

LatticeBasis torus_translate(const LatticeBasis& basis, int r1, int r2, const Eigen::VectorXd& x) {
    check_signature(r1, r2, basis.ambient_dim());
    if (x.size() != r1 + r2) throw DomainError("torus_translate: vector has the wrong length");
    if (std::abs(x.sum()) > 1e-9 * std::max(1.0, x.cwiseAbs().sum())) throw DomainError("torus_translate: x must be trace-zero");
    Eigen::MatrixXd rows = basis.rows();
    for (int i = 0; i < r1; ++i) rows.col(i) *= std::exp(x[i]);
    for (int j = 0; j < r2; ++j) {
        const double f = std::exp(0.5 * x[r1 + j]);
        rows.col(r1 + 2 * j) *= f;
        rows.col(r1 + 2 * j + 1) *= f;
    }
    return LatticeBasis(rows);
}

void QuadratureSpec::validate() const {
    if (points_per_dimension < 4 || points_per_dimension > 256) throw DomainError("points_per_dimension must lie in [4, 256]");
    if (refinement_cap < 0) throw DomainError("refinement_cap must be non-negative");
    if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
}

double period_integrand(const NumberFieldData& field, int class_index, double s, std::span<const double> eps,
                        const EvalConfig& config) {
    const int rank = field.unit_rank();
    if (static_cast<int>(eps.size()) != rank) throw DomainError("period_integrand: wrong number of unit coordinates");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(field.r1 + field.r2);
    for (int j = 0; j < rank; ++j) x += eps[j] * field.unit_log_basis.row(j).transpose();
    // remove rounding drift off the trace-zero hyperplane
    x.array() -= x.mean();
    const LatticeBasis g = torus_translate(ideal_lattice(field, class_index), field.r1, field.r2, x);
    return epstein_completed(g, field.n * s, config).value;
}

CompletedValue hecke_period(const NumberFieldData& field, int class_index, double s, const QuadratureSpec& quad,
                            const EvalConfig& config) {
    quad.validate();
    ideal_lattice(field, class_index);
    const int rank = field.unit_rank();
    if (rank == 0) return epstein_completed(ideal_lattice(field, class_index), field.n * s, config);

    auto tensor_rule = [&](int m) {
        const quad::Rule rule = quad::gauss_legendre(m);
        std::size_t total = 1;
        for (int j = 0; j < rank; ++j) total *= static_cast<std::size_t>(m);
        std::vector<double> values(total);
        parallel_for(total, [&](std::size_t idx) {
            std::vector<double> eps(rank);
            double weight = 1.0;
            std::size_t rem = idx;
            for (int j = rank - 1; j >= 0; --j) {
                const std::size_t k = rem % m;
                rem /= m;
                eps[j] = rule.nodes[k];
                weight *= rule.weights[k];
            }
            values[idx] = weight * period_integrand(field, class_index, s, eps, config);
        }, quad.max_threads);
        CompensatedSum acc;
        for (double v : values) acc += v;
        return acc.value();
    };

    int m = quad.points_per_dimension;
    double prev = tensor_rule(m);
    double change = INFINITY;
    for (int step = 0; step < quad.refinement_cap && 2 * m <= 256; ++step) {
        m *= 2;
        const double cur = tensor_rule(m);
        change = std::abs(cur - prev);
        prev = cur;
        if (change < quad.tolerance) return {cur, change};
    }
    throw ConvergenceError("hecke_period: refinement cap reached", change);
}

double zeta_gamma_factor(const NumberFieldData& field, double s) {
    const double real = std::pow(std::numbers::pi, -0.5 * s) * std::tgamma(0.5 * s);
    const double cplx = std::pow(2.0 * std::numbers::pi, -s) * std::tgamma(s);
    return std::pow(real, field.r1) * std::pow(cplx, field.r2) * std::pow(field.abs_discriminant(), 0.5 * s);
}

double period_normalization(const NumberFieldData& field) {
    return field.w / (std::pow(2.0, field.r1) * field.n * field.regulator);
}

CompletedValue partial_zeta_completed(const NumberFieldData& field, int class_index, double s,
                                      const QuadratureSpec& quad, const EvalConfig& config) {
    const CompletedValue z = hecke_period(field, class_index, s, quad, config);
    const double k = 1.0 / period_normalization(field);
    return {k * z.value, k * z.error_estimate};
}

CompletedValue partial_zeta(const NumberFieldData& field, int class_index, double s, const QuadratureSpec& quad,
                            const EvalConfig& config) {
    const CompletedValue z = partial_zeta_completed(field, class_index, s, quad, config);
    const double g = zeta_gamma_factor(field, s);
    return {z.value / g, z.error_estimate / g};
}

CharacterTable character_table(const NumberFieldData& field) { return CharacterTable(field.cyclic_orders); }

PeriodResult assemble_period_result(const NumberFieldData& field, double s, std::vector<double> Z,
                                    std::vector<double> Z_error) {
    const CharacterTable table = character_table(field);
    const int h = field.class_number();
    if (table.size() != h || static_cast<int>(Z.size()) != h) throw DomainError("class data does not match the group");
    PeriodResult out;
    out.s = s;
    out.Z = std::move(Z);
    out.Z_error = std::move(Z_error);
    const double lscale = std::pow(2.0, field.r1) * field.n * h * field.regulator / field.w;
    for (int k = 0; k < h; ++k) {
        std::complex<double> acc = 0.0;
        for (int c = 0; c < h; ++c) acc += out.Z[c] * std::conj(table(k, field.classes[c].coords));
        acc /= static_cast<double>(h);
        out.Zhat.push_back(acc);
        out.Lstar.push_back(lscale * acc);
    }
    for (int c = 0; c < h; ++c) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < h; ++k) acc += out.Zhat[k] * table(k, field.classes[c].coords);
        out.inversion_residual = std::max(out.inversion_residual, std::abs(acc - out.Z[c]));
    }
    return out;
}

PeriodResult class_group_dft(const NumberFieldData& field, double s, const QuadratureSpec& quad,
                             const EvalConfig& config) {
    const int h = field.class_number();
    std::vector<double> z(h), err(h);
    for (int c = 0; c < h; ++c) {
        const CompletedValue v = hecke_period(field, c, s, quad, config);
        z[c] = v.value;
        err[c] = v.error_estimate;
    }
    return assemble_period_result(field, s, std::move(z), std::move(err));
}

double hecke_trick_check(int r1, int r2, const Eigen::RowVectorXd& v, double s) {
    if (r1 + 2 * r2 != 2) throw UnsupportedError("hecke_trick_check supports degree 2 only");
    if (v.size() != 2) throw DomainError("hecke_trick_check: v must have 2 coordinates");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("hecke_trick_check: s must lie in (0, 1)");
    const int n = 2;
    double lhs, norm_v;
    if (r2 == 1) {
        norm_v = v.squaredNorm();
        if (norm_v == 0.0) throw DomainError("hecke_trick_check: v must be invertible");
        // H is compact of volume pi and |Nr h| = 1 on it
        lhs = std::numbers::pi * std::pow(v.norm(), -n * s);
    } else {
        const double a = v[0] * v[0], b = v[1] * v[1];
        if (a == 0.0 || b == 0.0) throw DomainError("hecke_trick_check: v must be invertible");
        norm_v = std::abs(v[0] * v[1]);
        auto integrand = [&](double nu) { return std::pow(a * std::exp(2 * nu) + b * std::exp(-2 * nu), -s); };
        // centre at the minimum of the denominator and truncate where the integrand < 1e-14 of its peak
        const double centre = 0.25 * std::log(b / a);
        const double half_width = (std::log(1e14) / s + std::log(2.0)) / 2.0 + 1.0;
        const double integral = quad::integrate(integrand, centre - half_width, centre, 1e-13) +
                                quad::integrate(integrand, centre, centre + half_width, 1e-13);
        // two sign components, Haar element 2 d nu
        lhs = 2.0 * 2.0 * integral;
    }
    const double rhs = std::pow(std::numbers::pi, r2) * std::pow(std::tgamma(0.5 * s), r1) * std::pow(std::tgamma(s), r2) /
                       std::tgamma(0.5 * n * s) * std::pow(norm_v, -s);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

CountBound nonvanishing_count_bound(const CharacterTable& table, const std::vector<std::vector<int>>& coords,
                                    const std::vector<std::complex<double>>& values) {
    const int h = table.size();
    if (static_cast<int>(values.size()) != h || static_cast<int>(coords.size()) != h)
        throw DomainError("nonvanishing_count_bound: need one value per group element");
    double fmax = 0.0;
    for (const auto& v : values) fmax = std::max(fmax, std::abs(v));
    std::vector<double> mags(h);
    double hmax = 0.0;
    for (int k = 0; k < h; ++k) {
        std::complex<double> acc = 0.0;
        for (int c = 0; c < h; ++c) acc += values[c] * std::conj(table(k, coords[c]));
        mags[k] = std::abs(acc) / h;
        hmax = std::max(hmax, mags[k]);
    }
    CountBound out;
    if (fmax == 0.0 || hmax == 0.0) return out;
    out.bound = fmax / hmax;
    for (double m : mags) out.count += m > kNonvanishingThreshold * hmax;
    return out;
}

} // namespace toral
