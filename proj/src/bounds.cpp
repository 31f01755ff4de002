#include "toral/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toral/errors.hpp"
#include "toral/special_functions.hpp"

namespace toral {

CuspConstants constants_A0_B0(int n, double s) {
    if (n < 2) throw DomainError("constants_A0_B0 needs n >= 2");
    const double lo = 1.0 / n;
    if (!(s >= lo - 1e-15 && s < 1.0)) throw DomainError("constants_A0_B0 needs s in [1/n, 1)");
    const double c = special::erfc(std::sqrt(std::numbers::pi));
    const bool edge = std::abs(n * s - 1.0) < 1e-12;
    CuspConstants k;
    k.A0 = edge ? c * std::log(2.0) : c / (2.0 * (n * s - 1.0));
    k.B0 = (1.0 / s + 1.0 / (1.0 - s)) / n + k.A0 * (edge ? 2.0 : std::pow(2.0, n * s / (n * s - 1.0)));
    return k;
}

std::optional<double> sup_slice_volume(int r1, int r2) {
    if (r1 < 0 || r2 < 0) throw DomainError("sup_slice_volume: invalid signature");
    const int m = r1 + r2;
    if (m < 2) return std::nullopt;
    if (m > 20) throw UnsupportedError("sup_slice_volume: too many places");
    std::vector<double> a(m, 1.0);
    for (int j = 0; j < r2; ++j) a[r1 + j] = 2.0;
    // density at 0 of the sum of independent uniform variables on [-a_i, a_i],
    // unnormalized: (1/(m-1)!) sum_eps prod(eps) (sum eps_i a_i)_+^{m-1}
    double acc = 0.0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        double t = 0.0;
        int sign = 1;
        for (int i = 0; i < m; ++i) {
            if (mask & (1u << i)) {
                t -= a[i];
                sign = -sign;
            } else {
                t += a[i];
            }
        }
        if (t > 0.0) acc += sign * std::pow(t, m - 1);
    }
    return std::sqrt(static_cast<double>(m)) * acc / std::tgamma(static_cast<double>(m));
}

double height_gap(int n) {
    if (n < 1) throw DomainError("height_gap needs n >= 1");
    return std::log(2.0) / (4.0 * n);
}

A1Breakdown constant_A1(int n, int r1, int r2, double s, CovolumeConvention conv) {
    if (n != r1 + 2 * r2 || r1 < 0 || r2 < 0) throw DomainError("constant_A1: invalid signature");
    A1Breakdown b;
    b.A0 = constants_A0_B0(n, s).A0;
    const int m = r1 + r2;
    const int rank = m - 1;
    b.place_factor = std::pow(2.0, -r2 * s);
    b.short_vector_factor = std::pow(static_cast<double>(m), -n * s / 2.0);
    if (rank > 0) {
        b.slice_volume = *sup_slice_volume(r1, r2);
        b.height_factor = std::pow(1.0 - std::pow(2.0, -s / 4.0), rank);
        b.minkowski_factor = std::pow(2.0 * n * s, -rank);
        b.covolume_factor = conv == CovolumeConvention::euclidean ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;
    }
    b.value = b.A0 * b.place_factor * b.short_vector_factor * b.slice_volume * b.height_factor * b.minkowski_factor *
              b.covolume_factor;
    return b;
}

double trivial_class_lower_bound(const NumberFieldData& field, double s, CovolumeConvention conv) {
    const double a1 = constant_A1(field.n, field.r1, field.r2, s, conv).value;
    const double b0 = constants_A0_B0(field.n, s).B0;
    const double r = field.regulator;
    return (a1 * std::pow(field.abs_discriminant(), s / 2.0) - b0 * r) / r;
}

double convexity_bound(const NumberFieldData& field, double s, double epsilon, double delta, double c_convex) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("convexity_bound needs 0 < eps < 1/2");
    if (!(delta >= 0.0)) throw DomainError("convexity_bound needs delta >= 0");
    if (!(c_convex > 0.0)) throw DomainError("convexity_bound needs C_convex > 0");
    return c_convex * std::pow(field.abs_discriminant(), (1.0 - s - delta + epsilon) / 2.0) *
           std::pow(special::riemann_zeta(1.0 + epsilon), field.n);
}

double unit_ball_volume(int d) {
    if (d < 0) throw DomainError("unit_ball_volume needs d >= 0");
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

BoundConstants bound_constants(int n, int r1, int r2, double s, CovolumeConvention conv) {
    BoundConstants b;
    const CuspConstants c = constants_A0_B0(n, s);
    b.A0 = c.A0;
    b.B0 = c.B0;
    b.A1 = constant_A1(n, r1, r2, s, conv).value;
    b.V_ball = unit_ball_volume(n - 1);
    b.V_sup_slice = sup_slice_volume(r1, r2);
    b.height_gap = height_gap(n);
    return b;
}

UnitLatticeCheck unit_lattice_check(const NumberFieldData& field) {
    const int rank = field.unit_rank();
    if (rank < 1) throw DomainError("unit_lattice_check needs unit rank >= 1");
    UnitLatticeCheck out;
    const NormSpec norm = NormSpec::unit_log_sup(field.r1, field.r2);
    const MinimaReport rep = successive_minima(LatticeBasis(field.unit_log_basis), norm);
    out.minima = rep.lengths;
    double prod = 1.0;
    for (double l : rep.lengths) prod *= l;
    out.product_times_volume = prod * *sup_slice_volume(field.r1, field.r2);
    const double m = field.r1 + field.r2;
    out.bound_regulator = std::pow(2.0, rank) * field.regulator;
    out.bound_euclidean = out.bound_regulator * std::sqrt(m);
    out.min_height = rep.lengths.front();
    out.height_gap = height_gap(field.n);
    return out;
}

NonvanishingReport theorem1_report(const NumberFieldData& field, const PeriodResult& periods, double epsilon,
                                   double delta, double c_convex) {
    NonvanishingReport r;
    const double s = periods.s;
    r.s = s;
    r.epsilon = epsilon;
    r.delta = delta;
    r.c_convex = c_convex;
    r.h = field.class_number();
    r.periods = periods;
    r.a1 = constant_A1(field.n, field.r1, field.r2, s);
    r.trivial_class_bound = trivial_class_lower_bound(field, s);
    r.convexity = convexity_bound(field, s, epsilon, delta, c_convex);

    // a priori: ||Z|| >= trivial class bound, |Zhat| <= w G(s) |D|^{s/2} convexity / (2^r1 n h R)
    const double gamma = zeta_gamma_factor(field, s) / std::pow(field.abs_discriminant(), s / 2.0);
    const double b0 = constants_A0_B0(field.n, s).B0;
    r.theorem1_bound = std::pow(2.0, field.r1) * field.n *
                       (r.a1.value * std::pow(field.abs_discriminant(), s / 2.0) - b0 * field.regulator) /
                       (field.w * gamma * std::pow(field.abs_discriminant(), s / 2.0) * r.convexity);
    r.theorem1_count = r.theorem1_bound * r.h;

    r.z_trivial = periods.Z.front();
    for (double z : periods.Z) r.z_sup = std::max(r.z_sup, std::abs(z));
    for (const auto& z : periods.Zhat) r.zhat_sup = std::max(r.zhat_sup, std::abs(z));
    std::vector<std::complex<double>> values(periods.Z.begin(), periods.Z.end());
    std::vector<std::vector<int>> coords;
    for (const auto& c : field.classes) coords.push_back(c.coords);
    const CountBound cb = nonvanishing_count_bound(character_table(field), coords, values);
    r.lemma_bound = cb.bound;
    r.observed_count = cb.count;
    return r;
}

NonvanishingReport theorem1_bound(const NumberFieldData& field, double s, double epsilon, double delta, double c_convex,
                                  const QuadratureSpec& quad, const EvalConfig& config) {
    convexity_bound(field, s, epsilon, delta, c_convex);
    return theorem1_report(field, class_group_dft(field, s, quad, config), epsilon, delta, c_convex);
}

} // namespace toral
