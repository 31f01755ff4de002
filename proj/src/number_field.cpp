#include "toral/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "toral/abelian_group.hpp"
#include "toral/errors.hpp"

namespace toral {

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

LatticeBasis definite_form_lattice(const BinaryQuadraticForm& f) {
    const double root = std::sqrt(static_cast<double>(-f.discriminant()));
    Eigen::MatrixXd m(2, 2);
    m << static_cast<double>(f.a), 0.0, -0.5 * static_cast<double>(f.b), 0.5 * root;
    return LatticeBasis(m);
}

LatticeBasis indefinite_form_lattice(const BinaryQuadraticForm& f) {
    const double root = std::sqrt(static_cast<double>(f.discriminant()));
    const double b = static_cast<double>(f.b);
    Eigen::MatrixXd m(2, 2);
    m << static_cast<double>(f.a), static_cast<double>(f.a), 0.5 * (-b + root), 0.5 * (-b - root);
    return LatticeBasis(m);
}

// Class index lookup: reduced form -> class, covering whole cycles for D > 0.
std::map<BinaryQuadraticForm, int> class_lookup(const std::vector<std::vector<BinaryQuadraticForm>>& groups) {
    std::map<BinaryQuadraticForm, int> out;
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (const auto& f : groups[i]) out[f] = static_cast<int>(i);
    return out;
}

void attach_group(NumberFieldData& field, const std::vector<std::vector<BinaryQuadraticForm>>& groups) {
    const auto lookup = class_lookup(groups);
    const int h = static_cast<int>(groups.size());
    std::vector<BinaryQuadraticForm> reps;
    for (const auto& g : groups) reps.push_back(g.front());
    std::vector<std::vector<int>> table(h, std::vector<int>(h));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) table[i][j] = lookup.at(reduce(compose_unreduced(reps[i], reps[j])));
    const GroupStructure gs = decompose_abelian_group(h, [&](int i, int j) { return table[i][j]; });
    field.cyclic_orders = gs.cyclic_orders;
    for (int i = 0; i < h; ++i) field.classes[i].coords = gs.coords[i];
}

} // namespace

Rational parse_rational(const std::string& text) {
    Rational r;
    try {
        const auto slash = text.find('/');
        std::size_t used = 0;
        if (slash == std::string::npos) {
            r.num = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            r.den = 1;
        } else {
            r.num = std::stoll(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            const std::string tail = text.substr(slash + 1);
            r.den = std::stoll(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw ValidationError("norm: not a rational \"p/q\": " + text);
    }
    if (r.den <= 0 || r.num <= 0) throw ValidationError("norm: must be a positive rational: " + text);
    const long long g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

double NumberFieldData::abs_discriminant() const {
    return std::abs(discriminant.convert_to<double>());
}

Eigen::RowVectorXd embedded_one(int r1, int r2) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(r1 + 2 * r2);
    for (int i = 0; i < r1; ++i) v[i] = 1.0;
    for (int j = 0; j < r2; ++j) v[r1 + 2 * j] = 1.0;
    return v;
}

NumberFieldData quadratic_field(long long d) {
    if (!is_fundamental_discriminant(d)) throw DomainError("quadratic_field: " + std::to_string(d) + " is not a fundamental discriminant");
    NumberFieldData field;
    field.n = 2;
    field.discriminant = d;
    std::vector<std::vector<BinaryQuadraticForm>> groups;
    if (d < 0) {
        field.r1 = 0;
        field.r2 = 1;
        field.w = (d == -4) ? 4 : (d == -3) ? 6 : 2;
        field.regulator = 1.0;
        field.unit_log_basis = Eigen::MatrixXd(0, 1);
        for (const auto& f : reduced_definite_forms(d)) {
            groups.push_back({f});
            field.forms.push_back(f);
            field.classes.push_back({f.to_string(), definite_form_lattice(f), Rational{f.a, 1}, {}});
        }
    } else {
        const FundamentalUnit u = fundamental_unit(d);
        if (u.norm != -1)
            throw UnsupportedError("quadratic_field: fundamental unit of D = " + std::to_string(d) +
                                   " has norm +1; supply the field through a data file");
        field.r1 = 2;
        field.r2 = 0;
        field.w = 2;
        field.fundamental_unit = u;
        field.regulator = u.log_epsilon;
        field.unit_log_basis = Eigen::MatrixXd(1, 2);
        field.unit_log_basis << u.log_epsilon, -u.log_epsilon;
        groups = indefinite_cycles(d);
        for (const auto& cyc : groups) {
            // representative with a > 0; exists because -1 is a norm
            auto it = std::find_if(cyc.begin(), cyc.end(), [](const auto& f) { return f.a > 0; });
            if (it == cyc.end()) throw DomainError("quadratic_field: cycle without a positive form");
            const BinaryQuadraticForm rep = (cyc.front() == reduce_indefinite(principal_form(d))) ? principal_form(d) : *it;
            field.forms.push_back(rep);
            field.classes.push_back({rep.to_string(), indefinite_form_lattice(rep), Rational{rep.a, 1}, {}});
        }
    }
    attach_group(field, groups);
    return field;
}

int class_of_form(const NumberFieldData& field, const BinaryQuadraticForm& f) {
    if (field.n != 2 || field.forms.empty()) throw UnsupportedError("class_of_form: not a quadratic built-in");
    const BinaryQuadraticForm r = reduce(f);
    for (int i = 0; i < field.class_number(); ++i) {
        if (field.discriminant < 0) {
            if (reduce(field.forms[i]) == r) return i;
        } else {
            const auto cyc = indefinite_cycle(reduce(field.forms[i]));
            if (std::find(cyc.begin(), cyc.end(), r) != cyc.end()) return i;
        }
    }
    throw DomainError("class_of_form: form not found");
}

const LatticeBasis& ideal_lattice(const NumberFieldData& field, int class_index) {
    if (class_index < 0 || class_index >= field.class_number())
        throw DomainError("ideal_lattice: class index " + std::to_string(class_index) + " out of range");
    return field.classes[class_index].embedded_basis;
}

std::vector<CheckResult> validate_field(const NumberFieldData& field) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, bool ok, double residual, std::string detail = {}) {
        out.push_back({std::move(name), ok, residual, std::move(detail)});
    };
    const int n = field.n, r1 = field.r1, r2 = field.r2;
    const bool sig_ok = n >= 1 && r1 >= 0 && r2 >= 0 && n == r1 + 2 * r2;
    add("signature", sig_ok, sig_ok ? 0.0 : std::abs(n - r1 - 2 * r2), "n = r1 + 2 r2");
    if (!sig_ok) return out;
    const double absd = field.abs_discriminant();
    add("discriminant_sign", field.discriminant != 0 && ((field.discriminant < 0) == (r2 % 2 == 1)), 0.0,
        "sign of D is (-1)^r2");

    const int h = field.class_number();
    long long prod = 1;
    bool orders_ok = !field.cyclic_orders.empty();
    for (int m : field.cyclic_orders) {
        orders_ok = orders_ok && m >= 1;
        prod *= std::max(m, 1);
    }
    add("group_order", orders_ok && h >= 1 && prod == h, static_cast<double>(prod - h), "product of cyclic orders = h");

    bool coords_ok = orders_ok;
    std::set<std::vector<int>> seen;
    for (const auto& c : field.classes) {
        if (c.coords.size() != field.cyclic_orders.size()) {
            coords_ok = false;
            continue;
        }
        for (std::size_t i = 0; i < c.coords.size(); ++i)
            coords_ok = coords_ok && c.coords[i] >= 0 && c.coords[i] < field.cyclic_orders[i];
        coords_ok = coords_ok && seen.insert(c.coords).second;
    }
    if (!field.classes.empty())
        coords_ok = coords_ok && std::all_of(field.classes[0].coords.begin(), field.classes[0].coords.end(),
                                             [](int x) { return x == 0; });
    add("class_coordinates", coords_ok, 0.0, "distinct coordinates in range, trivial class at 0");

    double worst_cov = 0.0;
    bool shapes_ok = true;
    for (const auto& c : field.classes) {
        const auto& b = c.embedded_basis;
        if (b.rank() != n || b.ambient_dim() != n) {
            shapes_ok = false;
            continue;
        }
        const double expect = std::pow(2.0, -r2) * std::sqrt(absd) * c.norm.value();
        worst_cov = std::max(worst_cov, rel_diff(std::abs(determinant(b)), expect));
    }
    add("basis_shape", shapes_ok, 0.0, "n x n embedded bases");
    add("covolume", shapes_ok && worst_cov <= 1e-9, worst_cov, "|det| = 2^-r2 sqrt|D| Nr");

    // class 0 must contain iota(1)
    double one_res = INFINITY;
    if (!field.classes.empty() && shapes_ok) {
        const Eigen::RowVectorXd one = embedded_one(r1, r2);
        const Eigen::RowVectorXd coeffs = one * field.classes[0].embedded_basis.rows().inverse();
        one_res = (coeffs.array() - coeffs.array().round()).abs().maxCoeff();
    }
    add("trivial_class_contains_one", one_res <= 1e-9, one_res, "iota(1) in the trivial class lattice");

    const int rank = r1 + r2 - 1;
    const auto& u = field.unit_log_basis;
    const bool ushape = u.rows() == rank && u.cols() == r1 + r2;
    add("unit_log_shape", ushape, 0.0, "(r1+r2-1) x (r1+r2)");
    if (ushape) {
        double trace = 0.0;
        for (int i = 0; i < rank; ++i) trace = std::max(trace, std::abs(u.row(i).sum()));
        add("unit_trace_zero", trace <= 1e-10, trace, "unit-log rows sum to 0");
        double reg_res;
        if (rank == 0) {
            reg_res = std::abs(field.regulator - 1.0);
        } else {
            const double minor = std::abs(u.leftCols(rank).determinant());
            reg_res = rel_diff(minor, field.regulator);
        }
        add("regulator", field.regulator > 0 && reg_res <= 1e-9, reg_res, "|det of a maximal minor| = R");
    }

    // roots of unity: vectors of the maximal order with every place of absolute value 1
    double w_res = 0.0;
    bool w_ok = field.w >= 2 && field.w % 2 == 0;
    if (w_ok && shapes_ok && !field.classes.empty()) {
        int count = 0;
        const double radius = std::sqrt(static_cast<double>(r1 + r2)) * (1 + 1e-9);
        for (const auto& lv : enumerate_vectors(field.classes[0].embedded_basis, radius)) {
            bool unit_circle = true;
            for (int i = 0; i < r1; ++i) unit_circle = unit_circle && std::abs(std::abs(lv.point[i]) - 1.0) < 1e-9;
            for (int j = 0; j < r2; ++j)
                unit_circle = unit_circle && std::abs(std::hypot(lv.point[r1 + 2 * j], lv.point[r1 + 2 * j + 1]) - 1.0) < 1e-9;
            count += unit_circle;
        }
        w_ok = count == field.w;
        w_res = std::abs(count - field.w);
    }
    add("roots_of_unity", w_ok, w_res, "w = number of torsion units in the trivial class");

    bool norms_ok = std::all_of(field.classes.begin(), field.classes.end(), [](const auto& c) { return c.norm.num > 0 && c.norm.den > 0; });
    add("norms_positive", norms_ok, 0.0);
    return out;
}

void require_valid(const NumberFieldData& field) {
    for (const auto& c : validate_field(field))
        if (!c.passed) throw ValidationError("field validation failed: " + c.name + " (residual " + std::to_string(c.residual) + ")");
}

} // namespace toral
