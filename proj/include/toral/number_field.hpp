#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "toral/lattice.hpp"
#include "toral/quadratic_forms.hpp"

namespace toral {

struct Rational {
    long long num = 1;
    long long den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

struct IdealClassData {
    std::string label;
    LatticeBasis embedded_basis; ///< rows: iota of a Z-basis of a representative ideal
    Rational norm;
    std::vector<int> coords; ///< position in the cyclic decomposition
};

/// Arithmetic data of a number field E. Coordinates on E_infty = R^n list the
/// r1 real places first, then (Re, Im) for each complex place.
struct NumberFieldData {
    int n = 0;
    int r1 = 0;
    int r2 = 0;
    BigInt discriminant;
    int w = 2;
    double regulator = 1.0;
    std::vector<IdealClassData> classes; ///< index 0 is the trivial class
    std::vector<int> cyclic_orders;
    Eigen::MatrixXd unit_log_basis; ///< (r1+r2-1) x (r1+r2), rows trace-zero
    std::vector<BinaryQuadraticForm> forms; ///< quadratic built-ins: one reduced form per class
    std::optional<FundamentalUnit> fundamental_unit;

    int class_number() const noexcept { return static_cast<int>(classes.size()); }
    int unit_rank() const noexcept { return r1 + r2 - 1; }
    double abs_discriminant() const;
};

/// Built-in quadratic field of fundamental discriminant D. Real fields are
/// supported only when the fundamental unit has norm -1.
NumberFieldData quadratic_field(long long d);

struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    std::string detail;
};

/// Evaluates every structural invariant of the field data.
std::vector<CheckResult> validate_field(const NumberFieldData& field);

/// Throws ValidationError naming the first failing check.
void require_valid(const NumberFieldData& field);

const LatticeBasis& ideal_lattice(const NumberFieldData& field, int class_index);

/// iota(1): ones at the real places, (1, 0) at each complex place.
Eigen::RowVectorXd embedded_one(int r1, int r2);

/// Index of the class containing the ideal of the given form (quadratic built-ins).
int class_of_form(const NumberFieldData& field, const BinaryQuadraticForm& f);

} // namespace toral
