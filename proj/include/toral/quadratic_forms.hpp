#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

namespace toral {

using BigInt = boost::multiprecision::cpp_int;

/// a x^2 + b x y + c y^2
struct BinaryQuadraticForm {
    long long a = 0;
    long long b = 0;
    long long c = 0;

    long long discriminant() const noexcept { return b * b - 4 * a * c; }
    std::string to_string() const;

    auto operator<=>(const BinaryQuadraticForm&) const = default;
};

bool is_fundamental_discriminant(long long d);

/// (1, b0, (b0^2 - D)/4) with b0 = D mod 2.
BinaryQuadraticForm principal_form(long long d);

/// (a, -b, c)
BinaryQuadraticForm inverse_form(const BinaryQuadraticForm& f);

/// Dirichlet composition of two primitive forms of equal discriminant. The
/// result is not reduced.
BinaryQuadraticForm compose_unreduced(const BinaryQuadraticForm& f, const BinaryQuadraticForm& g);

// Positive definite forms (D < 0).

bool is_reduced_definite(const BinaryQuadraticForm& f);
BinaryQuadraticForm reduce_definite(BinaryQuadraticForm f);
/// All primitive reduced forms of discriminant D < 0, principal form first,
/// the rest ordered by (a, |b|, -b).
std::vector<BinaryQuadraticForm> reduced_definite_forms(long long d);

// Indefinite forms (D > 0, not a square).

bool is_reduced_indefinite(const BinaryQuadraticForm& f);
/// One step of the reduction operator; properly equivalent to f.
BinaryQuadraticForm rho(const BinaryQuadraticForm& f);
BinaryQuadraticForm reduce_indefinite(BinaryQuadraticForm f);
/// The rho-cycle of a reduced indefinite form.
std::vector<BinaryQuadraticForm> indefinite_cycle(const BinaryQuadraticForm& reduced);
/// One rho-cycle per proper equivalence class of primitive forms.
std::vector<std::vector<BinaryQuadraticForm>> indefinite_cycles(long long d);

/// Reduced representative in the class of f (either sign of D).
BinaryQuadraticForm reduce(const BinaryQuadraticForm& f);

/// Fundamental unit (x + y sqrt(D)) / 2 of the quadratic order of
/// discriminant D > 0, with x, y > 0.
struct FundamentalUnit {
    BigInt x;
    BigInt y;
    int norm = 0;             ///< +1 or -1
    double log_epsilon = 0.0; ///< the regulator
};

/// From the continued fraction of (D mod 2 + sqrt D)/2, with exact integer
/// recurrences.
FundamentalUnit fundamental_unit(long long d);

} // namespace toral
