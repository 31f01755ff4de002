#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "toral/abelian_group.hpp"
#include "toral/errors.hpp"
#include "toral/quadratic_forms.hpp"

using namespace toral;
using F = BinaryQuadraticForm;

namespace {

long long powmod(long long b, long long e, long long m) {
    long long r = 1;
    b %= m;
    if (b < 0) b += m;
    while (e > 0) {
        if (e & 1) r = static_cast<long long>(static_cast<__int128>(r) * b % m);
        b = static_cast<long long>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// Kronecker symbol (D / a) for a fundamental discriminant D, by factoring a.
int kronecker(long long d, long long a) {
    int result = 1;
    for (long long p = 2; p * p <= a || a > 1; ++p) {
        if (p * p > a) p = a;
        while (a % p == 0) {
            a /= p;
            int chi;
            if (p == 2) {
                const long long m8 = ((d % 8) + 8) % 8;
                chi = (d % 2 == 0) ? 0 : (m8 == 1 || m8 == 7) ? 1 : -1;
            } else if (d % p == 0) {
                chi = 0;
            } else {
                chi = powmod(d, (p - 1) / 2, p) == 1 ? 1 : -1;
            }
            result *= chi;
        }
    }
    return result;
}

// Analytic class number formula for D < 0.
long long class_number_oracle(long long d) {
    const long long m = -d;
    long long s = 0;
    for (long long a = 1; a < m; ++a) s += kronecker(d, a) * a;
    const int w = d == -4 ? 4 : d == -3 ? 6 : 2;
    return std::llround(-static_cast<double>(w) * s / (2.0 * m));
}

// h R for D > 0: -1/2 sum chi(a) log sin(pi a / D)
double class_number_regulator_oracle(long long d) {
    double s = 0.0;
    for (long long a = 1; a < d; ++a) s += kronecker(d, a) * std::log(std::sin(std::numbers::pi * a / d));
    return -0.5 * s;
}

int reduced_count_brute(long long d) {
    // every (a, b, c) in a box, primitive and reduced by the textbook conditions
    int count = 0;
    const long long lim = static_cast<long long>(std::sqrt(-d / 3.0)) + 1;
    for (long long a = 1; a <= lim; ++a)
        for (long long b = -a; b <= a; ++b) {
            if ((b * b - d) % (4 * a)) continue;
            const long long c = (b * b - d) / (4 * a);
            if (c < a) continue;
            if ((b == -a) || (a == c && b < 0)) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            ++count;
        }
    return count;
}

std::vector<long long> fundamental_negative(long long limit) {
    std::vector<long long> out;
    for (long long d = -3; d >= -limit; --d)
        if (is_fundamental_discriminant(d)) out.push_back(d);
    return out;
}

} // namespace

TEST_CASE("fundamental discriminants") {
    for (long long d : {-3, -4, -7, -8, -15, -20, -23, -24, -163, 5, 8, 12, 13, 21, 29, 65})
        CHECK(is_fundamental_discriminant(d));
    for (long long d : {-12, -16, -27, 0, 1, 4, 9, 17 * 4, 45, 20, -1, 3})
        CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("definite reduction and enumeration") {
    CHECK(reduced_definite_forms(-4) == std::vector<F>{{1, 0, 1}});
    CHECK(reduced_definite_forms(-23) == std::vector<F>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});
    CHECK(reduce_definite({6, 5, 2}) == F{2, -1, 3});
    CHECK(reduce_definite({3, 1, 2}) == F{2, -1, 3});
    CHECK(reduce_definite({1, 10, 31}) == F{1, 0, 6});
    for (long long d : fundamental_negative(3000)) {
        const auto forms = reduced_definite_forms(d);
        CHECK(static_cast<long long>(forms.size()) == class_number_oracle(d));
        CHECK(static_cast<int>(forms.size()) == reduced_count_brute(d));
        CHECK(forms.front() == principal_form(d));
        for (const auto& f : forms) CHECK(is_reduced_definite(f));
    }
}

TEST_CASE("composition forms a group") {
    for (long long d : fundamental_negative(2000)) {
        const auto forms = reduced_definite_forms(d);
        std::map<F, int> index;
        for (std::size_t i = 0; i < forms.size(); ++i) index[forms[i]] = static_cast<int>(i);
        const int h = static_cast<int>(forms.size());
        std::vector<std::vector<int>> t(h, std::vector<int>(h));
        bool closed = true;
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                const F c = compose_unreduced(forms[i], forms[j]);
                closed = closed && c.discriminant() == d;
                const auto it = index.find(reduce_definite(c));
                closed = closed && it != index.end();
                t[i][j] = it == index.end() ? 0 : it->second;
            }
        REQUIRE(closed);
        bool ok = true;
        for (int i = 0; i < h; ++i) {
            ok = ok && t[0][i] == i && t[i][0] == i;
            ok = ok && t[i][index.at(reduce_definite(inverse_form(forms[i])))] == 0;
            for (int j = 0; j < h; ++j) {
                ok = ok && t[i][j] == t[j][i];
                for (int k = 0; k < h; ++k) ok = ok && t[t[i][j]][k] == t[i][t[j][k]];
            }
        }
        INFO("D=" << d);
        CHECK(ok);
        // structure: elements killed by 2 count the even cyclic factors
        const GroupStructure gs = decompose_abelian_group(h, [&](int i, int j) { return t[i][j]; });
        long long prod = 1, two_torsion = 1;
        for (int m : gs.cyclic_orders) {
            prod *= m;
            two_torsion *= std::gcd(m, 2);
        }
        CHECK(prod == h);
        int killed = 0;
        for (int i = 0; i < h; ++i) killed += (t[i][i] == 0);
        CHECK(killed == two_torsion);
    }
}

TEST_CASE("indefinite reduction and cycles") {
    CHECK(is_reduced_indefinite({1, 1, -1}));
    CHECK_FALSE(is_reduced_indefinite({1, 0, -2}));
    CHECK(is_reduced_indefinite({-1, 2, 1}));
    for (long long d : {5, 8, 13, 29, 65, 85, 229, 41, 61, 37}) {
        REQUIRE(is_fundamental_discriminant(d));
        const auto u = fundamental_unit(d);
        REQUIRE(u.norm == -1);
        const auto cycles = indefinite_cycles(d);
        const double hr = class_number_regulator_oracle(d);
        INFO("D=" << d);
        CHECK(std::abs(static_cast<double>(cycles.size()) * u.log_epsilon - hr) < 1e-9 * hr);
        // every cycle element is reduced and rho maps within the cycle
        for (const auto& cyc : cycles)
            for (const auto& f : cyc) {
                CHECK(is_reduced_indefinite(f));
                CHECK(f.discriminant() == d);
            }
    }
}

TEST_CASE("fundamental units") {
    auto brute = [](long long d) {
        // smallest y >= 1 with D y^2 + 4 or D y^2 - 4 a square
        for (long long y = 1;; ++y)
            for (int sgn : {-1, 1}) {
                const long long t = d * y * y + 4 * sgn;
                const long long x = std::llround(std::sqrt(static_cast<double>(t)));
                if (t > 0 && x * x == t) return std::make_tuple(x, y, sgn);
            }
    };
    for (long long d : {5, 8, 12, 13, 21, 24, 28, 29, 33, 40, 41, 44, 53, 56, 57, 60, 61, 65, 69, 73, 76, 77, 85, 88, 89, 92, 93, 97}) {
        if (!is_fundamental_discriminant(d)) continue;
        const auto u = fundamental_unit(d);
        const auto [x, y, nrm] = brute(d);
        INFO("D=" << d);
        CHECK(u.x == x);
        CHECK(u.y == y);
        CHECK(u.norm == nrm);
        const double eps = (static_cast<double>(x) + y * std::sqrt(static_cast<double>(d))) / 2;
        CHECK(eps > 1.0);
        CHECK(std::abs(u.log_epsilon - std::log(eps)) < 1e-12);
        // eps^2 - x eps + norm = 0
        CHECK(std::abs(eps * eps - x * eps + nrm) < 1e-12 * eps * eps);
    }
    CHECK(fundamental_unit(5).log_epsilon == doctest::Approx(0.48121182505960344).epsilon(1e-14));
    // a large-period case: D = 94 * 4
    const auto big = fundamental_unit(376);
    CHECK(big.x * big.x - 376 * big.y * big.y == 4 * big.norm);
}

TEST_CASE("abelian group decomposition and characters") {
    // Z/4 x Z/6 as integers mod (4,6), encoded i = 6a + b
    auto mul = [](int i, int j) { return ((i / 6 + j / 6) % 4) * 6 + (i % 6 + j % 6) % 6; };
    const GroupStructure gs = decompose_abelian_group(24, mul);
    REQUIRE(gs.cyclic_orders.size() == 2);
    CHECK(gs.cyclic_orders[0] * gs.cyclic_orders[1] == 24);
    CHECK(gs.cyclic_orders[0] == 12);
    CHECK(gs.cyclic_orders[1] == 2);
    std::set<std::vector<int>> distinct(gs.coords.begin(), gs.coords.end());
    CHECK(distinct.size() == 24);
    // coordinates are a homomorphism
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            const auto& a = gs.coords[i];
            const auto& b = gs.coords[j];
            const auto& c = gs.coords[mul(i, j)];
            for (int k = 0; k < 2; ++k) CHECK((a[k] + b[k]) % gs.cyclic_orders[k] == c[k]);
        }
    const auto trivial = decompose_abelian_group(1, [](int, int) { return 0; });
    CHECK(trivial.cyclic_orders == std::vector<int>{1});

    for (const std::vector<int>& orders : std::vector<std::vector<int>>{{1}, {3}, {2, 2}, {12, 2}, {5, 5, 4}, {100}})
        CHECK(CharacterTable(orders).orthogonality_residual() <= 1e-12);
    const CharacterTable t({3});
    CHECK(std::abs(t(1, std::vector<int>{1}) - std::polar(1.0, 2 * std::numbers::pi / 3)) < 1e-15);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(principal_form(9), DomainError);
    CHECK_THROWS_AS(reduced_definite_forms(5), DomainError);
    CHECK_THROWS_AS(compose_unreduced({1, 1, 6}, {1, 0, 1}), DomainError);
}
