#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>

#include "ideal_sums.hpp"
#include "toral/errors.hpp"
#include "toral/special_functions.hpp"

using namespace toral;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// int_x^inf t^(a-1) e^-t dt by exp-sinh quadrature.
double incomplete_gamma_quadrature(double a, double x) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate([&](double u) { return std::exp((a - 1.0) * std::log(x + u) - (x + u)); }, 1e-15);
}

// int_1^inf t^(s/2) exp(-pi t a^2) dt / t
double f_quadrature(double s, double a) {
    boost::math::quadrature::exp_sinh<double> es;
    return es.integrate(
        [&](double u) {
            const double t = 1.0 + u;
            return std::pow(t, 0.5 * s - 1.0) * std::exp(-std::numbers::pi * t * a * a);
        },
        1e-15);
}

} // namespace

TEST_CASE("gamma at classical points") {
    CHECK(special::gamma(1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(rel(special::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(rel(special::gamma(4.0), 6.0) < 1e-13);
    CHECK_THROWS_AS(special::gamma(0.0), DomainError);
    CHECK_THROWS_AS(special::gamma(-1.5), DomainError);
    CHECK_THROWS_AS(special::gamma(NAN), DomainError);
}

TEST_CASE("gamma recurrence on [0.1, 50]") {
    for (double x = 0.1; x <= 50.0; x += 0.137) {
        CHECK(rel(special::gamma(x + 1.0), x * special::gamma(x)) < 1e-12);
    }
    for (double x = 0.5; x < 300.0; x *= 1.7) {
        CHECK(rel(special::log_gamma(x + 1.0), std::log(x) + special::log_gamma(x)) < 1e-13);
    }
}

TEST_CASE("upper incomplete gamma") {
    SUBCASE("a = 1 is exp(-x)") {
        for (double x : {0.0, 0.1, 1.0, 2.5, 10.0, 40.0}) CHECK(rel(special::upper_incomplete_gamma(1.0, x), std::exp(-x)) < 1e-13);
    }
    SUBCASE("a = 1/2 is sqrt(pi) erfc(sqrt(x))") {
        for (double x : {0.01, 0.3, 1.0, 1.5, 4.0, 20.0}) {
            const double expect = std::sqrt(std::numbers::pi) * special::erfc(std::sqrt(x));
            CHECK(rel(special::upper_incomplete_gamma(0.5, x), expect) < 1e-12);
        }
    }
    SUBCASE("quadrature oracle") {
        // (2.5, 3.0) from adaptive quadrature of the defining integral
        CHECK(rel(special::upper_incomplete_gamma(2.5, 3.0), incomplete_gamma_quadrature(2.5, 3.0)) < 1e-12);
        for (double a : {0.2, 0.7, 1.3, 3.0, 7.5})
            for (double x : {0.05, 0.5, 2.0, 6.0, 15.0})
                CHECK(rel(special::upper_incomplete_gamma(a, x), incomplete_gamma_quadrature(a, x)) < 1e-12);
    }
    SUBCASE("continuation to a <= 0") {
        // Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a
        for (double a : {-0.25, -0.5, -1.3})
            for (double x : {0.1, 0.7, 1.5, 5.0}) {
                const double up = special::upper_incomplete_gamma_ext(a + 1.0, x);
                const double expect = (up - std::pow(x, a) * std::exp(-x)) / a;
                CHECK(rel(special::upper_incomplete_gamma_ext(a, x), expect) < 1e-11);
                CHECK(rel(special::upper_incomplete_gamma_ext(a, x), incomplete_gamma_quadrature(a, x)) < 1e-11);
            }
        CHECK(rel(special::upper_incomplete_gamma_ext(0.0, 0.8), special::exp_integral_e1(0.8)) < 1e-14);
        CHECK(rel(special::upper_incomplete_gamma_ext(-1.0, 0.6), incomplete_gamma_quadrature(-1.0, 0.6)) < 1e-11);
        CHECK(rel(special::exp_integral_e1(2.0), incomplete_gamma_quadrature(0.0, 2.0)) < 1e-12);
    }
    CHECK_THROWS_AS(special::upper_incomplete_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(special::upper_incomplete_gamma(1.0, -1.0), DomainError);
}

TEST_CASE("erfc") {
    CHECK(special::erfc(0.0) == 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = -6.0 + 12.0 * i / 999.0;
        CHECK(std::abs(special::erfc(x) + special::erfc(-x) - 2.0) < 1e-13);
    }
    // erfc(sqrt(pi)) against quadrature of (2/sqrt(pi)) int_{sqrt(pi)}^inf e^-t^2 dt
    boost::math::quadrature::exp_sinh<double> es;
    const double root_pi = std::sqrt(std::numbers::pi);
    const double oracle =
        2.0 / root_pi * es.integrate([&](double u) { return std::exp(-(root_pi + u) * (root_pi + u)); }, 1e-16);
    CHECK(rel(special::erfc(root_pi), oracle) < 1e-12);
    CHECK(special::erfc(root_pi) == Approx(0.0121888821848029).epsilon(1e-12));
    CHECK_THROWS_AS(special::erfc(INFINITY), DomainError);
}

TEST_CASE("f_term") {
    SUBCASE("s = 1 reduces to erfc") {
        for (double a : {0.05, 0.3, 1.0, 2.0, 3.5})
            CHECK(rel(special::f_term(1.0, a), special::erfc(std::sqrt(std::numbers::pi) * a) / a) < 1e-12);
    }
    CHECK(rel(special::f_term(2.0, 1.0), std::exp(-std::numbers::pi) / std::numbers::pi) < 1e-13);
    SUBCASE("matches the defining integral") {
        for (double s : {0.3, 0.5, 1.0, 1.4, 2.2, 2.9, -0.5, -1.0})
            for (double a : {0.02, 0.1, 0.5, 1.0, 1.7, 3.0}) {
                INFO("s=" << s << " a=" << a);
                CHECK(rel(special::f_term(s, a), f_quadrature(s, a)) < 1e-9);
            }
    }
    SUBCASE("strictly decreasing in a") {
        for (double s : {0.25, 1.0, 1.5, 2.7}) {
            double prev = special::f_term(s, 1e-3);
            for (double a = 1e-3 * 1.3; a < 5.0; a *= 1.3) {
                const double cur = special::f_term(s, a);
                CHECK(cur < prev);
                prev = cur;
            }
            CHECK(special::f_term(s, 0.4) > special::f_term(s, 0.8));
        }
    }
    CHECK_THROWS_AS(special::f_term(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(special::f_term(1.0, -2.0), DomainError);
}

TEST_CASE("zeta functions") {
    for (double s : {-2.5, -0.3, 0.3, 0.5, 0.7, 1.1, 1.5, 2.0, 3.0, 7.0}) {
        INFO("s=" << s);
        CHECK(rel(special::riemann_zeta(s), boost::math::zeta(s)) < 1e-12);
    }
    CHECK(special::riemann_zeta(1.1) == Approx(10.5844484649508).epsilon(1e-12));
    for (double s : {0.7, 1.5, 2.5})
        for (double q : {0.25, 0.75, 2.0})
            CHECK(rel(special::hurwitz_zeta(s, q), testing::hurwitz_zeta_oracle(s, q)) < 1e-12);
    CHECK_THROWS_AS(special::riemann_zeta(1.0), DomainError);
}

TEST_CASE("unit ball volumes") {
    CHECK(special::unit_ball_volume(1) == Approx(2.0));
    CHECK(special::unit_ball_volume(2) == Approx(std::numbers::pi));
    CHECK(special::unit_ball_volume(3) == Approx(4.0 * std::numbers::pi / 3.0));
}
