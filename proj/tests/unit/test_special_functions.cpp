#include <doctest.h>

#include <random>

#include "../common/oracles.hpp"
#include "shellspec/special_functions.hpp"

using namespace shellspec;

TEST_CASE("K0 and K1 at 1")
{
    CHECK(bessel_k(0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-14));
    CHECK(bessel_k(1, 1.0) == doctest::Approx(0.60190723019723458).epsilon(1e-14));
}

TEST_CASE("K0 and K1 against the integral representation")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> la(std::log(1e-3), std::log(30.0)), ar(-1.2, 1.2);
    double worst = 0;
    for (int k = 0; k < 40; ++k) {
        const cplx xi = std::polar(std::exp(la(rng)), ar(rng));
        for (int o = 0; o < 2; ++o) {
            const cplx ref = oracle::bessel_k_integral(o, xi);
            worst = std::max(worst, std::abs(bessel_k(o, xi) - ref) / std::abs(ref));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("real and complex paths agree")
{
    for (double x : {1e-4, 0.01, 0.5, 1.9, 2.1, 7.0, 25.0, 200.0}) {
        CHECK(std::abs(bessel_k(0, cplx(x, 0.0)) - bessel_k(0, x)) <= 1e-13 * bessel_k(0, x));
        CHECK(std::abs(bessel_k(1, cplx(x, 0.0)) - bessel_k(1, x)) <= 1e-13 * bessel_k(1, x));
    }
}

TEST_CASE("derivative identity K0' = -K1")
{
    for (double x = 0.01; x < 30.0; x *= 1.3) {
        const double h = 1e-5 * x;
        const double d = (bessel_k(0, x + h) - bessel_k(0, x - h)) / (2 * h);
        CHECK(std::fabs(d + bessel_k(1, x)) <= 1e-6 * bessel_k(1, x));
    }
}

TEST_CASE("Wronskian I0 K1 + I1 K0 = 1/x")
{
    for (double x : {0.05, 0.3, 1.0, 3.0, 8.0}) {
        double i0, i1;
        bessel_i01(x, i0, i1);
        CHECK(x * (i0 * bessel_k(1, x) + i1 * bessel_k(0, x)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("scaled K matches unscaled")
{
    for (double x : {0.2, 3.0, 40.0}) {
        double k0e, k1e;
        bessel_k01_scaled(x, k0e, k1e);
        CHECK(k0e * std::exp(-x) == doctest::Approx(bessel_k(0, x)).epsilon(1e-13));
        CHECK(k1e * std::exp(-x) == doctest::Approx(bessel_k(1, x)).epsilon(1e-13));
    }
}

TEST_CASE("conjugation symmetry")
{
    for (int k = 0; k < 20; ++k) {
        const cplx xi(0.2 + 0.9 * k, 0.7 * std::sin(1.1 * k) * (1 + k));
        for (int o = 0; o < 2; ++o) CHECK(std::abs(bessel_k(o, std::conj(xi)) - std::conj(bessel_k(o, xi))) < 1e-14 * std::abs(bessel_k(o, xi)) + 1e-300);
    }
}

TEST_CASE("singular split recomposes")
{
    for (int o = 0; o < 2; ++o) {
        const BesselSplit s = bessel_split(o);
        for (double r : {1e-3, 0.1, 0.7, 1.5}) {
            const cplx xi = std::polar(r, 0.4);
            CHECK(std::abs(s.recompose(xi) - bessel_k(o, xi)) < 1e-12 * std::abs(bessel_k(o, xi)));
        }
    }
    // the remainder of K0 is smooth: bounded at 0 and equal to log 2 - gamma there
    CHECK(bessel_split(0).smooth_remainder(cplx(1e-8, 0)).real() == doctest::Approx(std::log(2.0) - euler_gamma).epsilon(1e-7));
}

TEST_CASE("sqrt branch")
{
    CHECK(std::abs(sqrt_branch(cplx(-4.0, 0.0)) - cplx(0, 2)) < 1e-15);
    CHECK(std::abs(sqrt_branch(9.0) - 3.0) < 1e-15);
    for (int k = 0; k < 16; ++k) {
        const cplx w = std::polar(1.5, -3.0 + 0.4 * k);
        const cplx r = sqrt_branch(w);
        CHECK(std::abs(r * r - w) < 1e-14);
        CHECK(r.imag() >= 0.0);
    }
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(bessel_k(0, cplx(0.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1, 0.0), std::domain_error);
}
