#include <doctest.h>

#include <random>

#include "../common/oracles.hpp"
#include "shellspec/band_structure.hpp"

using namespace shellspec;

namespace {

InteractionParams make(double eta, double tau, double lambda, double m = 1, double c = 1)
{
    InteractionParams p;
    p.eta = eta;
    p.tau = tau;
    p.lambda = lambda;
    p.mass = m;
    p.c = c;
    return p;
}

}  // namespace

TEST_CASE("reference spectra")
{
    const auto a = essential_spectrum(make(2, 0, 0));
    REQUIRE(a.isolated_points.size() == 1);
    CHECK(a.isolated_points[0] == 0.0);
    CHECK(oracle::band_distance(a.bands, oracle::magnetic_bands(1, 1)) < 1e-12);
    CHECK(oracle::band_distance(essential_spectrum(make(1, 0, 0)).bands, {{-oracle::inf(), -0.6}, {1.0, oracle::inf()}}) < 1e-9);
    CHECK(oracle::band_distance(essential_spectrum(make(0, -1, 0)).bands, {{-oracle::inf(), -0.6}, {0.6, oracle::inf()}}) < 1e-9);
    CHECK(oracle::band_distance(essential_spectrum(make(0, 0, 5)).bands, oracle::magnetic_bands(1, 1)) < 1e-12);
}

TEST_CASE("band functions at k = 0")
{
    const auto p = make(1, 0, 0);
    CHECK(z_pm(0.0, +1, p) == doctest::Approx(0.6));
    CHECK(z_pm(0.0, -1, p) == doctest::Approx(-0.6));
}

TEST_CASE("band functions for pure electrostatic coupling")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-3, 3), pos(0.5, 2);
    for (int n = 0; n < 50; ++n) {
        const double eta = u(rng), m = pos(rng), c = pos(rng), k = u(rng);
        if (std::fabs(std::fabs(eta) - 2 * c) < 1e-3) continue;
        const auto p = make(eta, 0, 0, m, c);
        const double ref = std::fabs(4 * c * c - eta * eta) / (4 * c * c + eta * eta) * c * c * std::sqrt(k * k + m * m);
        CHECK(z_pm(k, +1, p) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(z_pm(k, -1, p) == doctest::Approx(-ref).epsilon(1e-12));
    }
}

TEST_CASE("closed-form spectra of the one-parameter families on random draws")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> mc(0.5, 2.0), sgn(-1, 1), cpl(-6, 6);
    double worst = 0;
    for (int n = 0; n < 200; ++n) {
        const double m = mc(rng) * (sgn(rng) < 0 ? -1 : 1), c = mc(rng), x = cpl(rng);
        worst = std::max(worst, oracle::band_distance(essential_spectrum(make(x, 0, 0, m, c)).bands, oracle::electrostatic_bands(x, m, c)));
        worst = std::max(worst, oracle::band_distance(essential_spectrum(make(0, x, 0, m, c)).bands, oracle::scalar_bands(x, m, c)));
        worst = std::max(worst, oracle::band_distance(essential_spectrum(make(0, 0, x, m, c)).bands, oracle::magnetic_bands(m, c)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("transition at eta = 2c")
{
    for (double c : {0.5, 1.0, 2.0})
        for (double sgn : {1.0, -1.0}) {
            const auto r = essential_spectrum(make(sgn * 2 * c, 0, 0, 1, c));
            CHECK(r.regime == SpectrumRegime::d_eq_4c2_lambda_zero);
            REQUIRE(r.isolated_points.size() == 1);
            CHECK(r.isolated_points[0] == 0.0);
            for (double e : {-1e-3, 1e-3}) {
                const auto q = essential_spectrum(make(sgn * (2 * c + e), 0, 0, 1, c));
                CHECK(q.isolated_points.empty());
                // a band edge has moved into the gap, next to the former point
                bool edge = false;
                for (const auto& b : q.bands)
                    for (double x : {b.lo, b.hi}) edge = edge || (std::fabs(x) < 1e-2 * c * c);
                CHECK(edge);
            }
        }
}

TEST_CASE("whole line when d = 4c^2 and lambda != 0")
{
    const auto r = essential_spectrum(make(std::sqrt(5.0), 0, 1.0));
    CHECK(r.regime == SpectrumRegime::d_eq_4c2_lambda_nonzero);
    REQUIRE(r.bands.size() == 1);
    CHECK(r.gap_complement.empty());
}

TEST_CASE("negation symmetry and partner invariance")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3, 3), pos(0.5, 2);
    for (int n = 0; n < 60; ++n) {
        const auto p = make(u(rng), u(rng), u(rng), pos(rng), pos(rng));
        if (d_equals_4c2(p) || is_critical(p)) continue;
        const auto a = essential_spectrum(p);
        const auto b = essential_spectrum(make(-p.eta, p.tau, -p.lambda, p.mass, p.c));
        std::vector<Interval> neg;
        for (auto it = b.bands.rbegin(); it != b.bands.rend(); ++it) neg.push_back({-it->hi, -it->lo});
        CHECK(oracle::band_distance(a.bands, neg) < 1e-9);
        if (std::fabs(p.d()) > 1e-3) {
            const auto q = *isospectral_partners(p).inverted;
            CHECK(oracle::band_distance(a.bands, essential_spectrum(q).bands) < 1e-9);
        }
    }
}

TEST_CASE("always contains the free bands")
{
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int n = 0; n < 100; ++n) {
        const auto r = essential_spectrum(make(u(rng), u(rng), u(rng)));
        CHECK(r.contains(1.0));
        CHECK(r.contains(-1.0));
        CHECK(r.contains(50.0));
        for (size_t i = 1; i < r.bands.size(); ++i) CHECK(r.bands[i].lo > r.bands[i - 1].hi);
        for (double x : r.isolated_points) CHECK(std::fabs(x) < 1.0);
    }
}

TEST_CASE("straight-line symbol")
{
    InteractionParams p;
    const Mat2 s = line_symbol(0.0, 0.0, p);
    CHECK(std::abs(s(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(s(1, 1) + 0.5) < 1e-15);
    // the identity 4c^2 (sigma_2 c_z(p))^2 = -I on the symbol level
    for (double k : {-3.0, -0.2, 0.0, 1.7}) {
        const Mat2 t = line_symbol(k, cplx(0.3, 0.0), p);
        const Mat2 s2 = pauli::s2();
        CHECK((4.0 * (s2 * t) * (s2 * t) + pauli::s0()).norm() < 1e-12);
    }
    auto pp = make(1, 0, 0);
    CHECK(mu_asymptotics(make(2, 0, 0)).any_bounded());
    CHECK_FALSE(mu_asymptotics(pp).any_bounded());
}
