#include <doctest.h>

#include "../common/oracles.hpp"
#include "shellspec/schrodinger_reference.hpp"

using namespace shellspec;

namespace {

SampledCurve sampled(const CurveSpec& spec, double m, double z, int nodes)
{
    const double L = single_layer_truncation_halflength(spec, m, z);
    return sample_curve(spec, nodes_per_unit_for(spec, L, nodes), L);
}

}  // namespace

TEST_CASE("projection pair")
{
    const auto pp = projection_pair();
    CHECK((pp.p_plus * pp.p_plus - pp.p_plus).norm() < 1e-15);
    CHECK((pp.p_plus * pp.e - pp.e).norm() < 1e-15);
    CHECK(pp.e.norm() == doctest::Approx(1.0));
}

TEST_CASE("single layer is symmetric and positive")
{
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    for (double z : {-0.5, -0.2}) {
        const SampledCurve sc = sampled(corner, 1.0, z, 300);
        const auto a = assemble_single_layer(sc, 1.0, z);
        CHECK(oracle::compressed_asymmetry(a.s_matrix.cast<cplx>(), sc, 1) < 1e-8);
        const Eigen::VectorXd ev = single_layer_eigenvalues(a);
        CHECK(ev.minCoeff() > 0.0);
        for (int i = 1; i < ev.size(); ++i) CHECK(ev(i) <= ev(i - 1));
    }
}

TEST_CASE("straight-line single layer has top eigenvalue near the symbol maximum")
{
    // the symbol of S on the line is m / sqrt(p^2 + 2 m |z|), maximal value sqrt(m / (2|z|))
    const CurveSpec line = straight_line(1.0);
    const double z = -0.5;
    const auto a = assemble_single_layer(sampled(line, 1.0, z, 400), 1.0, z);
    const double top = single_layer_eigenvalues(a)(0);
    CHECK(top < 1.0 + 1e-6);
    CHECK(top > 0.99);
}

TEST_CASE("corner has a bound state below the threshold")
{
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    SchrodingerOptions o;
    o.max_roots = 1;
    const SampledCurve sc = sampled(corner, 1.0, -0.5 * (1 + 1e-3), 400);
    const auto r = schrodinger_eigenvalues(sc, 1.0, -1.0, {-0.6, -0.5 * (1 + 1e-3)}, o);
    REQUIRE(r.size() == 1);
    CHECK(r[0].z == doctest::Approx(-0.5355794).epsilon(1e-5));
    CHECK(r[0].residual < 1e-8);
    CHECK(schrodinger_eigenvalues(sc, 1.0, 1.0, {-0.6, -0.51}, o).empty());
}

TEST_CASE("kernel deviation decays in c")
{
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    const SampledCurve sc = sampled(corner, 1.0, -1.0, 240);
    const auto a = kernel_limit_deviation(sc, 1.0, -1.0, 8.0);
    const auto b = kernel_limit_deviation(sc, 1.0, -1.0, 16.0);
    CHECK(b.cz_deviation < a.cz_deviation);
    CHECK(b.phi_deviation < a.phi_deviation);
    CHECK(b.cz_max_entry < a.cz_max_entry);
    CHECK_THROWS(kernel_limit_deviation(sc, 1.0, -1.0, 0.5));
}

TEST_CASE("guards")
{
    const SampledCurve sc = sample_curve(straight_line(1.0), 8.0, 30.0);
    CHECK_THROWS(assemble_single_layer(sc, 1.0, 0.5));
    CHECK_THROWS(assemble_single_layer(sc, -1.0, -0.5));
    CHECK_THROWS(nonrel_limit_experiment(straight_line(1.0), 1.0, -1.0, {4, 8}));
    CHECK_THROWS(nonrel_limit_experiment(build_curve(smoothed_corner(pi / 6, 1.0)), 1.0, 1.0, {4, 8}));
    CHECK_THROWS(nonrel_limit_experiment(build_curve(smoothed_corner(pi / 6, 1.0)), 1.0, -1.0, {8, 4}));
}
