#include <doctest.h>

#include "../common/oracles.hpp"
#include "shellspec/boundary_integral.hpp"

using namespace shellspec;

namespace {

SampledCurve sampled(const CurveSpec& spec, const InteractionParams& p, double z, int nodes, double tol = default_truncation_tol)
{
    const double L = truncation_halflength(spec, p, z, tol);
    return sample_curve(spec, nodes_per_unit_for(spec, L, nodes), L);
}

}  // namespace

TEST_CASE("truncation half-length")
{
    InteractionParams p;
    const CurveSpec line = straight_line(1.0);
    CHECK(truncation_halflength(line, p, 0.0, 1e-8) == doctest::Approx(1.0 + std::log(1e8)));
    CHECK(truncation_halflength(line, p, 0.6, 1e-8) == doctest::Approx(1.0 + std::log(1e8) / 0.8));
}

TEST_CASE("assembly guards")
{
    InteractionParams p;
    const SampledCurve sc = sample_curve(straight_line(1.0), 8.0, 6.0);
    CHECK_THROWS_AS(assemble_cz(sc, p, 1.5), std::domain_error);
    CHECK_THROWS_AS(assemble_cz(sc, p, 0.0), std::domain_error);  // under-truncated
}

TEST_CASE("identity 4c^2 ((sigma.nu) C_z)^2 = -I converges")
{
    InteractionParams p;
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    AssemblyOptions o;
    o.tol = 1e-16;
    const double d1 = cz_identity_defect(assemble_cz(sampled(corner, p, 0.0, 300, 1e-16), p, 0.0, o)).compressed;
    const double d2 = cz_identity_defect(assemble_cz(sampled(corner, p, 0.0, 600, 1e-16), p, 0.0, o)).compressed;
    CHECK(d2 < 5e-2);
    CHECK(d2 < 0.5 * d1);
}

TEST_CASE("C_z is self-adjoint for real z in the gap")
{
    InteractionParams p;
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    const SampledCurve sc = sampled(corner, p, 0.3, 300);
    CHECK(oracle::compressed_asymmetry(assemble_cz_matrix(sc, p, cplx(0.3, 0.0)), sc, 2) < 1e-8);
    // and C_z^* = C_{conj z} for complex z
    const Eigen::MatrixXcd a = assemble_cz_matrix(sc, p, cplx(0.3, 0.2));
    const Eigen::MatrixXcd b = assemble_cz_matrix(sc, p, cplx(0.3, -0.2));
    Eigen::VectorXd w(2 * sc.size());
    for (int i = 0; i < sc.size(); ++i) w(2 * i) = w(2 * i + 1) = sc.nodes[i].w;
    // compare on separated blocks only, where both matrices use plain node weights
    double worst = 0, scale = 0;
    for (int i = 0; i < sc.size(); i += 7)
        for (int j = 0; j < sc.size(); j += 5) {
            if (std::abs(sc.panel_of(i) - sc.panel_of(j)) < 3) continue;
            const Eigen::Matrix2cd x = a.block<2, 2>(2 * i, 2 * j) / sc.nodes[j].w;
            const Eigen::Matrix2cd y = b.block<2, 2>(2 * j, 2 * i) / sc.nodes[i].w;
            worst = std::max(worst, (x - y.adjoint()).norm());
            scale = std::max(scale, x.norm());
        }
    // close panels are oversampled through interpolation, which is not exactly symmetric
    CHECK(worst < 1e-8 * scale);
}

TEST_CASE("jump relation for the potential")
{
    InteractionParams p;
    p.tau = -1.0;
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    const auto e = oracle::jump_relation_error(sampled(corner, p, 0.2, 400), p, 0.2, 6);
    CHECK(e.points == 12);
    CHECK(e.worst < 5e-2);
}

TEST_CASE("shift-invert Arnoldi on a known spectrum")
{
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(60, 60);
    for (int i = 0; i < 60; ++i) a(i, i) = cplx(0.1 * i - 3.0, 0.01 * i);
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(Eigen::MatrixXcd::Random(60, 60)).householderQ();
    const auto r = eigenvalue_nearest(q * a * q.adjoint(), cplx(-1.01, 0.21));
    CHECK(std::abs(r.mu - cplx(-1.0, 0.2)) < 1e-10);
    CHECK(r.residual < 1e-10);
}

TEST_CASE("corner eigenvalue")
{
    InteractionParams p;
    p.tau = -1.0;
    const CurveSpec corner = build_curve(smoothed_corner(0.05, 1.0));
    ScanOptions so;
    GapEigenvalue g{};
    REQUIRE(refine_root(sampled(corner, p, 0.47, 400), p, 0.44, 0.47, so, g));
    CHECK(g.z == doctest::Approx(0.4547643).epsilon(1e-4));
    CHECK(g.residual < 1e-6);
    CHECK(g.multiplicity == 1);
}

TEST_CASE("scan finds the mirrored roots under negation")
{
    // A_{0,tau,0} commutes with the spectral reflection z -> -z
    InteractionParams p;
    p.tau = -1.0;
    const CurveSpec corner = build_curve(smoothed_corner(0.05, 1.0));
    const SampledCurve sc = sampled(corner, p, 0.4547, 400);
    const double a = std::abs(bs_nearest(sc, p, 0.4547).mu + 1.0);
    const double b = std::abs(bs_nearest(sc, p, -0.4547).mu + 1.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("curve differs from the line only near the bend")
{
    InteractionParams p;
    p.tau = -1.0;
    const CurveSpec corner = build_curve(smoothed_corner(pi / 6, 1.0));
    const double L = truncation_halflength(corner, p, 0.0);
    const auto d = line_reference_deviation(corner, p, 0.0, nodes_per_unit_for(corner, L, 200));
    CHECK(d.max_entry_outside < 1e-10);
    CHECK(d.top_singular > 0.0);
    CHECK(d.singular_ratio_20 < 0.1);
}

TEST_CASE("field points and reconstruction")
{
    InteractionParams p;
    p.tau = -1.0;
    const CurveSpec corner = build_curve(smoothed_corner(0.05, 1.0));
    const SampledCurve sc = sampled(corner, p, 0.4548, 400);
    CHECK_FALSE(admissible_field_point(sc, sc.nodes[10].x));
    CHECK(admissible_field_point(sc, Vec2(-5.0, 0.0)));
    const auto a = assemble_cz(sc, p, 0.4548);
    const auto e = eigenvalue_nearest(a.bs_matrix, -1.0);
    CHECK_THROWS(reconstruct_eigenfunction(a, e.vector, {sc.nodes[3].x}));
    const auto f = reconstruct_eigenfunction(a, e.vector, {Vec2(-1, 0), Vec2(-2, 0), Vec2(-4, 0)});
    REQUIRE(f.size() == 3);
    // the bound state decays away from the curve
    CHECK(f[2].u.norm() < f[0].u.norm());
}
