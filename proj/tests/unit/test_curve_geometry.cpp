#include <doctest.h>

#include "shellspec/curve_geometry.hpp"
#include "shellspec/special_functions.hpp"

using namespace shellspec;

TEST_CASE("smooth step")
{
    CHECK(smooth_step(-0.1) == 0.0);
    CHECK(smooth_step(1.2) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    for (double u = 0.0; u < 1.0; u += 0.05) CHECK(smooth_step(u + 0.05) >= smooth_step(u));
}

TEST_CASE("line is straight")
{
    const CurveSpec c = build_curve(straight_line(1.0));
    for (double s = -5; s <= 5; s += 0.5) {
        CHECK(c.tangent(s).isApprox(c.tangent(0.0)));
        CHECK((c.point(s) - c.point(0.0) - s * c.tangent(0.0)).norm() < 1e-14);
    }
}

TEST_CASE("smoothed corner: unit speed, symmetry and straight ends")
{
    for (double om : {0.05, pi / 6, 1.2}) {
        const CurveSpec c = build_curve(smoothed_corner(om, 1.0));
        for (double s = -4; s <= 4; s += 0.25) {
            CHECK(c.tangent(s).norm() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(c.normal(s).dot(c.tangent(s)) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(c.point(s).x() == doctest::Approx(c.point(-s).x()).epsilon(1e-12));
            CHECK(c.point(s).y() == doctest::Approx(-c.point(-s).y()).epsilon(1e-12));
        }
        CHECK(c.tangent_angle(-3.0) == doctest::Approx(c.angle_minus()));
        CHECK(c.tangent_angle(3.0) == doctest::Approx(c.angle_plus()));
        // the two arms meet at opening angle 2 omega
        CHECK(std::fabs(std::remainder(c.angle_plus() - c.angle_minus() + pi, 2 * pi)) == doctest::Approx(2 * om).epsilon(1e-12));
        CHECK(c.bi_lipschitz > 0.0);
        CHECK(c.bi_lipschitz <= 1.0);
    }
}

TEST_CASE("position integrates the tangent")
{
    const CurveSpec c = build_curve(perturbed_line(0.4, 1.5));
    const double h = 1e-5;
    for (double s = -2; s <= 2; s += 0.3) {
        const Vec2 d = (c.point(s + h) - c.point(s - h)) / (2 * h);
        CHECK((d - c.tangent(s)).norm() < 1e-8);
    }
}

TEST_CASE("invalid curves are rejected")
{
    CHECK_THROWS(build_curve(smoothed_corner(0.0, 1.0)));
    CHECK_THROWS(build_curve(smoothed_corner(pi / 2 + 0.1, 1.0)));
    CHECK_THROWS(build_curve(straight_line(-1.0)));
    CHECK_THROWS(family_from_name("spiral"));
}

TEST_CASE("sampling covers the truncated curve with Gauss panels")
{
    const CurveSpec c = build_curve(smoothed_corner(pi / 6, 1.0));
    const SampledCurve sc = sample_curve(c, 20.0, 10.0);
    CHECK(sc.size() % sc.order == 0);
    double total = 0;
    for (const auto& n : sc.nodes) total += n.w;
    CHECK(total == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(sc.panels.front().a == doctest::Approx(-10.0));
    CHECK(sc.panels.back().b == doctest::Approx(10.0));
    for (size_t i = 1; i < sc.nodes.size(); ++i) CHECK(sc.nodes[i].s > sc.nodes[i - 1].s);
    // the bend is refined
    CHECK(sc.panel_length(sc.panel_of(sc.size() / 2)) < sc.panel_length(0));
    const double npu = nodes_per_unit_for(c, 10.0, 600);
    CHECK(sample_curve(c, npu, 10.0).size() == doctest::Approx(600).epsilon(0.1));
}
