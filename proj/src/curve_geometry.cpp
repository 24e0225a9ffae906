#include "shellspec/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shellspec/quadrature.hpp"
#include "shellspec/special_functions.hpp"

namespace shellspec {

namespace {

constexpr int knots_per_side = 48;
constexpr int segment_rule = 24;

double bump_profile(double u)
{
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return u * std::exp(-1.0 / (1.0 - u * u));
}

double bump_peak()
{
    const double u = (std::sqrt(6.0) - std::sqrt(2.0)) / 2.0;
    return bump_profile(u);
}

Vec2 integrate_direction(const CurveSpec& c, double a, double b)
{
    const auto& g = gauss_legendre_cached(segment_rule);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Vec2 acc = Vec2::Zero();
    for (int j = 0; j < segment_rule; ++j) {
        const double psi = c.tangent_angle(mid + half * g.nodes[j]);
        acc += g.weights[j] * Vec2(std::cos(psi), std::sin(psi));
    }
    return half * acc;
}

}  // namespace

std::string family_name(CurveFamily f)
{
    switch (f) {
    case CurveFamily::straight_line: return "straight_line";
    case CurveFamily::smoothed_corner: return "smoothed_corner";
    case CurveFamily::perturbed_line: return "perturbed_line";
    }
    return "unknown";
}

CurveFamily family_from_name(const std::string& name)
{
    if (name == "straight_line") return CurveFamily::straight_line;
    if (name == "smoothed_corner") return CurveFamily::smoothed_corner;
    if (name == "perturbed_line") return CurveFamily::perturbed_line;
    throw std::invalid_argument("unknown curve family: " + name);
}

double smooth_step(double u)
{
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double f = std::exp(-1.0 / u), g = std::exp(-1.0 / (1.0 - u));
    return f / (f + g);
}

double CurveSpec::angle_minus() const
{
    return family == CurveFamily::smoothed_corner ? pi - omega : 0.0;
}

double CurveSpec::angle_plus() const
{
    return family == CurveFamily::smoothed_corner ? omega : 0.0;
}

double CurveSpec::tangent_angle(double s) const
{
    const double m = width;
    switch (family) {
    case CurveFamily::straight_line: return 0.0;
    case CurveFamily::smoothed_corner:
        return angle_minus() + (angle_plus() - angle_minus()) * smooth_step((s + m) / (2.0 * m));
    case CurveFamily::perturbed_line: return amplitude * bump_profile(s / m) / bump_peak();
    }
    return 0.0;
}

Vec2 CurveSpec::raw_point(double s) const
{
    const double m = width;
    if (family == CurveFamily::straight_line) return Vec2(s, 0.0);
    if (!built) throw std::logic_error("CurveSpec: build_curve has not been called");
    if (s >= m) {
        const double a = angle_plus();
        return knot_p.back() + (s - m) * Vec2(std::cos(a), std::sin(a));
    }
    if (s <= -m) {
        const double a = angle_minus();
        return knot_p.front() + (s + m) * Vec2(std::cos(a), std::sin(a));
    }
    const double h = knot_s[1] - knot_s[0];
    int k = static_cast<int>(std::floor((s + m) / h + 0.5));
    k = std::clamp(k, 0, static_cast<int>(knot_s.size()) - 1);
    if (s == knot_s[k]) return knot_p[k];
    return knot_p[k] + integrate_direction(*this, knot_s[k], s);
}

Vec2 CurveSpec::point(double s) const { return base_point + raw_point(s); }

Vec2 CurveSpec::tangent(double s) const
{
    const double psi = tangent_angle(s);
    return Vec2(std::cos(psi), std::sin(psi));
}

Vec2 CurveSpec::normal(double s) const
{
    const Vec2 t = tangent(s);
    return Vec2(t.y(), -t.x());
}

CurveSpec straight_line(double width)
{
    CurveSpec c;
    c.family = CurveFamily::straight_line;
    c.width = width;
    return c;
}

CurveSpec smoothed_corner(double omega, double width)
{
    CurveSpec c;
    c.family = CurveFamily::smoothed_corner;
    c.omega = omega;
    c.width = width;
    return c;
}

CurveSpec perturbed_line(double amplitude, double width)
{
    CurveSpec c;
    c.family = CurveFamily::perturbed_line;
    c.amplitude = amplitude;
    c.width = width;
    return c;
}

CurveSpec build_curve(CurveSpec c)
{
    if (!(c.width > 0.0)) throw std::invalid_argument("build_curve: transition width must be positive");
    if (c.family == CurveFamily::smoothed_corner && !(c.omega > 0.0 && c.omega < pi / 2))
        throw std::invalid_argument("build_curve: omega must lie in (0, pi/2)");
    if (c.family == CurveFamily::perturbed_line && !(std::fabs(c.amplitude) < pi / 2))
        throw std::invalid_argument("build_curve: bump amplitude must be below pi/2");

    const Vec2 em(std::cos(c.angle_minus()), std::sin(c.angle_minus()));
    const Vec2 ep(std::cos(c.angle_plus()), std::sin(c.angle_plus()));
    if ((em + ep).norm() <= 1e-12) throw std::invalid_argument("build_curve: antiparallel ends");

    const double m = c.width;
    const int nk = 2 * knots_per_side + 1;
    c.knot_s.resize(nk);
    c.knot_p.assign(nk, Vec2::Zero());
    for (int k = 0; k < nk; ++k) c.knot_s[k] = -m + m * k / knots_per_side;
    c.knot_s[knots_per_side] = 0.0;
    for (int k = knots_per_side + 1; k < nk; ++k)
        c.knot_p[k] = c.knot_p[k - 1] + integrate_direction(c, c.knot_s[k - 1], c.knot_s[k]);
    for (int k = knots_per_side - 1; k >= 0; --k)
        c.knot_p[k] = c.knot_p[k + 1] - integrate_direction(c, c.knot_s[k], c.knot_s[k + 1]);
    c.built = true;

    switch (c.family) {
    case CurveFamily::straight_line: c.base_point = Vec2::Zero(); break;
    case CurveFamily::smoothed_corner: {
        // move the apex of the asymptote lines to the origin
        const Vec2 pm = c.knot_p.back();
        c.base_point = Vec2(pm.y() / std::tan(c.omega) - pm.x(), 0.0);
        break;
    }
    case CurveFamily::perturbed_line: c.base_point = Vec2(0.0, -c.knot_p.back().y()); break;
    }

    // bi-Lipschitz estimate on a dense grid
    const double r = 20.0 * std::max(m, 1.0);
    const int ng = 801;
    std::vector<Vec2> pts(ng);
    std::vector<double> ss(ng);
    for (int i = 0; i < ng; ++i) {
        ss[i] = -r + 2.0 * r * i / (ng - 1);
        pts[i] = c.point(ss[i]);
    }
    double c1 = 1.0;
    for (int i = 0; i < ng; ++i)
        for (int j = i + 1; j < ng; ++j) c1 = std::min(c1, (pts[i] - pts[j]).norm() / (ss[j] - ss[i]));
    c.bi_lipschitz = c1;
    if (c1 < 1e-6) throw std::invalid_argument("build_curve: injectivity check failed");
    return c;
}

double SampledCurve::max_spacing() const
{
    double h = 0.0;
    for (size_t i = 1; i < nodes.size(); ++i) h = std::max(h, nodes[i].s - nodes[i - 1].s);
    return h;
}

double nodes_per_unit_for(const CurveSpec& spec, double l, int target)
{
    const double m = spec.compact_support_bound();
    return target / (2.0 * (l - m) + 8.0 * m);
}

SampledCurve sample_curve(const CurveSpec& spec_in, double nodes_per_unit, double l, int order)
{
    const CurveSpec spec = spec_in.built || spec_in.family == CurveFamily::straight_line
                               ? spec_in
                               : build_curve(spec_in);
    const double m = spec.compact_support_bound();
    if (!(l > m)) throw std::invalid_argument("sample_curve: truncation half-length must exceed M");
    if (!(nodes_per_unit > 0.0)) throw std::invalid_argument("sample_curve: nodes_per_unit must be positive");
    if (order < 2) throw std::invalid_argument("sample_curve: panel order must be at least 2");

    const double len = order / nodes_per_unit;
    const int n_in = std::max(1, static_cast<int>(std::ceil(2.0 * m / (len / 4.0) - 1e-9)));
    const int n_out = std::max(1, static_cast<int>(std::ceil((l - m) / len - 1e-9)));

    SampledCurve sc;
    sc.spec = spec;
    sc.order = order;
    sc.truncation_halflength = l;
    std::vector<double> breaks;
    for (int k = 0; k <= n_out; ++k) breaks.push_back(-l + (l - m) * k / n_out);
    for (int k = 1; k <= n_in; ++k) breaks.push_back(-m + 2.0 * m * k / n_in);
    for (int k = 1; k <= n_out; ++k) breaks.push_back(m + (l - m) * k / n_out);

    const auto& g = gauss_legendre_cached(order);
    for (size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k], b = breaks[k + 1];
        sc.panels.push_back({a, b, static_cast<int>(sc.nodes.size())});
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int j = 0; j < order; ++j) {
            CurveNode nd;
            nd.s = mid + half * g.nodes[j];
            nd.x = spec.point(nd.s);
            nd.t = spec.tangent(nd.s);
            nd.nu = Vec2(nd.t.y(), -nd.t.x());
            nd.w = half * g.weights[j];
            sc.nodes.push_back(nd);
        }
    }

    double c1 = 1.0;
    const int n = sc.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            c1 = std::min(c1, (sc.nodes[i].x - sc.nodes[j].x).norm() / (sc.nodes[j].s - sc.nodes[i].s));
    sc.bi_lipschitz_estimate = c1;
    return sc;
}

}  // namespace shellspec
