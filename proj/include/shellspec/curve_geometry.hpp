#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace shellspec {

using Vec2 = Eigen::Vector2d;

enum class CurveFamily { straight_line, smoothed_corner, perturbed_line };

std::string family_name(CurveFamily f);
CurveFamily family_from_name(const std::string& name);

// Unit-speed curve gamma(s) = base_point + int_0^s (cos psi, sin psi),
// with psi constant outside [-M, M].
class CurveSpec {
public:
    CurveFamily family = CurveFamily::straight_line;
    double omega = 0.0;      // half opening angle (smoothed_corner)
    double width = 1.0;      // transition half-length, equals M
    double amplitude = 0.0;  // peak tangent deflection in radians (perturbed_line)
    Vec2 base_point = Vec2::Zero();
    double bi_lipschitz = 0.0;  // C1 estimate, filled by build_curve

    double compact_support_bound() const { return width; }
    double tangent_angle(double s) const;
    double angle_minus() const;  // psi on (-inf, -M]
    double angle_plus() const;   // psi on [M, inf)

    Vec2 point(double s) const;
    Vec2 tangent(double s) const;
    Vec2 normal(double s) const;  // (t2, -t1)

    // Internal: cumulative positions at breakpoints in [-M, M] (relative to base).
    std::vector<double> knot_s;
    std::vector<Vec2> knot_p;
    bool built = false;

private:
    Vec2 raw_point(double s) const;
};

CurveSpec straight_line(double width = 1.0);
CurveSpec smoothed_corner(double omega, double width);
CurveSpec perturbed_line(double amplitude, double width);

// Validates the admissibility conditions, computes the translation and the C1 estimate.
CurveSpec build_curve(CurveSpec spec);

// Smooth step: 0 for u <= 0, 1 for u >= 1, C-infinity.
double smooth_step(double u);

struct CurveNode {
    double s;
    Vec2 x;
    Vec2 t;
    Vec2 nu;
    double w;
};

struct Panel {
    double a, b;  // parameter interval
    int first;    // index of first node
};

struct SampledCurve {
    CurveSpec spec;
    std::vector<CurveNode> nodes;
    std::vector<Panel> panels;
    int order = 16;
    double truncation_halflength = 0.0;
    double bi_lipschitz_estimate = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
    int panel_of(int i) const { return i / order; }
    double panel_length(int k) const { return panels[k].b - panels[k].a; }
    double max_spacing() const;
};

constexpr int default_panel_order = 16;

// Gauss-Legendre panels of length order/nodes_per_unit outside [-M, M]
// and a quarter of that inside.
SampledCurve sample_curve(const CurveSpec& spec, double nodes_per_unit, double truncation_halflength,
                          int order = default_panel_order);

// nodes_per_unit giving roughly `target` nodes for the given truncation.
double nodes_per_unit_for(const CurveSpec& spec, double truncation_halflength, int target);

}  // namespace shellspec
