#pragma once

// Independent reference implementations used by the unit and acceptance tests.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "shellspec/band_structure.hpp"
#include "shellspec/boundary_integral.hpp"
#include "shellspec/quadrature.hpp"

namespace oracle {

using shellspec::cplx;
using shellspec::Interval;

// K_nu(xi) = int_0^inf exp(-xi cosh t) cosh(nu t) dt, Re xi > 0.
inline cplx bessel_k_integral(int nu, cplx xi)
{
    const double re = xi.real();
    // the integrand is below e^-45 relative to its value at t = 0 beyond T
    const double T = std::acosh(1.0 + 45.0 / re);
    const auto& g = shellspec::gauss_legendre_cached(20);
    const int panels = 400 + static_cast<int>(8.0 * T * (1.0 + std::fabs(xi.imag()) * std::sinh(T) / 20.0));
    const double h = T / panels;
    cplx sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double mid = (k + 0.5) * h;
        for (size_t j = 0; j < g.nodes.size(); ++j) {
            const double t = mid + 0.5 * h * g.nodes[j];
            sum += 0.5 * h * g.weights[j] * std::exp(-xi * std::cosh(t)) * std::cosh(nu * t);
        }
    }
    return sum;
}

inline double inf() { return std::numeric_limits<double>::infinity(); }

// Closed-form essential spectra of the three one-parameter families.
inline std::vector<Interval> electrostatic_bands(double eta, double m, double c)
{
    const double mc2 = std::fabs(m) * c * c, e2 = eta * eta, c4 = 4.0 * c * c;
    if (eta == 0.0 || std::fabs(eta) == 2.0 * c) return {{-inf(), -mc2}, {mc2, inf()}};
    if (eta < -2.0 * c) return {{-inf(), (c4 - e2) / (c4 + e2) * mc2}, {mc2, inf()}};
    if (eta < 0.0) return {{-inf(), -mc2}, {(c4 - e2) / (c4 + e2) * mc2, inf()}};
    if (eta < 2.0 * c) return {{-inf(), (e2 - c4) / (e2 + c4) * mc2}, {mc2, inf()}};
    return {{-inf(), -mc2}, {(e2 - c4) / (e2 + c4) * mc2, inf()}};
}

inline std::vector<Interval> scalar_bands(double tau, double m, double c)
{
    const double mc2 = std::fabs(m) * c * c;
    if (tau * m >= 0.0) return {{-inf(), -mc2}, {mc2, inf()}};
    const double t2 = tau * tau, c4 = 4.0 * c * c;
    const double e = std::fabs(c4 - t2) / (c4 + t2) * mc2;
    return {{-inf(), -e}, {e, inf()}};
}

inline std::vector<Interval> magnetic_bands(double m, double c)
{
    const double mc2 = std::fabs(m) * c * c;
    return {{-inf(), -mc2}, {mc2, inf()}};
}

inline double band_distance(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    if (a.size() != b.size()) return inf();
    double worst = 0.0;
    auto d = [](double x, double y) { return (std::isinf(x) || std::isinf(y)) ? (x == y ? 0.0 : inf()) : std::fabs(x - y); };
    for (size_t i = 0; i < a.size(); ++i) worst = std::max({worst, d(a[i].lo, b[i].lo), d(a[i].hi, b[i].hi)});
    return worst;
}

// Smooth Gaussian test functions, projected through m in the weighted inner product.
// Returns the relative size of the anti-Hermitian part of the compressed matrix.
inline double compressed_asymmetry(const Eigen::MatrixXcd& m, const shellspec::SampledCurve& sc, int block)
{
    const int n = sc.size();
    std::vector<Eigen::VectorXcd> cols;
    for (double s0 : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (int comp = 0; comp < block; ++comp) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(block * n);
            for (int i = 0; i < n; ++i) v(block * i + comp) = std::exp(-0.5 * (sc.nodes[i].s - s0) * (sc.nodes[i].s - s0));
            cols.push_back(v);
        }
    Eigen::MatrixXcd q(block * n, static_cast<Eigen::Index>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k) q.col(static_cast<Eigen::Index>(k)) = cols[k];
    Eigen::VectorXd w(block * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < block; ++c) w(block * i + c) = sc.nodes[i].w;
    const Eigen::MatrixXcd g = q.adjoint() * w.asDiagonal() * m * q;
    return (g - g.adjoint()).norm() / g.norm();
}

struct JumpError {
    double worst = 0.0;
    int points = 0;
};

// Extrapolated one-sided traces of Phi_z phi at `count` interior nodes against the jump relation.
inline JumpError jump_relation_error(const shellspec::SampledCurve& sc, const shellspec::InteractionParams& p, double z,
                                     int count)
{
    using namespace shellspec;
    const auto a = assemble_cz(sc, p, z);
    const int n = sc.size();
    Eigen::VectorXcd phi(2 * n);
    for (int i = 0; i < n; ++i) {
        const double s = sc.nodes[i].s, g = std::exp(-0.5 * s * s);
        phi(2 * i) = g;
        phi(2 * i + 1) = cplx(0.5, 0.25) * g * s;
    }
    const Eigen::VectorXcd cphi = a.cz_matrix * phi;
    const cplx I(0.0, 1.0);
    JumpError out;
    for (int q = 0; q < count; ++q) {
        const double st = -3.0 + 6.0 * q / (count - 1);
        int i = 0;
        for (int j = 0; j < n; ++j)
            if (std::fabs(sc.nodes[j].s - st) < std::fabs(sc.nodes[i].s - st)) i = j;
        const auto& nd = sc.nodes[i];
        const double h = sc.panel_length(sc.panel_of(i)) / sc.order;
        for (int side : {+1, -1}) {
            Eigen::Vector2cd f[3];
            const double e[3] = {h, 2 * h, 4 * h};
            for (int k = 0; k < 3; ++k) f[k] = evaluate_potential(sc, p, z, phi, nd.x - side * e[k] * nd.nu);
            const Eigen::Vector2cd ex = 8.0 / 3.0 * f[0] - 2.0 * f[1] + 1.0 / 3.0 * f[2];
            const Eigen::Vector2cd want =
                -double(side) * (I / (2 * p.c)) * (sigma_dot(nd.nu) * phi.segment<2>(2 * i)) + cphi.segment<2>(2 * i);
            out.worst = std::max(out.worst, (ex - want).norm() / want.norm());
            ++out.points;
        }
    }
    return out;
}

}  // namespace oracle
