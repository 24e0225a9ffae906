#include "shellspec/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "shellspec/band_structure.hpp"
#include "shellspec/bound_state_certifier.hpp"
#include "shellspec/boundary_integral.hpp"
#include "shellspec/schrodinger_reference.hpp"

namespace shellspec {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

struct Suite {
    std::vector<CheckResult> out;
    void add(const std::string& module, const std::string& name, const std::function<std::pair<bool, double>()>& fn)
    {
        CheckResult r{module, name, false, ""};
        try {
            const auto [ok, v] = fn();
            r.pass = ok;
            r.detail = fmt(v);
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(r);
    }
};

// Smooth Gaussian test functions in the weighted inner product, projected through M.
double compressed_asymmetry(const Eigen::MatrixXcd& m, const SampledCurve& sc, int block)
{
    const int n = sc.size();
    std::vector<Eigen::VectorXcd> cols;
    for (double s0 : {-2.0, 0.0, 2.0})
        for (int comp = 0; comp < block; ++comp) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(block * n);
            for (int i = 0; i < n; ++i) v(block * i + comp) = std::exp(-0.5 * (sc.nodes[i].s - s0) * (sc.nodes[i].s - s0));
            cols.push_back(v);
        }
    Eigen::MatrixXcd q(block * n, cols.size());
    for (size_t k = 0; k < cols.size(); ++k) q.col(k) = cols[k];
    Eigen::VectorXd w(block * n);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < block; ++c) w(block * i + c) = sc.nodes[i].w;
    const Eigen::MatrixXcd g = q.adjoint() * w.asDiagonal() * m * q;
    return (g - g.adjoint()).norm() / g.norm();
}

}  // namespace

std::vector<CheckResult> run_selfcheck(int threads)
{
    Suite s;
    AssemblyOptions ao;
    ao.threads = threads;

    s.add("special_functions", "K0(1), K1(1) reference values", [] {
        const double e = std::max(std::fabs(bessel_k(0, 1.0) - 0.42102443824070834),
                                  std::fabs(bessel_k(1, 1.0) - 0.60190723019723458));
        return std::pair{e < 1e-13, e};
    });
    s.add("special_functions", "K0' = -K1 (finite differences)", [] {
        double worst = 0;
        for (int k = 0; k < 50; ++k) {
            const double x = 0.05 + 0.4 * k, h = 1e-5 * std::max(1.0, x);
            const double d = (bessel_k(0, x + h) - bessel_k(0, x - h)) / (2 * h);
            worst = std::max(worst, std::fabs(d + bessel_k(1, x)) / bessel_k(1, x));
        }
        return std::pair{worst < 1e-6, worst};
    });
    s.add("special_functions", "conjugation symmetry", [] {
        double worst = 0;
        for (int k = 0; k < 20; ++k) {
            const cplx xi(0.3 + 0.7 * k, std::sin(1.3 * k) * (1.0 + 0.5 * k));
            for (int o = 0; o < 2; ++o)
                worst = std::max(worst, std::abs(bessel_k(o, std::conj(xi)) - std::conj(bessel_k(o, xi))) / std::abs(bessel_k(o, xi)));
        }
        return std::pair{worst < 1e-13, worst};
    });
    s.add("special_functions", "sqrt_branch convention", [] {
        const cplx r = sqrt_branch(cplx(-2.0, 0.0));
        const double e = std::abs(r - cplx(0.0, std::sqrt(2.0))) + std::abs(sqrt_branch(4.0) - 2.0);
        return std::pair{e < 1e-15, e};
    });

    s.add("curve_geometry", "corner unit speed and symmetry", [] {
        const CurveSpec c = build_curve(smoothed_corner(pi / 6, 1.0));
        double worst = 0;
        for (int k = 0; k <= 40; ++k) {
            const double t = -4.0 + 0.2 * k;
            worst = std::max(worst, std::fabs(c.tangent(t).norm() - 1.0));
            const Vec2 a = c.point(t), b = c.point(-t);
            worst = std::max(worst, std::fabs(a.x() - b.x()) + std::fabs(a.y() + b.y()));
        }
        return std::pair{worst < 1e-12, worst};
    });
    s.add("curve_geometry", "corner bi-Lipschitz bound", [] {
        const CurveSpec c = build_curve(smoothed_corner(pi / 6, 1.0));
        // the asymptote rays meet at angle 2 omega
        const double bound = 0.5 * std::sin(pi / 6);
        return std::pair{c.bi_lipschitz >= bound, c.bi_lipschitz};
    });

    s.add("dirac_core", "Pauli anticommutation", [] {
        const Mat2 sg[3] = {pauli::s1(), pauli::s2(), pauli::s3()};
        double worst = 0;
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                worst = std::max(worst, (sg[j] * sg[k] + sg[k] * sg[j] - 2.0 * (j == k) * pauli::s0()).norm());
        return std::pair{worst == 0.0, worst};
    });
    s.add("dirac_core", "V* F V identity", [] {
        InteractionParams p;
        p.eta = 0.7;
        p.tau = -0.3;
        p.lambda = 0.4;
        double worst = 0;
        for (int k = 0; k < 16; ++k) {
            const double a = 0.4 * k;
            const Vec2 t(std::cos(a), std::sin(a)), nu(t.y(), -t.x());
            const Mat2 v = v_matrix(t);
            worst = std::max(worst, (v.adjoint() * coupling_matrix(p) * v - interaction_matrix(p, nu)).norm());
        }
        return std::pair{worst < 1e-14, worst};
    });
    s.add("dirac_core", "Green kernel conjugation", [] {
        InteractionParams p;
        double worst = 0;
        for (int k = 0; k < 10; ++k) {
            const cplx z(0.1 * k - 0.4, 0.2 + 0.1 * k);
            const Vec2 x(0.3 + 0.1 * k, -0.2 + 0.05 * k);
            worst = std::max(worst, (green_kernel(std::conj(z), -x, p) - green_kernel(z, x, p).adjoint()).norm());
        }
        return std::pair{worst < 1e-12, worst};
    });

    s.add("band_structure", "gap edge for eta = 1", [] {
        InteractionParams p;
        p.eta = 1.0;
        const auto r = essential_spectrum(p);
        const double e = std::fabs(r.bands.front().hi + 0.6) + std::fabs(r.bands.back().lo - 1.0);
        return std::pair{e < 1e-9, e};
    });
    s.add("band_structure", "transition point at eta = 2c", [] {
        InteractionParams p;
        p.eta = 2.0;
        const auto r = essential_spectrum(p);
        const bool ok = r.isolated_points.size() == 1 && r.isolated_points[0] == 0.0 && r.bands.size() == 2;
        return std::pair{ok, r.isolated_points.empty() ? 1.0 : r.isolated_points[0]};
    });
    s.add("band_structure", "m = 0 gives the whole line", [] {
        InteractionParams p;
        p.mass = 0.0;
        p.tau = -1.0;
        const auto r = essential_spectrum(p);
        const bool ok = r.bands.size() == 1 && std::isinf(r.bands[0].lo) && std::isinf(r.bands[0].hi);
        return std::pair{ok, static_cast<double>(r.bands.size())};
    });

    s.add("boundary_integral", "C_z identity on the line", [ao] {
        InteractionParams p;
        AssemblyOptions o = ao;
        o.tol = 1e-12;
        const CurveSpec line = straight_line(1.0);
        const double L = truncation_halflength(line, p, 0.0, o.tol);
        const SampledCurve sc = sample_curve(line, nodes_per_unit_for(line, L, 400), L);
        const double d = cz_identity_defect(assemble_cz(sc, p, 0.0, o)).compressed;
        return std::pair{d < 5e-2, d};
    });
    s.add("boundary_integral", "weighted self-adjointness at real z", [ao] {
        InteractionParams p;
        const CurveSpec c = build_curve(smoothed_corner(pi / 6, 1.0));
        const double L = truncation_halflength(c, p, 0.3, ao.tol);
        const SampledCurve sc = sample_curve(c, nodes_per_unit_for(c, L, 300), L);
        const double a = compressed_asymmetry(assemble_cz_matrix(sc, p, cplx(0.3, 0.0), ao), sc, 2);
        return std::pair{a < 1e-8, a};
    });

    s.add("schrodinger_reference", "S(z) symmetric and positive", [ao] {
        const CurveSpec c = build_curve(smoothed_corner(pi / 6, 1.0));
        const double L = single_layer_truncation_halflength(c, 1.0, -0.5, ao.tol);
        const SampledCurve sc = sample_curve(c, nodes_per_unit_for(c, L, 300), L);
        const auto a = assemble_single_layer(sc, 1.0, -0.5, ao);
        const double asym = compressed_asymmetry(a.s_matrix.cast<cplx>(), sc, 1);
        const double smin = single_layer_eigenvalues(a).minCoeff();
        return std::pair{asym < 1e-8 && smin > 0.0, asym};
    });

    s.add("bound_state_certifier", "bracket at L = 20, omega = 0.001", [] {
        CertificateInput in;
        const double b = bracket(in);
        return std::pair{b < -7.0 && b > -7.5, b};
    });
    s.add("bound_state_certifier", "omega_star for tau = -1", [] {
        const auto st = find_omega_star(-1.0, 1.0, 1.0, 1);
        const double w = st ? st->omega_star : 0.0;
        return std::pair{w > 2.5e-3 && w < 4e-3, w};
    });
    return s.out;
}

}  // namespace shellspec
