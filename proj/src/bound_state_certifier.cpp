#include "shellspec/bound_state_certifier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "shellspec/band_structure.hpp"

namespace shellspec {

namespace {

constexpr double guard_tol = 1e-12;

void check_common(double tau, double mass, double c, int n)
{
    if (!(c > 0.0)) throw std::invalid_argument("certificate: c must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("certificate: m must be positive");
    if (!(tau < 0.0)) throw std::invalid_argument("certificate: tau must be negative");
    if (std::fabs(4.0 * c * c - tau * tau) <= guard_tol * (4.0 * c * c + tau * tau))
        throw std::invalid_argument("certificate: tau = -2c is excluded");
    if (n < 1) throw std::invalid_argument("certificate: N must be at least 1");
}

// first term divided by tan(omega)
double first_coefficient(double tau, double mass, double c, int n, double L)
{
    const double c2 = c * c, t2 = tau * tau;
    const double sum = 4.0 * c2 + t2, diff = 4.0 * c2 - t2;
    const double n2pi2 = n * n * pi * pi;
    return (3.0 + (sum * sum + 16.0 * c2 * t2) / (diff * diff)) * (2.0 * n2pi2 + mass * mass * c2 * L * L);
}

double second_plus_third(double tau, double mass, double c, int n, double L)
{
    CertificateInput in;
    in.tau = tau;
    in.mass = mass;
    in.c = c;
    in.n = n;
    in.L = L;
    in.omega = 0.0;
    const BracketTerms t = bracket_terms(in);
    return t.second + t.third;
}

double omega_at(double tau, double mass, double c, int n, double L)
{
    const double s = second_plus_third(tau, mass, c, n, L);
    if (!(s < 0.0)) return 0.0;
    return std::atan(-s / first_coefficient(tau, mass, c, n, L));
}

}  // namespace

void CertificateInput::validate() const
{
    check_common(tau, mass, c, n);
    if (!(L > 0.0)) throw std::invalid_argument("certificate: L must be positive");
    if (!(omega > 0.0 && omega < pi / 2)) throw std::invalid_argument("certificate: omega must lie in (0, pi/2)");
}

double CertificateInput::r() const { return L * std::tan(omega); }

double CertificateInput::decay_rate() const { return -4.0 * mass * c * c * tau / (4.0 * c * c + tau * tau); }

BracketTerms bracket_terms(const CertificateInput& in)
{
    check_common(in.tau, in.mass, in.c, in.n);
    const double c2 = in.c * in.c, t2 = in.tau * in.tau;
    const double sum = 4.0 * c2 + t2, diff = 4.0 * c2 - t2;
    const double n2pi2 = in.n * in.n * pi * pi;
    BracketTerms t;
    t.first = std::tan(in.omega) * first_coefficient(in.tau, in.mass, in.c, in.n, in.L);
    t.second = 4.0 * in.mass * c2 * in.L * in.tau / sum;
    t.third = -n2pi2 * (sum * sum + 16.0 * t2 * c2) * sum / (2.0 * in.mass * c2 * in.L * in.tau * diff * diff);
    return t;
}

double bracket(const CertificateInput& in)
{
    in.validate();
    return bracket_terms(in).value();
}

double essential_gap_edge(double tau, double mass, double c)
{
    const double c2 = c * c;
    return std::fabs(mass) * c2 * std::fabs(4.0 * c2 - tau * tau) / (4.0 * c2 + tau * tau);
}

std::optional<OmegaStar> find_omega_star(double tau, double mass, double c, int n, double l_min)
{
    check_common(tau, mass, c, n);
    const double lo = l_min + 1.0, hi = 1e4;
    if (!(lo < hi)) throw std::invalid_argument("find_omega_star: l_min too large");
    constexpr int grid = 40;
    int best = -1;
    double best_w = 0.0;
    std::vector<double> ls(grid);
    for (int k = 0; k < grid; ++k) {
        ls[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (grid - 1));
        const double w = omega_at(tau, mass, c, n, ls[k]);
        if (w > best_w) {
            best_w = w;
            best = k;
        }
    }
    if (best < 0) return std::nullopt;
    // golden-section refinement of omega*(L) in log L between the grid neighbours
    double a = std::log(ls[std::max(best - 1, 0)]), b = std::log(ls[std::min(best + 1, grid - 1)]);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double x) { return omega_at(tau, mass, c, n, std::exp(x)); };
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    OmegaStar out;
    out.L = std::exp(0.5 * (a + b));
    out.omega_star = omega_at(tau, mass, c, n, out.L);
    if (out.omega_star < best_w) {
        out.L = ls[best];
        out.omega_star = best_w;
    }
    out.bracket = second_plus_third(tau, mass, c, n, out.L);
    return out;
}

double certificate_l0(const CurveSpec& corner)
{
    const CurveSpec s = corner.built ? corner : build_curve(corner);
    const double m = s.compact_support_bound();
    return std::max(s.point(m).x(), s.point(-m).x()) + 1.0;
}

CertificateResult certify(const CertificateInput& in, double l_min)
{
    in.validate();
    CertificateResult r;
    r.terms = bracket_terms(in);
    r.bracket_value = r.terms.value();
    r.certified = r.bracket_value < 0.0;
    r.essential_gap_edge = essential_gap_edge(in.tau, in.mass, in.c);
    r.suggested = find_omega_star(in.tau, in.mass, in.c, in.n, l_min);
    return r;
}

CrossValidation cross_validate(const CertificateInput& in, const CurveSpec& corner_in, const CrossValidateOptions& opt)
{
    in.validate();
    if (corner_in.family != CurveFamily::smoothed_corner)
        throw std::invalid_argument("cross_validate: a smoothed corner is required");
    const CurveSpec corner = corner_in.built ? corner_in : build_curve(corner_in);
    CrossValidation out;
    out.gap_edge = essential_gap_edge(in.tau, in.mass, in.c);
    out.certified = bracket(in) < 0.0;
    out.omega_matches = std::fabs(corner.omega - in.omega) <= 1e-12 * std::max(1.0, in.omega);

    InteractionParams p;
    p.tau = in.tau;
    p.mass = in.mass;
    p.c = in.c;
    const double zmax = opt.window_fraction * out.gap_edge;
    const double L = truncation_halflength(corner, p, zmax, opt.scan.assembly.tol);
    const SampledCurve sc = sample_curve(corner, nodes_per_unit_for(corner, L, opt.nodes), L);
    const EigenScanResult res = bs_eigenvalue_scan(sc, p, {-zmax, zmax}, opt.scan);
    out.eigenvalues = res.eigenvalues;
    out.found = static_cast<int>(res.eigenvalues.size());
    out.meets_n = out.found >= in.n;

    std::ostringstream note;
    if (!out.omega_matches) note << "scan corner angle " << corner.omega << " differs from certificate angle " << in.omega << "; ";
    if (out.certified && !out.meets_n)
        note << "certificate predicts " << in.n << " eigenvalue(s) but the scan found " << out.found;
    else if (!out.certified)
        note << "not certified; scan found " << out.found << " eigenvalue(s)";
    else
        note << "scan found " << out.found << " eigenvalue(s), consistent with the certificate";
    out.note = note.str();
    return out;
}

}  // namespace shellspec
