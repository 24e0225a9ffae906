#include "shellspec/schrodinger_reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shellspec/panel_quadrature.hpp"
#include "shellspec/parallel.hpp"
#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {

double kappa_of(double mass, double z) { return std::sqrt(2.0 * mass * std::fabs(z)); }

void check_single_layer(const SampledCurve& sc, double mass, double z, const AssemblyOptions& opt)
{
    if (!(mass > 0.0)) throw std::invalid_argument("single layer: mass must be positive");
    if (!(z < 0.0)) throw std::domain_error("single layer: z must be negative");
    if (!opt.enforce_truncation) return;
    const double k = kappa_of(mass, z);
    if (k * (sc.truncation_halflength - sc.spec.compact_support_bound()) < std::log(1.0 / opt.tol) * (1.0 - 1e-9))
        throw std::domain_error("single layer: curve is under-truncated for this z");
}

Eigen::MatrixXd single_layer_matrix(const SampledCurve& sc, double mass, double z, const AssemblyOptions& opt)
{
    const double k = kappa_of(mass, z);
    const double f = mass / pi;
    const int n = sc.size();
    const int p = sc.order;
    const int np = static_cast<int>(sc.panels.size());
    const auto& g = gauss_legendre_cached(p);

    std::vector<double> fine_u, fine_wu;
    const int os = std::max(opt.oversample, 1);
    for (int q = 0; q < os; ++q) {
        const double a = -1.0 + 2.0 * q / os, b = -1.0 + 2.0 * (q + 1) / os;
        for (int j = 0; j < p; ++j) {
            fine_u.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.nodes[j]);
            fine_wu.push_back(0.5 * (b - a) * g.weights[j]);
        }
    }
    const auto interp = interpolation_matrix(p, fine_u);
    const int nf = static_cast<int>(fine_u.size());
    std::vector<Vec2> center(np);
    std::vector<double> radius(np, 0.0);
    for (int kk = 0; kk < np; ++kk) {
        const Panel& pn = sc.panels[kk];
        center[kk] = sc.spec.point(0.5 * (pn.a + pn.b));
        for (int j = 0; j < p; ++j) radius[kk] = std::max(radius[kk], (sc.nodes[pn.first + j].x - center[kk]).norm());
    }
    auto kernel = [&](double r) {
        const double xi = k * r;
        return xi > 700.0 ? 0.0 : f * bessel_k(0, xi);
    };

    Eigen::MatrixXd s(n, n);
    parallel_for(n, resolve_threads(opt.threads), [&](int i) {
        const CurveNode& ti = sc.nodes[i];
        const int ki = sc.panel_of(i);
        std::vector<double> cw(p), lw(p), acc(p);
        for (int kk = 0; kk < np; ++kk) {
            const Panel& pn = sc.panels[kk];
            const double len = pn.b - pn.a;
            if (std::abs(kk - ki) <= 1) {
                singular_weights(ti.s, pn.a, pn.b, p, cw.data(), lw.data());
                for (int jj = 0; jj < p; ++jj) {
                    const int j = pn.first + jj;
                    const CurveNode& tj = sc.nodes[j];
                    double b, c;
                    if (j == i) {
                        b = -f;
                        c = f * (std::log(2.0) - euler_gamma - std::log(k));
                    } else {
                        const double r = (ti.x - tj.x).norm();
                        double i0, i1;
                        bessel_i01(k * r, i0, i1);
                        b = -f * i0;
                        c = kernel(r) - b * std::log(std::fabs(ti.s - tj.s));
                    }
                    s(i, j) = lw[jj] * b + tj.w * c;
                }
                continue;
            }
            if ((ti.x - center[kk]).norm() - radius[kk] < 0.5 * len) {
                std::fill(acc.begin(), acc.end(), 0.0);
                const double half = 0.5 * len, mid = 0.5 * (pn.a + pn.b);
                for (int q = 0; q < nf; ++q) {
                    const double v = kernel((ti.x - sc.spec.point(mid + half * fine_u[q])).norm()) * half * fine_wu[q];
                    for (int jj = 0; jj < p; ++jj) acc[jj] += interp[q * p + jj] * v;
                }
                for (int jj = 0; jj < p; ++jj) s(i, pn.first + jj) = acc[jj];
                continue;
            }
            for (int jj = 0; jj < p; ++jj) {
                const int j = pn.first + jj;
                s(i, j) = kernel((ti.x - sc.nodes[j].x).norm()) * sc.nodes[j].w;
            }
        }
    });
    return s;
}

// Regula falsi with the Illinois modification; fa and fb must differ in sign.
template <class F>
double illinois(F&& fn, double a, double b, double fa, double fb, double xtol, int maxit = 200)
{
    int side = 0;
    double c = a;
    for (int it = 0; it < maxit && std::fabs(b - a) > xtol; ++it) {
        c = (a * fb - b * fa) / (fb - fa);
        if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
        const double fc = fn(c);
        if (fc == 0.0) return c;
        if (fc * fb < 0.0) {
            a = b;
            fa = fb;
            side = 0;
        } else {
            if (side == -1) fa *= 0.5;
            side = -1;
        }
        b = c;
        fb = fc;
    }
    return std::fabs(fa) < std::fabs(fb) ? a : b;
}

}  // namespace

ProjectionPair projection_pair()
{
    ProjectionPair pp;
    pp.e = Eigen::Vector2d(1.0, 0.0);
    pp.p_plus = pp.e * pp.e.transpose();
    return pp;
}

double single_layer_truncation_halflength(const CurveSpec& spec, double mass, double z, double tol)
{
    if (!(mass > 0.0) || !(z < 0.0)) throw std::domain_error("single_layer_truncation_halflength: need m > 0, z < 0");
    return spec.compact_support_bound() + std::log(1.0 / tol) / kappa_of(mass, z);
}

SingleLayerAssembly assemble_single_layer(const SampledCurve& sc, double mass, double z, const AssemblyOptions& opt)
{
    check_single_layer(sc, mass, z, opt);
    SingleLayerAssembly a;
    a.curve = sc;
    a.mass = mass;
    a.energy = z;
    a.s_matrix = single_layer_matrix(sc, mass, z, opt);
    return a;
}

Eigen::MatrixXd symmetrized_single_layer(const SingleLayerAssembly& a)
{
    const int n = a.curve.size();
    Eigen::VectorXd sw(n);
    for (int i = 0; i < n; ++i) sw(i) = std::sqrt(a.curve.nodes[i].w);
    const Eigen::MatrixXd m = sw.asDiagonal() * a.s_matrix * sw.cwiseInverse().asDiagonal();
    return 0.5 * (m + m.transpose());
}

Eigen::VectorXd single_layer_eigenvalues(const SingleLayerAssembly& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized_single_layer(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

std::vector<SchrodingerEigenvalue> schrodinger_eigenvalues(const SampledCurve& sc, double mass, double eta,
                                                           Interval window, const SchrodingerOptions& opt)
{
    if (eta == 0.0) throw std::invalid_argument("schrodinger_eigenvalues: eta must be nonzero");
    if (!(window.hi > window.lo)) throw std::invalid_argument("schrodinger_eigenvalues: empty window");
    if (!(window.hi < 0.0)) throw std::domain_error("schrodinger_eigenvalues: window must lie below 0");
    if (opt.steps < 2) throw std::invalid_argument("schrodinger_eigenvalues: need at least 2 scan points");
    std::vector<SchrodingerEigenvalue> out;
    // S(z) is positive, so I + eta S(z) is invertible for eta > 0
    if (eta > 0.0) return out;
    const double level = 1.0 / std::fabs(eta);
    auto spectrum = [&](double z) { return single_layer_eigenvalues(assemble_single_layer(sc, mass, z, opt.assembly)); };
    auto count = [&](const Eigen::VectorXd& ev) {
        int c = 0;
        while (c < ev.size() && ev(c) > level) ++c;
        return c;
    };

    const int ns = opt.steps;
    std::vector<double> zs(ns);
    std::vector<Eigen::VectorXd> ev(ns);
    for (int k = 0; k < ns; ++k) zs[k] = window.lo + (window.hi - window.lo) * k / (ns - 1);
    for (int k = 0; k < ns; ++k) ev[k] = spectrum(zs[k]);

    for (int k = 0; k + 1 < ns; ++k) {
        const int c0 = count(ev[k]), c1 = count(ev[k + 1]);
        // branch j crosses the level between zs[k] and zs[k+1]
        for (int j = c0; j < c1; ++j) {
            auto g = [&](double z) { return spectrum(z)(j) - level; };
            const double r = illinois(g, zs[k], zs[k + 1], ev[k](j) - level, ev[k + 1](j) - level, opt.z_tol);
            const Eigen::VectorXd e = spectrum(r);
            double res = 1e300;
            for (int q = 0; q < e.size(); ++q) res = std::min(res, std::fabs(1.0 + eta * e(q)));
            out.push_back({r, res});
            if (opt.max_roots > 0 && static_cast<int>(out.size()) >= opt.max_roots) return out;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.z < b.z; });
    return out;
}

KernelLimitDeviation kernel_limit_deviation(const SampledCurve& sc, double mass, double z, double c,
                                            const AssemblyOptions& opt)
{
    if (!(mass > 0.0)) throw std::invalid_argument("kernel_limit_deviation: mass must be positive");
    if (!(z < 0.0)) throw std::domain_error("kernel_limit_deviation: z must be negative");
    if (!(c > std::sqrt(std::fabs(z) / mass))) throw std::domain_error("kernel_limit_deviation: c below threshold");
    InteractionParams prm;
    prm.mass = mass;
    prm.c = c;
    const double zd = z + mass * c * c;
    const int n = sc.size();
    const Eigen::MatrixXd s = single_layer_matrix(sc, mass, z, opt);
    const Eigen::MatrixXcd cz = assemble_cz_matrix(sc, prm, cplx(zd, 0.0), opt);

    KernelLimitDeviation out;
    Eigen::VectorXd sw(n);
    for (int i = 0; i < n; ++i) sw(i) = std::sqrt(sc.nodes[i].w);
    Eigen::MatrixXcd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx v = cz(2 * i, 2 * j) - s(i, j);
            d(i, j) = sw(i) * v / sw(j);
            if (std::abs(sc.panel_of(i) - sc.panel_of(j)) > 1)
                out.cz_max_entry = std::max(out.cz_max_entry, std::abs(v) / sc.nodes[j].w);
        }
    out.cz_deviation = Eigen::BDCSVD<Eigen::MatrixXcd>(d).singularValues()(0);

    // probe box around the bend, cell-centred points at least one mesh width off the curve
    const double box = 4.0, h = 0.25;
    const int nb = static_cast<int>(2.0 * box / h);
    std::vector<Vec2> probes;
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
            const Vec2 x(-box + (a + 0.5) * h, -box + (b + 0.5) * h);
            double dmin = 1e300;
            for (const auto& nd : sc.nodes) dmin = std::min(dmin, (x - nd.x).norm());
            if (dmin >= h) probes.push_back(x);
        }
    const int npr = static_cast<int>(probes.size());
    const double kap = kappa_of(mass, z);
    Eigen::MatrixXcd kp(2 * npr, n), ka(n, 2 * npr);
    for (int q = 0; q < npr; ++q)
        for (int j = 0; j < n; ++j) {
            const Vec2 x = probes[q] - sc.nodes[j].x;
            const double sl = mass / pi * bessel_k(0, kap * x.norm());
            const Mat2 g = green_kernel(cplx(zd, 0.0), x, prm);
            // Phi e - SL e: first column of G minus (SL, 0)
            kp(2 * q, j) = (g(0, 0) - sl) * h * sw(j);
            kp(2 * q + 1, j) = g(1, 0) * h * sw(j);
            // e^T Phi^*: first row of G(y - x)^*
            const Mat2 ga = green_kernel(cplx(zd, 0.0), -x, prm).adjoint();
            ka(j, 2 * q) = (ga(0, 0) - sl) * h * sw(j);
            ka(j, 2 * q + 1) = ga(0, 1) * h * sw(j);
        }
    out.phi_deviation = Eigen::BDCSVD<Eigen::MatrixXcd>(kp).singularValues()(0);
    out.phi_adjoint_deviation = Eigen::BDCSVD<Eigen::MatrixXcd>(ka).singularValues()(0);
    return out;
}

NonrelFit nonrel_limit_experiment(const CurveSpec& spec_in, double mass, double eta, const std::vector<double>& c_grid,
                                  const NonrelOptions& opt)
{
    if (!(eta < 0.0)) throw std::invalid_argument("nonrel_limit_experiment: eta must be negative");
    if (!(mass > 0.0)) throw std::invalid_argument("nonrel_limit_experiment: mass must be positive");
    if (spec_in.family == CurveFamily::straight_line)
        throw std::invalid_argument("nonrel_limit_experiment: the straight line has no bound state to compare");
    if (c_grid.size() < 2) throw std::invalid_argument("nonrel_limit_experiment: need at least two values of c");
    for (size_t k = 0; k < c_grid.size(); ++k)
        if (!(c_grid[k] > 0.0) || (k > 0 && !(c_grid[k] > c_grid[k - 1])))
            throw std::invalid_argument("nonrel_limit_experiment: c_grid must be positive and increasing");
    const CurveSpec spec = spec_in.built ? spec_in : build_curve(spec_in);

    const double threshold = -0.5 * mass * eta * eta;
    const double tol = opt.assembly.tol;
    const double hi = threshold * (1.0 - 1e-3);
    double l = single_layer_truncation_halflength(spec, mass, hi, tol);
    // the Dirac window top at the smallest c
    const double c0 = c_grid.front();
    const double e_top = threshold * (1.0 - 1e-3) + opt.dirac_window;
    InteractionParams p0;
    p0.mass = mass;
    p0.c = c0;
    if (!(e_top < 0.0) || !(std::fabs(mass * c0 * c0 + e_top) < mass * c0 * c0))
        throw std::domain_error("nonrel_limit_experiment: Dirac window leaves the gap");
    l = std::max(l, truncation_halflength(spec, p0, mass * c0 * c0 + e_top, tol)) + 1.0;
    const double npu = opt.nodes_per_unit > 0.0 ? opt.nodes_per_unit : nodes_per_unit_for(spec, l, 600);
    const SampledCurve sc = sample_curve(spec, npu, l);

    SchrodingerOptions so;
    so.assembly = opt.assembly;
    so.max_roots = 1;
    const auto roots = schrodinger_eigenvalues(sc, mass, eta, {5.0 * threshold, hi}, so);
    if (roots.empty()) throw std::runtime_error("nonrel_limit_experiment: no Schrodinger eigenvalue found");
    NonrelFit fit;
    fit.schrodinger = roots.front().z;

    for (double c : c_grid) {
        if (!(c > std::sqrt(std::fabs(fit.schrodinger) / mass)))
            throw std::domain_error("nonrel_limit_experiment: c below threshold");
        InteractionParams p;
        p.eta = 0.5 * eta;
        p.tau = 0.5 * eta;
        p.mass = mass;
        p.c = c;
        const double mc2 = mass * c * c;
        const double target = mc2 + fit.schrodinger;
        ScanOptions sopt;
        sopt.steps = opt.dirac_scan_steps;
        sopt.assembly = opt.assembly;
        const double top = std::min(target + opt.dirac_window, mc2 + hi);
        const auto scan = bs_eigenvalue_scan(sc, p, {target - opt.dirac_window, top}, sopt);
        if (scan.eigenvalues.empty())
            throw std::runtime_error("nonrel_limit_experiment: no Dirac eigenvalue near the Schrodinger one");
        double best = scan.eigenvalues.front().z;
        for (const auto& e : scan.eigenvalues)
            if (std::fabs(e.z - target) < std::fabs(best - target)) best = e.z;
        fit.c.push_back(c);
        fit.dirac_shifted.push_back(best - mc2);
        fit.err.push_back(std::fabs(best - mc2 - fit.schrodinger));
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double nn = static_cast<double>(fit.c.size());
    for (size_t k = 0; k < fit.c.size(); ++k) {
        const double x = std::log(fit.c[k]), y = std::log(fit.err[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    fit.monotone = true;
    for (size_t k = 1; k < fit.err.size(); ++k)
        if (!(fit.err[k] < fit.err[k - 1])) fit.monotone = false;
    return fit;
}

}  // namespace shellspec
