#include "shellspec/boundary_integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shellspec/panel_quadrature.hpp"
#include "shellspec/parallel.hpp"
#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {

const cplx I(0.0, 1.0);

// Kernel data shared by all entries at one spectral point.
struct KernelContext {
    InteractionParams p;
    cplx z;
    cplx ze;
    bool real = false;
    double zr = 0.0;
    double f = 0.0;
    cplx m11, m22;  // diagonal of (z/c) s0 + mc s3

    KernelContext(const InteractionParams& prm, cplx zz) : p(prm), z(zz)
    {
        ze = zeta(z, p);
        real = z.imag() == 0.0;
        zr = ze.real();
        f = 1.0 / (2.0 * pi * p.c);
        m11 = z / p.c + p.mass * p.c;
        m22 = z / p.c - p.mass * p.c;
    }

    // G(x) written as a 2x2 block
    void green(const Vec2& x, Mat2& g) const
    {
        const double r = x.norm();
        cplx k0, k1;
        if (real) {
            const double xi = zr * r;
            if (xi > 700.0) {
                g.setZero();
                return;
            }
            double a, b;
            bessel_k01(xi, a, b);
            k0 = a;
            k1 = b;
        } else {
            bessel_k01(ze * r, k0, k1);
        }
        const cplx c1 = f * I * ze * k1 / r;
        g(0, 0) = f * k0 * m11;
        g(1, 1) = f * k0 * m22;
        g(0, 1) = c1 * cplx(x.x(), -x.y());
        g(1, 0) = c1 * cplx(x.x(), x.y());
    }

    // Cauchy coefficient A, log coefficient B and smooth remainder C for distinct s, t.
    void split(const Vec2& x, double h, Mat2& a, Mat2& b, Mat2& c) const
    {
        const double r = x.norm();
        green(x, c);
        const Mat2 sx = sigma_dot(x);
        a = (I * f * h / (r * r)) * sx;
        cplx i0, i1;
        if (real) {
            double u, v;
            bessel_i01(zr * r, u, v);
            i0 = u;
            i1 = v;
        } else {
            bessel_i01(ze * r, i0, i1);
        }
        b = (f * I * ze * i1 / r) * sx;
        b(0, 0) -= f * i0 * m11;
        b(1, 1) -= f * i0 * m22;
        c -= a / h + b * std::log(std::fabs(h));
    }

    void split_diagonal(const Vec2& t, Mat2& a, Mat2& b, Mat2& c) const
    {
        a = (I * f) * sigma_dot(t);
        b.setZero();
        b(0, 0) = -f * m11;
        b(1, 1) = -f * m22;
        const cplx l = std::log(2.0) - euler_gamma - std::log(ze);
        c.setZero();
        c(0, 0) = f * m11 * l;
        c(1, 1) = f * m22 * l;
    }
};

struct PanelGeometry {
    Vec2 center;
    double radius;
    std::vector<Vec2> fine_x;
    std::vector<double> fine_w;
};

std::vector<PanelGeometry> panel_geometry(const SampledCurve& sc, int oversample, std::vector<double>& interp)
{
    const int p = sc.order;
    const auto& g = gauss_legendre_cached(p);
    std::vector<double> fine_u;
    std::vector<double> fine_wu;
    for (int q = 0; q < oversample; ++q) {
        const double a = -1.0 + 2.0 * q / oversample, b = -1.0 + 2.0 * (q + 1) / oversample;
        for (int j = 0; j < p; ++j) {
            fine_u.push_back(0.5 * (a + b) + 0.5 * (b - a) * g.nodes[j]);
            fine_wu.push_back(0.5 * (b - a) * g.weights[j]);
        }
    }
    interp = interpolation_matrix(p, fine_u);
    std::vector<PanelGeometry> out(sc.panels.size());
    for (size_t k = 0; k < sc.panels.size(); ++k) {
        const auto& pn = sc.panels[k];
        PanelGeometry pg;
        pg.center = sc.spec.point(0.5 * (pn.a + pn.b));
        pg.radius = 0.0;
        for (int j = 0; j < p; ++j) pg.radius = std::max(pg.radius, (sc.nodes[pn.first + j].x - pg.center).norm());
        const double half = 0.5 * (pn.b - pn.a), mid = 0.5 * (pn.a + pn.b);
        for (size_t f = 0; f < fine_u.size(); ++f) {
            pg.fine_x.push_back(sc.spec.point(mid + half * fine_u[f]));
            pg.fine_w.push_back(half * fine_wu[f]);
        }
        out[k] = std::move(pg);
    }
    return out;
}

void check_spectral_point(const SampledCurve& sc, const InteractionParams& p, double z, const AssemblyOptions& opt)
{
    const double g = std::fabs(p.mass) * p.c * p.c;
    if (!(std::fabs(z) < g)) throw std::domain_error("assemble_cz: z outside the free gap");
    if (!opt.enforce_truncation) return;
    const double ze = zeta(z, p).real();
    const double m = sc.spec.compact_support_bound();
    if (ze * (sc.truncation_halflength - m) < std::log(1.0 / opt.tol) * (1.0 - 1e-9))
        throw std::domain_error("assemble_cz: curve is under-truncated for this z");
}

}  // namespace

double truncation_halflength(const CurveSpec& spec, const InteractionParams& p, double z, double tol)
{
    const double ze = zeta(z, p).real();
    return spec.compact_support_bound() + std::log(1.0 / tol) / ze;
}

Eigen::MatrixXcd assemble_cz_matrix(const SampledCurve& sc, const InteractionParams& prm, cplx z,
                                    const AssemblyOptions& opt)
{
    prm.validate();
    const KernelContext ctx(prm, z);
    const int n = sc.size();
    const int p = sc.order;
    const int np = static_cast<int>(sc.panels.size());
    std::vector<double> interp;
    const auto geo = panel_geometry(sc, opt.oversample, interp);
    const int nf = static_cast<int>(geo.empty() ? 0 : geo[0].fine_x.size());

    Eigen::MatrixXcd cz(2 * n, 2 * n);
    parallel_for(n, resolve_threads(opt.threads), [&](int i) {
        const CurveNode& ti = sc.nodes[i];
        const int ki = sc.panel_of(i);
        std::vector<double> cw(p), lw(p);
        std::vector<Mat2> acc(p);
        Mat2 g, a, b, c;
        for (int k = 0; k < np; ++k) {
            const Panel& pn = sc.panels[k];
            const double len = pn.b - pn.a;
            if (std::abs(k - ki) <= 1) {
                singular_weights(ti.s, pn.a, pn.b, p, cw.data(), lw.data());
                for (int jj = 0; jj < p; ++jj) {
                    const int j = pn.first + jj;
                    const CurveNode& tj = sc.nodes[j];
                    if (j == i)
                        ctx.split_diagonal(ti.t, a, b, c);
                    else
                        ctx.split(ti.x - tj.x, ti.s - tj.s, a, b, c);
                    cz.block<2, 2>(2 * i, 2 * j) = cw[jj] * a + lw[jj] * b + tj.w * c;
                }
                continue;
            }
            const double dist = (ti.x - geo[k].center).norm() - geo[k].radius;
            if (dist < 0.5 * len) {
                for (int jj = 0; jj < p; ++jj) acc[jj].setZero();
                for (int f = 0; f < nf; ++f) {
                    ctx.green(ti.x - geo[k].fine_x[f], g);
                    g *= geo[k].fine_w[f];
                    for (int jj = 0; jj < p; ++jj) acc[jj] += interp[f * p + jj] * g;
                }
                for (int jj = 0; jj < p; ++jj) cz.block<2, 2>(2 * i, 2 * (pn.first + jj)) = acc[jj];
                continue;
            }
            for (int jj = 0; jj < p; ++jj) {
                const int j = pn.first + jj;
                ctx.green(ti.x - sc.nodes[j].x, g);
                cz.block<2, 2>(2 * i, 2 * j) = sc.nodes[j].w * g;
            }
        }
    });
    return cz;
}

Eigen::MatrixXcd apply_interaction(const SampledCurve& sc, const InteractionParams& p, const Eigen::MatrixXcd& cz)
{
    const int n = sc.size();
    Eigen::MatrixXcd bs(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const Mat2 pm = interaction_matrix(p, sc.nodes[i].nu);
        bs.middleRows<2>(2 * i) = pm * cz.middleRows<2>(2 * i);
    }
    return bs;
}

BSAssembly assemble_cz(const SampledCurve& sc, const InteractionParams& p, double z, const AssemblyOptions& opt)
{
    check_spectral_point(sc, p, z, opt);
    BSAssembly a;
    a.curve = sc;
    a.params = p;
    a.spectral_point = z;
    a.cz_matrix = assemble_cz_matrix(sc, p, cplx(z, 0.0), opt);
    a.bs_matrix = apply_interaction(sc, p, a.cz_matrix);
    return a;
}

NearestEigen eigenvalue_nearest(const Eigen::MatrixXcd& a, cplx target, int krylov)
{
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXcd shifted = a;
    shifted.diagonal().array() -= target;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const int k = std::min(krylov, n);

    Eigen::VectorXcd v0(n);
    for (int i = 0; i < n; ++i) v0(i) = cplx(1.0 + 0.5 * std::sin(1.7 * i + 0.3), 0.25 * std::cos(0.9 * i));
    v0.normalize();

    NearestEigen best;
    for (int restart = 0; restart < 8; ++restart) {
        Eigen::MatrixXcd v(n, k + 1);
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k + 1, k);
        v.col(0) = v0;
        int m = k;
        for (int j = 0; j < k; ++j) {
            Eigen::VectorXcd w = lu.solve(v.col(j));
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXcd coef = v.leftCols(j + 1).adjoint() * w;
                w -= v.leftCols(j + 1) * coef;
                h.col(j).head(j + 1) += coef;
            }
            const double nw = w.norm();
            h(j + 1, j) = nw;
            if (nw < 1e-14 * h.col(j).head(j + 1).norm()) {
                m = j + 1;
                break;
            }
            v.col(j + 1) = w / nw;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.topLeftCorner(m, m));
        const auto& th = es.eigenvalues();
        int bi = 0;
        for (int i = 1; i < m; ++i)
            if (std::abs(th(i)) > std::abs(th(bi))) bi = i;
        Eigen::VectorXcd y = v.leftCols(m) * es.eigenvectors().col(bi);
        y.normalize();
        best.mu = target + 1.0 / th(bi);
        best.vector = y;
        best.ritz.clear();
        for (int i = 0; i < m; ++i) best.ritz.push_back(target + 1.0 / th(i));
        best.residual = (a * y - best.mu * y).norm();
        const double sep = std::abs(best.mu - target);
        if (best.residual <= 1e-10 * std::max(1.0, sep) || m < k) break;
        v0 = y;
    }
    return best;
}

NearestEigen bs_nearest(const SampledCurve& sc, const InteractionParams& p, double z, const AssemblyOptions& opt)
{
    const BSAssembly a = assemble_cz(sc, p, z, opt);
    return eigenvalue_nearest(a.bs_matrix, cplx(-1.0, 0.0));
}

bool refine_root(const SampledCurve& sc, const InteractionParams& p, double lo, double hi, const ScanOptions& opt,
                 GapEigenvalue& out, Eigen::VectorXcd* density)
{
    struct Eval {
        double z;
        NearestEigen e;
        double res() const { return std::abs(e.mu + 1.0); }
        double g() const { return e.mu.real() + 1.0; }
    };
    int budget = opt.max_refine;
    auto eval = [&](double z) {
        --budget;
        return Eval{z, bs_nearest(sc, p, z, opt.assembly)};
    };
    auto accept = [&](const Eval& e) {
        if (e.res() > opt.residual_tol) return false;
        out.z = e.z;
        out.residual = e.res();
        int mult = 0;
        for (const cplx& r : e.e.ritz)
            if (std::abs(r + 1.0) <= std::max(10.0 * e.res(), 1e-12)) ++mult;
        out.multiplicity = std::max(1, mult);
        if (density) *density = e.e.vector;
        return true;
    };

    Eval a = eval(lo), b = eval(hi);
    if (a.res() <= opt.residual_tol) return accept(a);
    if (b.res() <= opt.residual_tol) return accept(b);

    // sign change of Re(mu) + 1: safeguarded secant (Illinois)
    if (a.g() * b.g() < 0.0) {
        double fa = a.g(), fb = b.g();
        int side = 0;
        Eval best = std::fabs(fa) < std::fabs(fb) ? a : b;
        while (budget > 0 && (b.z - a.z) > 1e-14 * (1.0 + std::fabs(a.z))) {
            double zc = (a.z * fb - b.z * fa) / (fb - fa);
            if (!(zc > a.z && zc < b.z)) zc = 0.5 * (a.z + b.z);
            Eval c = eval(zc);
            if (c.res() < best.res()) best = c;
            if (c.res() <= opt.residual_tol) return accept(c);
            const double fc = c.g();
            if (fc * fb < 0.0) {
                a = b;
                fa = fb;
                b = c;
                fb = fc;
                side = 0;
            } else {
                b = c;
                fb = fc;
                if (side == -1) fa *= 0.5;
                side = -1;
            }
            if (a.z > b.z) {
                std::swap(a, b);
                std::swap(fa, fb);
                side = -side;
            }
        }
        return accept(best);
    }

    // otherwise golden-section minimization of |mu + 1|
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b.z - gr * (b.z - a.z), x2 = a.z + gr * (b.z - a.z);
    Eval e1 = eval(x1), e2 = eval(x2);
    double za = a.z, zb = b.z;
    while (budget > 0 && (zb - za) > 1e-13) {
        if (e1.res() <= opt.residual_tol) return accept(e1);
        if (e2.res() <= opt.residual_tol) return accept(e2);
        if (e1.res() < e2.res()) {
            zb = e2.z;
            e2 = e1;
            e1 = eval(zb - gr * (zb - za));
        } else {
            za = e1.z;
            e1 = e2;
            e2 = eval(za + gr * (zb - za));
        }
        // switch to the secant path once a sign change appears
        if (e1.g() * e2.g() < 0.0 && std::fabs(e1.e.mu.imag()) < 1e-3 && std::fabs(e2.e.mu.imag()) < 1e-3) {
            const double l = std::min(e1.z, e2.z), h = std::max(e1.z, e2.z);
            ScanOptions o2 = opt;
            o2.max_refine = budget;
            return refine_root(sc, p, l, h, o2, out, density);
        }
    }
    return accept(e1.res() < e2.res() ? e1 : e2);
}

EigenScanResult bs_eigenvalue_scan(const SampledCurve& sc, const InteractionParams& p, Interval window,
                                   const ScanOptions& opt)
{
    if (!(window.hi > window.lo)) throw std::invalid_argument("bs_eigenvalue_scan: empty window");
    if (opt.steps < 3) throw std::invalid_argument("bs_eigenvalue_scan: need at least 3 scan points");
    EigenScanResult res;
    res.critical_warning = is_critical(p);
    const int ns = opt.steps;
    std::vector<double> zs(ns), fs(ns);
    for (int k = 0; k < ns; ++k) zs[k] = window.lo + (window.hi - window.lo) * k / (ns - 1);
    const int threads = resolve_threads(opt.assembly.threads);
    AssemblyOptions inner = opt.assembly;
    inner.threads = 1;
    parallel_for(ns, threads, [&](int k) {
        const NearestEigen e = bs_nearest(sc, p, zs[k], threads > 1 ? inner : opt.assembly);
        fs[k] = std::abs(e.mu + 1.0);
    });
    res.min_residual = *std::min_element(fs.begin(), fs.end());
    for (int k = 0; k < ns; ++k) res.samples.push_back({zs[k], fs[k], false});

    for (int k = 0; k < ns; ++k) {
        if (fs[k] >= opt.threshold) continue;
        const bool left_ok = k == 0 || fs[k] <= fs[k - 1];
        const bool right_ok = k == ns - 1 || fs[k] < fs[k + 1];
        if (!left_ok || !right_ok) continue;
        const double lo = zs[std::max(k - 1, 0)], hi = zs[std::min(k + 1, ns - 1)];
        GapEigenvalue ev;
        Eigen::VectorXcd dens;
        if (!refine_root(sc, p, lo, hi, opt, ev, &dens)) continue;
        bool dup = false;
        for (const auto& e : res.eigenvalues)
            if (std::fabs(e.z - ev.z) < 1e-9) dup = true;
        if (dup) continue;
        res.eigenvalues.push_back(ev);
        res.densities.push_back(dens);
        res.samples[k].converged = true;
    }
    return res;
}

Eigen::Vector2cd evaluate_potential(const SampledCurve& sc, const InteractionParams& prm, cplx z,
                                    const Eigen::VectorXcd& density, const Vec2& x)
{
    const KernelContext ctx(prm, z);
    const int p = sc.order;
    const auto& g = gauss_legendre_cached(p);
    Eigen::Vector2cd u = Eigen::Vector2cd::Zero();
    Mat2 gm;
    std::vector<double> single(1);
    for (size_t k = 0; k < sc.panels.size(); ++k) {
        const Panel& pn = sc.panels[k];
        const double len = pn.b - pn.a;
        Vec2 center = sc.nodes[pn.first + p / 2].x;
        double radius = 0.0;
        for (int j = 0; j < p; ++j) radius = std::max(radius, (sc.nodes[pn.first + j].x - center).norm());
        if ((x - center).norm() - radius > len) {
            for (int j = 0; j < p; ++j) {
                const CurveNode& nd = sc.nodes[pn.first + j];
                ctx.green(x - nd.x, gm);
                u += nd.w * gm * density.segment<2>(2 * (pn.first + j));
            }
            continue;
        }
        // recursive subdivision in the local coordinate with interpolated density
        const double half = 0.5 * len, mid = 0.5 * (pn.a + pn.b);
        std::vector<std::pair<double, double>> stack{{-1.0, 1.0}};
        int guard = 0;
        while (!stack.empty()) {
            auto [ua, ub] = stack.back();
            stack.pop_back();
            const double sa = mid + half * ua, sb = mid + half * ub;
            const double sublen = sb - sa;
            const Vec2 c = sc.spec.point(0.5 * (sa + sb));
            const double d = (x - c).norm() - 0.5 * sublen;
            if (d < 1.5 * sublen && ++guard < 4000 && sublen > 1e-10) {
                const double um = 0.5 * (ua + ub);
                stack.push_back({ua, um});
                stack.push_back({um, ub});
                continue;
            }
            std::vector<double> us(p);
            for (int j = 0; j < p; ++j) us[j] = 0.5 * (ua + ub) + 0.5 * (ub - ua) * g.nodes[j];
            const auto li = interpolation_matrix(p, us);
            for (int j = 0; j < p; ++j) {
                const double s = mid + half * us[j];
                const double w = 0.5 * sublen * g.weights[j];
                Eigen::Vector2cd phi = Eigen::Vector2cd::Zero();
                for (int q = 0; q < p; ++q) phi += li[j * p + q] * density.segment<2>(2 * (pn.first + q));
                ctx.green(x - sc.spec.point(s), gm);
                u += w * gm * phi;
            }
        }
    }
    return u;
}

bool admissible_field_point(const SampledCurve& sc, const Vec2& x, double min_distance)
{
    double dmin = 1e300;
    int inear = 0;
    for (int i = 0; i < sc.size(); ++i) {
        const double d = (x - sc.nodes[i].x).norm();
        if (d < dmin) {
            dmin = d;
            inear = i;
        }
    }
    const double h = min_distance >= 0.0 ? min_distance : sc.panel_length(sc.panel_of(inear)) / sc.order;
    return dmin >= h;
}

std::vector<FieldSample> reconstruct_eigenfunction(const BSAssembly& a, const Eigen::VectorXcd& density,
                                                   const std::vector<Vec2>& grid, double min_distance)
{
    const SampledCurve& sc = a.curve;
    if (density.size() != 2 * sc.size()) throw std::invalid_argument("reconstruct_eigenfunction: density size mismatch");
    std::vector<FieldSample> out;
    for (const Vec2& x : grid) {
        if (!admissible_field_point(sc, x, min_distance))
            throw std::invalid_argument("reconstruct_eigenfunction: grid point too close to the curve");
        out.push_back({x, evaluate_potential(sc, a.params, cplx(a.spectral_point, 0.0), density, x)});
    }
    return out;
}

IdentityDefect cz_identity_defect(const BSAssembly& a)
{
    const SampledCurve& sc = a.curve;
    const int n = sc.size();
    const double c2 = a.params.c * a.params.c;
    Eigen::MatrixXcd snc = a.cz_matrix;
    for (int i = 0; i < n; ++i) snc.middleRows<2>(2 * i) = sigma_dot(sc.nodes[i].nu) * a.cz_matrix.middleRows<2>(2 * i);
    Eigen::VectorXd sw(2 * n);
    for (int i = 0; i < n; ++i) sw(2 * i) = sw(2 * i + 1) = std::sqrt(sc.nodes[i].w);

    // smooth, well-resolved test densities centred away from the truncation ends
    std::vector<Eigen::VectorXcd> cols;
    for (double s0 : {-4.0, -2.0, 0.0, 2.0, 4.0})
        for (int mode = 0; mode < 3; ++mode)
            for (int comp = 0; comp < 2; ++comp) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
                for (int i = 0; i < n; ++i) {
                    const double ds = sc.nodes[i].s - s0;
                    const double env = std::exp(-0.5 * ds * ds);
                    const double mod = mode == 0 ? 1.0 : (mode == 1 ? std::cos(ds) : std::sin(ds));
                    v(2 * i + comp) = env * mod;
                }
                cols.push_back(v);
            }
    Eigen::MatrixXcd q(2 * n, cols.size());
    for (size_t k = 0; k < cols.size(); ++k) q.col(k) = cols[k];
    Eigen::MatrixXcd wq = sw.asDiagonal() * q;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(wq);
    const Eigen::MatrixXcd r = qr.matrixQR().topRows(q.cols()).triangularView<Eigen::Upper>();
    const Eigen::MatrixXcd qw = r.triangularView<Eigen::Upper>().solve(q.transpose()).transpose();
    const Eigen::MatrixXcd d = 4.0 * c2 * (snc * (snc * qw)) + qw;
    IdentityDefect out;
    out.nodes = n;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sw.asDiagonal() * d);
    out.compressed = svd.singularValues()(0);
    return out;
}

LineDeviation line_reference_deviation(const CurveSpec& spec_in, const InteractionParams& p, double z,
                                       double nodes_per_unit, const AssemblyOptions& opt)
{
    const CurveSpec spec = spec_in.family == CurveFamily::straight_line || spec_in.built ? spec_in : build_curve(spec_in);
    const double l = truncation_halflength(spec, p, z, opt.tol);
    const double m = spec.compact_support_bound();
    LineDeviation out;
    for (int level = 0; level < 2; ++level) {
        const double npu = nodes_per_unit * (level == 0 ? 1.0 : 2.0);
        const SampledCurve cg = sample_curve(spec, npu, l, default_panel_order);
        const SampledCurve cl = sample_curve(straight_line(m), npu, l, default_panel_order);
        const Eigen::MatrixXcd cgm = assemble_cz_matrix(cg, p, cplx(z, 0.0), opt);
        const Eigen::MatrixXcd clm = assemble_cz_matrix(cl, p, cplx(z, 0.0), opt);
        const int n = cg.size();
        const Mat2 s2 = pauli::s2();
        std::vector<Mat2> lg(n), rg(n);
        for (int i = 0; i < n; ++i) {
            const Mat2 v = v_matrix(cg.nodes[i].t);
            const Mat2 sn = sigma_dot(cg.nodes[i].nu);
            lg[i] = v * sn;
            rg[i] = sn * v.adjoint();
        }
        Eigen::MatrixXcd d(2 * n, 2 * n);
        double outside = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Mat2 blk = lg[i] * cgm.block<2, 2>(2 * i, 2 * j) * rg[j] - s2 * clm.block<2, 2>(2 * i, 2 * j) * s2;
                const double sw = std::sqrt(cg.nodes[i].w / cg.nodes[j].w);
                d.block<2, 2>(2 * i, 2 * j) = sw * blk;
                const double si = cg.nodes[i].s, sj = cg.nodes[j].s;
                if ((si > m && sj > m) || (si < -m && sj < -m)) outside = std::max(outside, blk.norm());
            }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(d);
        const auto& sv = svd.singularValues();
        if (level == 0) {
            out.max_entry_outside = outside;
            out.top_singular = sv(0);
            out.singular_ratio_20 = sv.size() > 19 && sv(0) > 0 ? sv(19) / sv(0) : 0.0;
        } else {
            out.max_entry_outside = std::max(out.max_entry_outside, outside);
            out.top_singular_refined = sv(0);
            out.refinement_ratio = sv(0) > 0 ? out.top_singular / sv(0) : 0.0;
        }
    }
    return out;
}

}  // namespace shellspec
