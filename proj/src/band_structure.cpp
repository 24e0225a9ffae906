#include "shellspec/band_structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace shellspec {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double rel_tol = 1e-12;
constexpr int k_grid_points = 4001;

double gap_edge(const InteractionParams& p) { return std::fabs(p.mass) * p.c * p.c; }

std::vector<Interval> merge(std::vector<Interval> v)
{
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

// Golden-section search for the extremum of f on [a, b]; sgn = +1 minimum, -1 maximum.
double golden_extremum(const std::function<double(double)>& f, double a, double b, int sgn)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = sgn * f(x1), f2 = sgn * f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = sgn * f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = sgn * f(x2);
        }
    }
    return sgn * std::min({f1, f2, sgn * f(a), sgn * f(b)});
}

// Boundary of the admissible set between an admissible and an inadmissible point.
double bisect_boundary(const std::function<double(double)>& prod, double k_in, double k_out)
{
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (k_in + k_out);
        if (mid == k_in || mid == k_out) break;
        if (prod(mid) > 0.0)
            k_in = mid;
        else
            k_out = mid;
    }
    return k_in;
}

void fill_gap_complement(SpectrumReport& r, double g)
{
    r.gap_complement.clear();
    if (g == 0.0) return;
    std::vector<Interval> blocked = r.bands;
    for (double x : r.isolated_points) blocked.push_back({x, x});
    blocked = merge(blocked);
    double cur = -g;
    for (const auto& b : blocked) {
        if (b.hi <= cur) continue;
        if (b.lo >= g) break;
        if (b.lo > cur) r.gap_complement.push_back({cur, std::min(b.lo, g)});
        cur = std::max(cur, b.hi);
        if (cur >= g) break;
    }
    if (cur < g) r.gap_complement.push_back({cur, g});
}

}  // namespace

std::string regime_name(SpectrumRegime r)
{
    switch (r) {
    case SpectrumRegime::d_eq_4c2_lambda_nonzero: return "d_eq_4c2_lambda_nonzero";
    case SpectrumRegime::d_eq_4c2_lambda_zero: return "d_eq_4c2_lambda_zero";
    case SpectrumRegime::generic: return "generic";
    }
    return "generic";
}

SpectrumRegime regime_from_name(const std::string& s)
{
    if (s == "d_eq_4c2_lambda_nonzero") return SpectrumRegime::d_eq_4c2_lambda_nonzero;
    if (s == "d_eq_4c2_lambda_zero") return SpectrumRegime::d_eq_4c2_lambda_zero;
    if (s == "generic") return SpectrumRegime::generic;
    throw std::invalid_argument("unknown regime: " + s);
}

bool SpectrumReport::contains(double z, double tol) const
{
    for (const auto& b : bands)
        if (z >= b.lo - tol && z <= b.hi + tol) return true;
    for (double x : isolated_points)
        if (std::fabs(z - x) <= tol) return true;
    return false;
}

bool SpectrumReport::window_is_free(double lo, double hi) const
{
    for (const auto& g : gap_complement)
        if (lo > g.lo && hi < g.hi) return true;
    return false;
}

bool d_equals_4c2(const InteractionParams& p)
{
    const double c2 = p.c * p.c;
    const double scale = p.eta * p.eta + p.tau * p.tau + p.lambda * p.lambda + 4.0 * c2;
    return std::fabs(p.d() - 4.0 * c2) <= rel_tol * scale;
}

double z_pm(double k, int sign, const InteractionParams& p)
{
    if (d_equals_4c2(p)) throw std::invalid_argument("z_pm: requires d != 4c^2");
    const double c = p.c, c2 = c * c, m = p.mass;
    const double d = p.d();
    const double q = d / (4.0 * c2) - 1.0;
    const double a = d / 4.0 + c2;
    const double rad = (p.tau * p.tau * c2 + a * a) * k * k - 2.0 * p.lambda * p.tau * m * k * c2 +
                       (p.lambda * p.lambda * c2 + a * a) * m * m;
    const double den = p.eta * p.eta / c2 + q * q;
    const double s = sign >= 0 ? 1.0 : -1.0;
    return (-p.eta * (p.lambda * k + p.tau * m) + s * std::fabs(q) * std::sqrt(std::max(rad, 0.0))) / den;
}

SpectrumReport essential_spectrum(const InteractionParams& p)
{
    p.validate();
    SpectrumReport r;
    r.critical = is_critical(p);
    const double g = gap_edge(p);
    const bool d4 = d_equals_4c2(p);
    if (d4)
        r.regime = p.lambda != 0.0 ? SpectrumRegime::d_eq_4c2_lambda_nonzero : SpectrumRegime::d_eq_4c2_lambda_zero;

    if (g == 0.0 || r.regime == SpectrumRegime::d_eq_4c2_lambda_nonzero) {
        r.bands = {{-inf, inf}};
        return r;
    }
    r.bands = {{-inf, -g}, {g, inf}};
    if (r.regime == SpectrumRegime::d_eq_4c2_lambda_zero) {
        if (p.eta == 0.0) throw std::logic_error("essential_spectrum: d = 4c^2 with lambda = 0 forces eta != 0");
        const double pt = -(p.tau / p.eta) * p.mass * p.c * p.c + 0.0;
        if (std::fabs(pt) < g) r.isolated_points.push_back(pt);
        fill_gap_complement(r, g);
        return r;
    }

    const double c2 = p.c * p.c;
    const double dm = p.d() - 4.0 * c2;
    const double kmax = 50.0 * std::max(1.0, std::fabs(p.mass) * p.c);
    std::vector<double> ks(k_grid_points);
    const double a = 6.0;
    for (int i = 0; i < k_grid_points; ++i) {
        const double u = -1.0 + 2.0 * i / (k_grid_points - 1);
        ks[i] = kmax * std::sinh(a * u) / std::sinh(a);
    }

    std::vector<Interval> hulls;
    for (int sign : {+1, -1}) {
        auto zf = [&](double k) { return z_pm(k, sign, p); };
        auto prod = [&](double k) { return dm * ((p.eta / c2) * zf(k) + p.lambda * k + p.tau * p.mass); };
        std::vector<double> zs(k_grid_points);
        std::vector<char> adm(k_grid_points);
        for (int i = 0; i < k_grid_points; ++i) {
            zs[i] = zf(ks[i]);
            adm[i] = prod(ks[i]) > 0.0;
        }
        int i = 0;
        while (i < k_grid_points) {
            if (!adm[i]) {
                ++i;
                continue;
            }
            int j = i;
            while (j + 1 < k_grid_points && adm[j + 1]) ++j;
            double lo = inf, hi = -inf;
            for (int t = i; t <= j; ++t) {
                lo = std::min(lo, zs[t]);
                hi = std::max(hi, zs[t]);
            }
            double ka = ks[i], kb = ks[j];
            if (i > 0) ka = bisect_boundary(prod, ks[i], ks[i - 1]);
            if (j + 1 < k_grid_points) kb = bisect_boundary(prod, ks[j], ks[j + 1]);
            for (double kk : {ka, kb}) {
                lo = std::min(lo, zf(kk));
                hi = std::max(hi, zf(kk));
            }
            // interior extrema
            for (int t = i; t <= j; ++t) {
                const double left = t > i ? zs[t - 1] : (i > 0 ? zf(ka) : zs[t]);
                const double right = t < j ? zs[t + 1] : (j + 1 < k_grid_points ? zf(kb) : zs[t]);
                const double a0 = t > i ? ks[t - 1] : ka;
                const double b0 = t < j ? ks[t + 1] : kb;
                if (zs[t] <= left && zs[t] <= right && b0 > a0) lo = std::min(lo, golden_extremum(zf, a0, b0, +1));
                if (zs[t] >= left && zs[t] >= right && b0 > a0) hi = std::max(hi, golden_extremum(zf, a0, b0, -1));
            }
            // limits k -> +-inf
            if (i == 0 || j == k_grid_points - 1) {
                const double dir = (j == k_grid_points - 1) ? 1.0 : -1.0;
                for (double scale : {1e3, 1e6, 1e9}) {
                    const double v = zf(dir * kmax * scale);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                if (i == 0 && j == k_grid_points - 1)
                    for (double scale : {1e3, 1e6, 1e9}) {
                        const double v = zf(-kmax * scale);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
            }
            if (hi > -g && lo < g) hulls.push_back({std::max(lo, -g), std::min(hi, g)});
            i = j + 1;
        }
    }
    for (const auto& h : hulls) r.bands.push_back(h);
    r.bands = merge(r.bands);
    fill_gap_complement(r, g);
    return r;
}

Mat2 line_symbol(double p, cplx z, const InteractionParams& params)
{
    const double c = params.c, m = params.mass;
    const cplx rad = p * p * c * c + (m * c * c) * (m * c * c) - z * z;
    if (rad.imag() == 0.0 && rad.real() <= 0.0) throw std::domain_error("line_symbol: radicand on the branch cut");
    const cplx f = 1.0 / (2.0 * std::sqrt(rad));
    Mat2 s;
    s << z / c + m * c, p, p, z / c - m * c;
    return f * s;
}

MuValue mu_pm(double p, int sign, const InteractionParams& params)
{
    const double c = params.c, mc = params.mass * params.c;
    const double den = p * p + mc * mc;
    const double x = params.eta * params.eta - params.d() + (den > 0.0 ? 4.0 * p * p * c * c / den : 4.0 * c * c) +
                     (den > 0.0 ? 4.0 * p * c * params.lambda / std::sqrt(den) : 0.0);
    MuValue out;
    out.complex_radicand = x < 0.0;
    const cplx root = std::sqrt(cplx(x, 0.0));
    const double s = sign >= 0 ? 1.0 : -1.0;
    out.value = std::sqrt(p * p + 1.0) * (params.eta + s * root);
    return out;
}

MuAsymptotics mu_asymptotics(const InteractionParams& params)
{
    const double c = params.c;
    const double dm = params.d() - 4.0 * c * c;
    const double lc = 4.0 * params.lambda * c;
    const double scale = std::fabs(params.d()) + 4.0 * c * c + std::fabs(lc);
    MuAsymptotics a;
    a.bounded_positive = std::fabs(dm - lc) <= rel_tol * scale;
    a.bounded_negative = std::fabs(dm + lc) <= rel_tol * scale;
    return a;
}

}  // namespace shellspec
