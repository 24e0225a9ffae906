#include "shellspec/panel_quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "shellspec/quadrature.hpp"

namespace shellspec {

namespace {

constexpr int graded_rule = 16;

// Moments for a target outside [-1, 1] by graded Gauss-Legendre toward the nearest end.
void moments_outside(double x0, int n, double* mc, double* ml)
{
    const auto& g = gauss_legendre_cached(graded_rule);
    const double e = x0 > 0 ? 1.0 : -1.0;
    const double delta = std::fabs(x0) - 1.0;
    for (int k = 0; k < n; ++k) mc[k] = ml[k] = 0.0;
    std::vector<double> pk(n);
    // v = distance from the near endpoint into the panel, v in [0, 2], dyadic grading
    std::vector<double> br{0.0};
    for (double v = std::max(std::min(delta, 2.0), 1e-16); v < 2.0; v *= 2.0) br.push_back(v);
    br.push_back(2.0);
    for (size_t s = 0; s + 1 < br.size(); ++s) {
        const double half = 0.5 * (br[s + 1] - br[s]), mid = 0.5 * (br[s] + br[s + 1]);
        for (int j = 0; j < graded_rule; ++j) {
            const double v = mid + half * g.nodes[j];
            const double u = e * (1.0 - v);
            const double w = half * g.weights[j];
            legendre_values(n, u, pk.data());
            const double inv = 1.0 / (x0 - u);
            const double lg = std::log(std::fabs(x0 - u));
            for (int k = 0; k < n; ++k) {
                mc[k] += w * pk[k] * inv;
                ml[k] += w * pk[k] * lg;
            }
        }
    }
}

}  // namespace

void legendre_moments(double x0, int n, double* mc, double* ml)
{
    if (std::fabs(x0) >= 1.0) {
        moments_outside(x0, n, mc, ml);
        return;
    }
    // Q_k(x0) for k <= n, Ferrers functions of the second kind
    std::vector<double> q(n + 1);
    q[0] = 0.5 * std::log((1.0 + x0) / (1.0 - x0));
    if (n >= 1) q[1] = x0 * q[0] - 1.0;
    for (int k = 1; k < n; ++k) q[k + 1] = ((2 * k + 1) * x0 * q[k] - k * q[k - 1]) / (k + 1);
    for (int k = 0; k < n; ++k) mc[k] = 2.0 * q[k];
    ml[0] = (1.0 - x0) * std::log(1.0 - x0) + (1.0 + x0) * std::log(1.0 + x0) - 2.0;
    for (int k = 1; k < n; ++k) ml[k] = 2.0 * (q[k + 1] - q[k - 1]) / (2 * k + 1);
}

void singular_weights(double s0, double a, double b, int p, double* cauchy, double* logw)
{
    if (!(b > a)) throw std::invalid_argument("singular_weights: empty panel");
    const auto& g = gauss_legendre_cached(p);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const double x0 = (s0 - mid) / half;
    std::vector<double> mc(p), ml(p), pk(p);
    legendre_moments(x0, p, mc.data(), ml.data());
    const double lh = std::log(half);
    for (int j = 0; j < p; ++j) {
        legendre_values(p, g.nodes[j], pk.data());
        double sc = 0.0, sl = 0.0;
        for (int k = 0; k < p; ++k) {
            const double f = 0.5 * (2 * k + 1) * pk[k];
            sc += f * mc[k];
            sl += f * ml[k];
        }
        cauchy[j] = g.weights[j] * sc;
        logw[j] = half * g.weights[j] * (lh + sl);
    }
}

std::vector<double> interpolation_matrix(int p, const std::vector<double>& targets)
{
    const auto& g = gauss_legendre_cached(p);
    // barycentric weights for Gauss-Legendre nodes
    std::vector<double> bw(p);
    for (int j = 0; j < p; ++j) {
        double prod = 1.0;
        for (int k = 0; k < p; ++k)
            if (k != j) prod *= (g.nodes[j] - g.nodes[k]);
        bw[j] = 1.0 / prod;
    }
    std::vector<double> out(targets.size() * p, 0.0);
    for (size_t t = 0; t < targets.size(); ++t) {
        const double x = targets[t];
        int hit = -1;
        for (int j = 0; j < p; ++j)
            if (x == g.nodes[j]) hit = j;
        if (hit >= 0) {
            out[t * p + hit] = 1.0;
            continue;
        }
        double den = 0.0;
        for (int j = 0; j < p; ++j) den += bw[j] / (x - g.nodes[j]);
        for (int j = 0; j < p; ++j) out[t * p + j] = bw[j] / (x - g.nodes[j]) / den;
    }
    return out;
}

}  // namespace shellspec
