#include "shellspec/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace shellspec {

namespace {

constexpr double series_radius = 2.0;
constexpr double asymptotic_radius = 25.0;
constexpr double eps = 1e-17;

double mag(double x) { return std::fabs(x); }
double mag(cplx x) { return std::abs(x); }

// Ascending series, |x| <= series_radius.
template <class T>
void k01_series(T x, T& k0, T& k1)
{
    const T t = x * x / 4.0;
    const T lg = std::log(x / 2.0);
    T term0 = 1.0, term1 = 1.0;
    T i0 = 1.0, i1s = 1.0, s0 = 0.0;
    T s1 = 1.0 - 2.0 * euler_gamma;
    double h = 0.0;
    for (int k = 1; k < 60; ++k) {
        term0 *= t / double(k * k);
        term1 *= t / double(k * (k + 1));
        h += 1.0 / k;
        i0 += term0;
        s0 += h * term0;
        i1s += term1;
        s1 += (2.0 * (h - euler_gamma) + 1.0 / (k + 1)) * term1;
        if (mag(term0) < eps && mag(term1) < eps) break;
    }
    k0 = -(lg + euler_gamma) * i0 + s0;
    k1 = 1.0 / x + lg * (x / 2.0) * i1s - (x / 4.0) * s1;
}

// Temme's continued fraction (CF2) for order 0 and 1; returns e^x K.
template <class T>
void k01_cf2_scaled(T x, T& k0e, T& k1e)
{
    T b = 2.0 * (1.0 + x);
    T d = 1.0 / b;
    T h = d, delh = d;
    T q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    T q = a1, c = a1;
    double a = -a1;
    T s = 1.0 + q * delh;
    for (int i = 2; i < 20000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / double(i);
        const T qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const T dels = q * delh;
        s += dels;
        if (mag(dels) < 1e-16 * mag(s)) break;
    }
    h = a1 * h;
    k0e = std::sqrt(pi / (2.0 * x)) / s;
    k1e = k0e * (x + 0.5 - h) / x;
}

template <class T>
void k01_asymptotic_scaled(T x, T& k0e, T& k1e)
{
    const T pref = std::sqrt(pi / (2.0 * x));
    T t0 = 1.0, t1 = 1.0, s0 = 1.0, s1 = 1.0;
    double last0 = 1.0, last1 = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double o = double((2 * k - 1) * (2 * k - 1));
        t0 *= (-o) / (8.0 * k) / x;
        t1 *= (4.0 - o) / (8.0 * k) / x;
        const double m0 = mag(t0), m1 = mag(t1);
        if (m0 > last0 && m1 > last1) break;
        s0 += t0;
        s1 += t1;
        last0 = m0;
        last1 = m1;
        if (m0 < eps && m1 < eps) break;
    }
    k0e = pref * s0;
    k1e = pref * s1;
}

template <class T>
void k01_scaled_any(T x, T& k0e, T& k1e)
{
    const double r = mag(x);
    if (r <= series_radius) {
        k01_series(x, k0e, k1e);
        const T e = std::exp(x);
        k0e *= e;
        k1e *= e;
    } else if (r < asymptotic_radius) {
        k01_cf2_scaled(x, k0e, k1e);
    } else {
        k01_asymptotic_scaled(x, k0e, k1e);
    }
}

template <class T>
void k01_any(T x, T& k0, T& k1)
{
    if (mag(x) <= series_radius) {
        k01_series(x, k0, k1);
        return;
    }
    k01_scaled_any(x, k0, k1);
    const T e = std::exp(-x);
    k0 *= e;
    k1 *= e;
}

template <class T>
void i01_series(T x, T& i0, T& i1)
{
    const T t = x * x / 4.0;
    T term0 = 1.0, term1 = 1.0, s0 = 1.0, s1 = 1.0;
    for (int k = 1; k < 400; ++k) {
        term0 *= t / double(k * k);
        term1 *= t / double(k * (k + 1));
        s0 += term0;
        s1 += term1;
        if (mag(term0) < eps * mag(s0) && mag(term1) < eps * mag(s1)) break;
    }
    i0 = s0;
    i1 = (x / 2.0) * s1;
}

void check_arg(cplx xi)
{
    if (xi == cplx(0.0))
        throw std::domain_error("bessel_k: argument is zero");
    if (xi.imag() == 0.0 && xi.real() < 0.0)
        throw std::domain_error("bessel_k: argument on the negative real axis");
}

}  // namespace

cplx sqrt_branch(cplx w)
{
    if (w.imag() == 0.0 && w.real() >= 0.0) return {std::sqrt(w.real()), 0.0};
    const cplx r = std::sqrt(-w);
    return {-r.imag(), r.real()};
}

void bessel_k01(cplx xi, cplx& k0, cplx& k1)
{
    check_arg(xi);
    if (xi.imag() == 0.0) {
        double a, b;
        k01_any(xi.real(), a, b);
        k0 = a;
        k1 = b;
        return;
    }
    k01_any(xi, k0, k1);
}

void bessel_k01(double x, double& k0, double& k1)
{
    if (!(x > 0.0)) throw std::domain_error("bessel_k: real argument must be positive");
    k01_any(x, k0, k1);
}

void bessel_k01_scaled(double x, double& k0e, double& k1e)
{
    if (!(x > 0.0)) throw std::domain_error("bessel_k: real argument must be positive");
    k01_scaled_any(x, k0e, k1e);
}

cplx bessel_k(int order, cplx xi)
{
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_k: order must be 0 or 1");
    cplx k0, k1;
    bessel_k01(xi, k0, k1);
    return order == 0 ? k0 : k1;
}

double bessel_k(int order, double x)
{
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_k: order must be 0 or 1");
    double k0, k1;
    bessel_k01(x, k0, k1);
    return order == 0 ? k0 : k1;
}

void bessel_i01(cplx xi, cplx& i0, cplx& i1) { i01_series(xi, i0, i1); }
void bessel_i01(double x, double& i0, double& i1) { i01_series(x, i0, i1); }

cplx BesselSplit::singular(cplx xi) const
{
    return order == 0 ? -std::log(xi) : 1.0 / xi;
}

cplx BesselSplit::smooth_remainder(cplx xi) const
{
    check_arg(xi);
    if (std::abs(xi) > series_radius) {
        cplx k0, k1;
        bessel_k01(xi, k0, k1);
        return order == 0 ? k0 + std::log(xi) : k1 - 1.0 / xi;
    }
    // Evaluate the remainders from their own series so that no cancellation
    // against the singular part occurs for tiny |xi|.
    const cplx t = xi * xi / 4.0;
    const cplx lx = std::log(xi);
    const double l2 = std::log(2.0);
    cplx term0 = 1.0, term1 = 1.0, i0m1 = 0.0, s0 = 0.0, i1s = 1.0;
    cplx s1 = 1.0 - 2.0 * euler_gamma;
    double h = 0.0;
    for (int k = 1; k < 60; ++k) {
        term0 *= t / double(k * k);
        term1 *= t / double(k * (k + 1));
        h += 1.0 / k;
        i0m1 += term0;
        s0 += h * term0;
        i1s += term1;
        s1 += (2.0 * (h - euler_gamma) + 1.0 / (k + 1)) * term1;
        if (std::abs(term0) < eps && std::abs(term1) < eps) break;
    }
    if (order == 0) {
        // K0 = -(log xi - log 2 + gamma) I0 + s0, I0 = 1 + i0m1
        return -lx * i0m1 + (l2 - euler_gamma) * (1.0 + i0m1) + s0;
    }
    const cplx i1 = (xi / 2.0) * i1s;
    return lx * i1 - l2 * i1 - (xi / 4.0) * s1;
}

BesselSplit bessel_split(int order)
{
    if (order != 0 && order != 1) throw std::invalid_argument("bessel_split: order must be 0 or 1");
    BesselSplit b;
    b.order = order;
    b.log_coefficient = order == 0 ? 1.0 : 0.0;
    return b;
}

}  // namespace shellspec
