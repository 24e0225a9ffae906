#pragma once

#include <complex>

namespace shellspec {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double euler_gamma = 0.57721566490153286061;

// Square root with Im(r) > 0 off [0, inf); the nonnegative root on [0, inf).
cplx sqrt_branch(cplx w);

// Modified Bessel functions of the second kind, orders 0 and 1.
// Complex arguments must satisfy |arg xi| < pi; throws std::domain_error at 0.
cplx bessel_k(int order, cplx xi);
double bessel_k(int order, double x);
void bessel_k01(cplx xi, cplx& k0, cplx& k1);
void bessel_k01(double x, double& k0, double& k1);

// Exponentially scaled e^x K_j(x) for real x > 0.
void bessel_k01_scaled(double x, double& k0e, double& k1e);

// Modified Bessel functions of the first kind by power series.
// Intended for moderate |xi| (the near-field split of the kernels).
void bessel_i01(cplx xi, cplx& i0, cplx& i1);
void bessel_i01(double x, double& i0, double& i1);

// Singular/smooth decomposition of K_0 and K_1 near the origin:
//   K_0(xi) = -log(xi) + g3(xi)
//   K_1(xi) = 1/xi + xi g4(xi^2) log(xi) + xi g5(xi^2)
// singular() is -log(xi) resp. 1/xi, smooth_remainder() the rest.
struct BesselSplit {
    int order = 0;
    cplx log_coefficient;  // factor multiplying -log(xi): 1 for order 0, 0 for order 1

    cplx singular(cplx xi) const;
    cplx smooth_remainder(cplx xi) const;
    cplx recompose(cplx xi) const { return singular(xi) + smooth_remainder(xi); }
};

BesselSplit bessel_split(int order);

}  // namespace shellspec
