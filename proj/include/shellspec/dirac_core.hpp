#pragma once

#include <optional>

#include <Eigen/Dense>

#include "shellspec/curve_geometry.hpp"
#include "shellspec/special_functions.hpp"

namespace shellspec {

using Mat2 = Eigen::Matrix2cd;

struct InteractionParams {
    double eta = 0.0;     // electrostatic
    double tau = 0.0;     // Lorentz scalar
    double lambda = 0.0;  // anomalous magnetic
    double mass = 1.0;
    double c = 1.0;

    double d() const { return eta * eta - tau * tau - lambda * lambda; }
    void validate() const;
};

namespace pauli {
Mat2 s0();
Mat2 s1();
Mat2 s2();
Mat2 s3();
}  // namespace pauli

Mat2 sigma_dot(const Vec2& x);

// F = [[eta + tau, lambda], [lambda, eta - tau]]
Mat2 coupling_matrix(const InteractionParams& p);
// eta s0 + tau s3 + i lambda (sigma.nu) s3
Mat2 interaction_matrix(const InteractionParams& p, const Vec2& nu);
// diag(1, conj(t1 + i t2))
Mat2 v_matrix(const Vec2& t);

// zeta(z) = -i sqrt_branch(z^2/c^2 - (mc)^2); throws std::domain_error on the free bands.
cplx zeta(cplx z, const InteractionParams& p);

// Fundamental solution of the free Dirac operator, x != 0.
Mat2 green_kernel(cplx z, const Vec2& x, const InteractionParams& p);

bool is_confined(const InteractionParams& p);
bool is_critical(const InteractionParams& p);

struct IsospectralPartners {
    std::optional<InteractionParams> inverted;  // -4c^2/d * (eta, tau, lambda)
    InteractionParams negated;                  // (-eta, tau, -lambda), spectrum z -> -z
    bool negated_flips_sign = true;
};

IsospectralPartners isospectral_partners(const InteractionParams& p);

}  // namespace shellspec
