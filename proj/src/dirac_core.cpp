#include "shellspec/dirac_core.hpp"

#include <cmath>
#include <stdexcept>

namespace shellspec {

namespace {
constexpr double predicate_tol = 1e-12;
const cplx I(0.0, 1.0);
}  // namespace

void InteractionParams::validate() const
{
    if (!(c > 0.0)) throw std::invalid_argument("InteractionParams: c must be positive");
    if (!std::isfinite(eta) || !std::isfinite(tau) || !std::isfinite(lambda) || !std::isfinite(mass))
        throw std::invalid_argument("InteractionParams: non-finite coupling");
}

namespace pauli {
Mat2 s0() { return Mat2::Identity(); }
Mat2 s1()
{
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
Mat2 s2()
{
    Mat2 m;
    m << 0.0, -I, I, 0.0;
    return m;
}
Mat2 s3()
{
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
}  // namespace pauli

Mat2 sigma_dot(const Vec2& x)
{
    Mat2 m;
    m << 0.0, cplx(x.x(), -x.y()), cplx(x.x(), x.y()), 0.0;
    return m;
}

Mat2 coupling_matrix(const InteractionParams& p)
{
    Mat2 f;
    f << p.eta + p.tau, p.lambda, p.lambda, p.eta - p.tau;
    return f;
}

Mat2 interaction_matrix(const InteractionParams& p, const Vec2& nu)
{
    return p.eta * pauli::s0() + p.tau * pauli::s3() + I * p.lambda * sigma_dot(nu) * pauli::s3();
}

Mat2 v_matrix(const Vec2& t)
{
    Mat2 v = Mat2::Zero();
    v(0, 0) = 1.0;
    v(1, 1) = cplx(t.x(), -t.y());
    return v;
}

cplx zeta(cplx z, const InteractionParams& p)
{
    const double mc = p.mass * p.c;
    if (z.imag() == 0.0 && std::fabs(z.real()) >= std::fabs(p.mass) * p.c * p.c)
        throw std::domain_error("zeta: z lies on the free essential spectrum");
    const cplx zc = z / p.c;
    return -I * sqrt_branch(zc * zc - mc * mc);
}

Mat2 green_kernel(cplx z, const Vec2& x, const InteractionParams& p)
{
    const double r = x.norm();
    if (r == 0.0) throw std::domain_error("green_kernel: x = 0");
    const cplx ze = zeta(z, p);
    cplx k0, k1;
    bessel_k01(ze * r, k0, k1);
    const double f = 1.0 / (2.0 * pi * p.c);
    // i zeta = sqrt_branch(z^2/c^2 - (mc)^2)
    return f * (I * ze * k1 / r) * sigma_dot(x) +
           f * k0 * ((z / p.c) * pauli::s0() + p.mass * p.c * pauli::s3());
}

bool is_confined(const InteractionParams& p)
{
    const double c2 = p.c * p.c;
    const double scale = p.eta * p.eta + p.tau * p.tau + p.lambda * p.lambda + 4.0 * c2;
    return std::fabs(p.d() + 4.0 * c2) <= predicate_tol * scale;
}

bool is_critical(const InteractionParams& p)
{
    const double c2 = p.c * p.c;
    const double a = p.d() / 4.0 - c2;
    const double lc2 = p.lambda * p.lambda * c2;
    const double scale = (std::fabs(p.d()) / 4.0 + c2) * (std::fabs(p.d()) / 4.0 + c2) + lc2;
    return std::fabs(a * a - lc2) <= predicate_tol * scale;
}

IsospectralPartners isospectral_partners(const InteractionParams& p)
{
    IsospectralPartners out;
    const double d = p.d();
    const double scale = p.eta * p.eta + p.tau * p.tau + p.lambda * p.lambda;
    if (std::fabs(d) > predicate_tol * scale && d != 0.0) {
        // the factor c^2 keeps the relation dimensionally consistent; it is 1 for c = 1
        const double f = -4.0 * p.c * p.c / d;
        InteractionParams q = p;
        q.eta = f * p.eta;
        q.tau = f * p.tau;
        q.lambda = f * p.lambda;
        out.inverted = q;
    }
    out.negated = p;
    out.negated.eta = -p.eta;
    out.negated.lambda = -p.lambda;
    return out;
}

}  // namespace shellspec
