#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shellspec/band_structure.hpp"
#include "shellspec/curve_geometry.hpp"
#include "shellspec/dirac_core.hpp"

namespace shellspec {

constexpr double default_truncation_tol = 1e-8;

struct AssemblyOptions {
    double tol = default_truncation_tol;  // kernel truncation tolerance
    int threads = 0;                      // 0: SHELLSPEC_THREADS or 1
    bool enforce_truncation = true;
    int oversample = 4;  // sub-panels for geometrically close, non-adjacent panels
};

// Node block layout: rows/cols 2i, 2i+1 belong to node i.
struct BSAssembly {
    SampledCurve curve;
    InteractionParams params;
    double spectral_point = 0.0;
    Eigen::MatrixXcd cz_matrix;
    Eigen::MatrixXcd bs_matrix;
};

// M + log(1/tol)/zeta(z)
double truncation_halflength(const CurveSpec& spec, const InteractionParams& p, double z,
                             double tol = default_truncation_tol);

// Nystrom matrix of C_z (complex z allowed; no truncation check for non-real z).
Eigen::MatrixXcd assemble_cz_matrix(const SampledCurve& curve, const InteractionParams& p, cplx z,
                                    const AssemblyOptions& opt = {});

// Multiplies node blocks by eta s0 + tau s3 + i lambda (sigma.nu) s3.
Eigen::MatrixXcd apply_interaction(const SampledCurve& curve, const InteractionParams& p,
                                   const Eigen::MatrixXcd& cz);

BSAssembly assemble_cz(const SampledCurve& curve, const InteractionParams& p, double z,
                       const AssemblyOptions& opt = {});

struct NearestEigen {
    cplx mu;
    Eigen::VectorXcd vector;
    double residual = 0.0;  // ||A v - mu v|| with ||v|| = 1
    std::vector<cplx> ritz;
};

// Eigenvalue of A nearest to `target` by shift-invert Arnoldi.
NearestEigen eigenvalue_nearest(const Eigen::MatrixXcd& a, cplx target, int krylov = 24);

struct GapEigenvalue {
    double z;
    double residual;  // |mu(z) + 1|
    int multiplicity;
};

struct ScanSample {
    double z;
    double min_residual;  // |mu(z) + 1| for the eigenvalue nearest -1
    bool converged;
};

struct FieldSample {
    Vec2 x;
    Eigen::Vector2cd u;
};

struct EigenScanResult {
    std::vector<GapEigenvalue> eigenvalues;
    std::vector<Eigen::VectorXcd> densities;
    std::vector<ScanSample> samples;
    std::vector<FieldSample> field_samples;
    double min_residual = 0.0;  // over the coarse scan
    bool critical_warning = false;
};

struct ScanOptions {
    int steps = 80;
    double threshold = 0.2;
    double residual_tol = default_truncation_tol;
    int max_refine = 60;
    AssemblyOptions assembly;
};

// |mu(z) + 1| and the eigenpair nearest -1 of the BS matrix at z.
NearestEigen bs_nearest(const SampledCurve& curve, const InteractionParams& p, double z,
                        const AssemblyOptions& opt = {});

EigenScanResult bs_eigenvalue_scan(const SampledCurve& curve, const InteractionParams& p, Interval window,
                                   const ScanOptions& opt = {});

// Refines a single root inside [lo, hi] (bracketing a local minimum of |mu + 1|).
bool refine_root(const SampledCurve& curve, const InteractionParams& p, double lo, double hi,
                 const ScanOptions& opt, GapEigenvalue& out, Eigen::VectorXcd* density = nullptr);

// Phi_z phi(x), with adaptive panel subdivision for targets near the curve.
Eigen::Vector2cd evaluate_potential(const SampledCurve& curve, const InteractionParams& p, cplx z,
                                    const Eigen::VectorXcd& density, const Vec2& x);

// True when x keeps at least min_distance (default: local mesh width) from every node.
bool admissible_field_point(const SampledCurve& curve, const Vec2& x, double min_distance = -1.0);

// u = Phi_z phi on grid points at distance >= min_distance (default: local mesh width).
std::vector<FieldSample> reconstruct_eigenfunction(const BSAssembly& a, const Eigen::VectorXcd& density,
                                                   const std::vector<Vec2>& grid, double min_distance = -1.0);

struct IdentityDefect {
    double compressed = 0.0;  // 2-norm on a resolved smooth test subspace (weighted L2)
    int nodes = 0;
};

// || 4c^2 ((sigma.nu) C_z)^2 + I || measured as described in IdentityDefect.
IdentityDefect cz_identity_defect(const BSAssembly& a);

struct LineDeviation {
    double max_entry_outside = 0.0;  // max block norm with s_i, s_j both beyond +-M
    double top_singular = 0.0;
    double singular_ratio_20 = 0.0;  // s_20 / s_1
    double top_singular_refined = 0.0;
    double refinement_ratio = 0.0;  // s_1(n) / s_1(2n)
};

// Conjugated difference between C_z on the curve and on the straight line on matched grids.
LineDeviation line_reference_deviation(const CurveSpec& spec, const InteractionParams& p, double z,
                                       double nodes_per_unit, const AssemblyOptions& opt = {});

}  // namespace shellspec
