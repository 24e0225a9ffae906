#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shellspec/band_structure.hpp"
#include "shellspec/boundary_integral.hpp"
#include "shellspec/curve_geometry.hpp"

namespace shellspec {

// Single-layer operator S(z) with kernel (m/pi) K_0(sqrt(2 m |z|) |x - y|), z < 0.
struct SingleLayerAssembly {
    SampledCurve curve;
    double mass = 1.0;
    double energy = -1.0;
    Eigen::MatrixXd s_matrix;  // Nystrom matrix (row i, column j carries the weight of node j)
};

struct ProjectionPair {
    Eigen::Matrix2d p_plus;
    Eigen::Vector2d e;
};

ProjectionPair projection_pair();

// M + log(1/tol) / sqrt(2 m |z|)
double single_layer_truncation_halflength(const CurveSpec& spec, double mass, double z,
                                          double tol = default_truncation_tol);

SingleLayerAssembly assemble_single_layer(const SampledCurve& curve, double mass, double z,
                                          const AssemblyOptions& opt = {});

// W^{1/2} S W^{-1/2}, symmetrized; eigenvalues of S(z) in weighted L^2.
Eigen::MatrixXd symmetrized_single_layer(const SingleLayerAssembly& a);

// Eigenvalues of S(z) in decreasing order.
Eigen::VectorXd single_layer_eigenvalues(const SingleLayerAssembly& a);

struct SchrodingerEigenvalue {
    double z;
    double residual;  // smallest |eigenvalue| of I + eta S(z) at z
};

struct SchrodingerOptions {
    int steps = 40;
    double z_tol = 1e-12;
    int max_roots = 0;  // 0: all; otherwise only the lowest ones
    AssemblyOptions assembly;
};

// Eigenvalues of H_eta in the window (Birman-Schwinger counting), increasing.
std::vector<SchrodingerEigenvalue> schrodinger_eigenvalues(const SampledCurve& curve, double mass, double eta,
                                                           Interval window, const SchrodingerOptions& opt = {});

struct KernelLimitDeviation {
    double cz_deviation = 0.0;         // || e^T C_{z+mc^2} e - S(z) ||, weighted L^2 operator norm
    double cz_max_entry = 0.0;         // max |difference kernel| over separated node pairs
    double phi_deviation = 0.0;        // || Phi e - SL e ||, curve to probe box
    double phi_adjoint_deviation = 0.0;  // || e^T Phi^* - e^T SL^* ||, probe box to curve
};

// The Dirac side uses couplings only through c; eta is irrelevant for these kernels.
KernelLimitDeviation kernel_limit_deviation(const SampledCurve& curve, double mass, double z, double c,
                                            const AssemblyOptions& opt = {});

struct NonrelFit {
    std::vector<double> c;
    std::vector<double> err;
    std::vector<double> dirac_shifted;  // E_D(c) - m c^2
    double schrodinger = 0.0;           // E_S
    double slope = 0.0;                 // least-squares slope of log err against log c
    bool monotone = false;
};

struct NonrelOptions {
    double nodes_per_unit = 0.0;  // 0: about 600 nodes
    int dirac_scan_steps = 9;
    double dirac_window = 0.05;
    AssemblyOptions assembly;
};

// Compares the lowest eigenvalue of H_eta with the Dirac eigenvalue of A_{eta/2, eta/2, 0} (minus m c^2).
NonrelFit nonrel_limit_experiment(const CurveSpec& spec, double mass, double eta, const std::vector<double>& c_grid,
                                  const NonrelOptions& opt = {});

}  // namespace shellspec
