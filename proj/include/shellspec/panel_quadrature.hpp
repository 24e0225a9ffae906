#pragma once

#include <vector>

namespace shellspec {

// Product-integration weights on one Gauss-Legendre panel [a, b] of order p for a
// target parameter s0:
//   int_a^b f(t) / (s0 - t) dt  ~  sum_j cauchy[j] f(t_j)   (principal value if s0 in (a, b))
//   int_a^b f(t) log|s0 - t| dt ~  sum_j logw[j]  f(t_j)
void singular_weights(double s0, double a, double b, int p, double* cauchy, double* logw);

// Legendre moments on [-1, 1] for a target x0:
//   mc[k] = int P_k(u) / (x0 - u) du,  ml[k] = int P_k(u) log|x0 - u| du,  k < n.
void legendre_moments(double x0, int n, double* mc, double* ml);

// Lagrange interpolation matrix (row-major, nt x p) from the p-point Gauss-Legendre nodes
// on [-1, 1] to the points `targets`.
std::vector<double> interpolation_matrix(int p, const std::vector<double>& targets);

}  // namespace shellspec
