#pragma once

#include <vector>

namespace shellspec {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], increasing
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

// Cached rule; returns a reference valid for the program lifetime.
const GaussRule& gauss_legendre_cached(int n);

// P_0(x) ... P_{n-1}(x) into out[0..n-1].
void legendre_values(int n, double x, double* out);

}  // namespace shellspec
