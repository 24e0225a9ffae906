#pragma once

#include <string>
#include <vector>

#include "shellspec/dirac_core.hpp"

namespace shellspec {

struct Interval {
    double lo;
    double hi;
};

enum class SpectrumRegime { d_eq_4c2_lambda_nonzero, d_eq_4c2_lambda_zero, generic };

std::string regime_name(SpectrumRegime r);
SpectrumRegime regime_from_name(const std::string& s);

struct SpectrumReport {
    std::vector<Interval> bands;  // closed, disjoint, increasing; may use +-infinity
    std::vector<double> isolated_points;
    SpectrumRegime regime = SpectrumRegime::generic;
    bool critical = false;
    std::vector<Interval> gap_complement;  // open intervals of the gap free of spectrum

    bool contains(double z, double tol = 0.0) const;
    // Open interval inside the gap complement, or false.
    bool window_is_free(double lo, double hi) const;
};

bool d_equals_4c2(const InteractionParams& p);

SpectrumReport essential_spectrum(const InteractionParams& p);

// The displayed band functions z_+(k) (sign = +1) and z_-(k) (sign = -1); requires d != 4c^2.
double z_pm(double k, int sign, const InteractionParams& p);

// Fourier symbol of C_z on the straight line at momentum p.
Mat2 line_symbol(double p, cplx z, const InteractionParams& params);

struct MuValue {
    cplx value;
    bool complex_radicand = false;
};

MuValue mu_pm(double p, int sign, const InteractionParams& params);

struct MuAsymptotics {
    bool bounded_positive = false;  // some mu_{+-} stays bounded as p -> +inf
    bool bounded_negative = false;  // ... as p -> -inf
    bool any_bounded() const { return bounded_positive || bounded_negative; }
};

MuAsymptotics mu_asymptotics(const InteractionParams& params);

}  // namespace shellspec
