#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shellspec/boundary_integral.hpp"
#include "shellspec/curve_geometry.hpp"

namespace shellspec {

struct CertificateInput {
    double tau = -1.0;
    double mass = 1.0;
    double c = 1.0;
    int n = 1;  // number of eigenvalues to certify
    double L = 20.0;
    double omega = 1e-3;

    void validate() const;
    double r() const;          // L tan(omega)
    double decay_rate() const;  // -4 m c^2 tau / (4c^2 + tau^2)
};

struct BracketTerms {
    double first = 0.0;   // the only omega-dependent term
    double second = 0.0;
    double third = 0.0;
    double value() const { return first + second + third; }
};

BracketTerms bracket_terms(const CertificateInput& in);
double bracket(const CertificateInput& in);

// |m| c^2 |4c^2 - tau^2| / (4c^2 + tau^2)
double essential_gap_edge(double tau, double mass, double c);

struct OmegaStar {
    double L = 0.0;
    double omega_star = 0.0;
    double bracket = 0.0;  // second + third at L (the omega -> 0 limit)
};

// Largest certifiable angle over a log grid of L in [l_min + 1, 1e4], refined locally.
std::optional<OmegaStar> find_omega_star(double tau, double mass, double c, int n, double l_min = 2.0);

// x-coordinate beyond which a smoothed corner coincides with its asymptote rays, plus 1.
double certificate_l0(const CurveSpec& corner);

struct CertificateResult {
    BracketTerms terms;
    double bracket_value = 0.0;
    bool certified = false;
    double essential_gap_edge = 0.0;
    std::optional<OmegaStar> suggested;
};

CertificateResult certify(const CertificateInput& in, double l_min = 2.0);

struct CrossValidation {
    double gap_edge = 0.0;
    bool certified = false;
    std::vector<GapEigenvalue> eigenvalues;
    int found = 0;
    bool meets_n = false;
    bool omega_matches = false;
    std::string note;
};

struct CrossValidateOptions {
    int nodes = 600;
    double window_fraction = 0.92;  // scan (-f edge, f edge)
    ScanOptions scan;
};

// Scans A_{0, tau, 0} on the given corner over the gap and compares with the certificate.
CrossValidation cross_validate(const CertificateInput& in, const CurveSpec& corner,
                               const CrossValidateOptions& opt = {});

}  // namespace shellspec
