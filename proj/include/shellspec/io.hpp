#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "shellspec/band_structure.hpp"
#include "shellspec/boundary_integral.hpp"
#include "shellspec/bound_state_certifier.hpp"
#include "shellspec/schrodinger_reference.hpp"

namespace shellspec {

using json = nlohmann::json;

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

// Infinite values travel as the strings "inf" and "-inf".
json number_to_json(double x);
double number_from_json(const json& j);

json to_json(const InteractionParams& p);
InteractionParams params_from_json(const json& j);

json to_json(const CurveSpec& spec);
CurveSpec curve_from_json(const json& j);

json to_json(const SpectrumReport& r);
SpectrumReport spectrum_from_json(const json& j);

json to_json(const EigenScanResult& r);
json to_json(const CertificateInput& in, const CertificateResult& r);
json to_json(const CrossValidation& v);
json to_json(const NonrelFit& f);

// Columns z, min_residual, converged.
std::string scan_csv(const EigenScanResult& r);
// Columns x, y, abs_u1_sq, abs_u2_sq.
std::string field_csv(const std::vector<FieldSample>& samples);

}  // namespace shellspec
