#include "shellspec/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace shellspec {

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json number_to_json(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

double number_from_json(const json& j)
{
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("expected a number, got \"" + s + "\"");
    }
    if (!j.is_number()) throw std::invalid_argument("expected a number");
    return j.get<double>();
}

json to_json(const InteractionParams& p)
{
    return {{"eta", p.eta}, {"tau", p.tau}, {"lambda", p.lambda}, {"mass", p.mass}, {"c", p.c}};
}

InteractionParams params_from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("params must be an object");
    InteractionParams p;
    for (const auto& [key, value] : j.items()) {
        const double v = number_from_json(value);
        if (key == "eta")
            p.eta = v;
        else if (key == "tau")
            p.tau = v;
        else if (key == "lambda")
            p.lambda = v;
        else if (key == "mass" || key == "m")
            p.mass = v;
        else if (key == "c" || key == "light_speed")
            p.c = v;
        else
            throw std::invalid_argument("unknown params field \"" + key + "\"");
    }
    p.validate();
    return p;
}

json to_json(const CurveSpec& s)
{
    json j{{"family", family_name(s.family)}, {"width", s.width}};
    if (s.family == CurveFamily::smoothed_corner) j["omega"] = s.omega;
    if (s.family == CurveFamily::perturbed_line) j["amplitude"] = s.amplitude;
    return j;
}

CurveSpec curve_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("family")) throw std::invalid_argument("curve needs a family");
    const CurveFamily f = family_from_name(j.at("family").get<std::string>());
    const double width = j.contains("width") ? number_from_json(j.at("width")) : 1.0;
    switch (f) {
    case CurveFamily::straight_line: return straight_line(width);
    case CurveFamily::smoothed_corner:
        if (!j.contains("omega")) throw std::invalid_argument("smoothed_corner needs omega");
        return smoothed_corner(number_from_json(j.at("omega")), width);
    case CurveFamily::perturbed_line:
        if (!j.contains("amplitude")) throw std::invalid_argument("perturbed_line needs amplitude");
        return perturbed_line(number_from_json(j.at("amplitude")), width);
    }
    throw std::invalid_argument("unknown curve family");
}

namespace {

json intervals_to_json(const std::vector<Interval>& v)
{
    json a = json::array();
    for (const auto& i : v) a.push_back(json::array({number_to_json(i.lo), number_to_json(i.hi)}));
    return a;
}

std::vector<Interval> intervals_from_json(const json& a)
{
    std::vector<Interval> v;
    for (const auto& e : a) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("interval must be a pair");
        v.push_back({number_from_json(e[0]), number_from_json(e[1])});
    }
    return v;
}

}  // namespace

json to_json(const SpectrumReport& r)
{
    json pts = json::array();
    for (double x : r.isolated_points) pts.push_back(number_to_json(x));
    return {{"bands", intervals_to_json(r.bands)},
            {"points", pts},
            {"regime", regime_name(r.regime)},
            {"critical", r.critical},
            {"gap_complement", intervals_to_json(r.gap_complement)}};
}

SpectrumReport spectrum_from_json(const json& j)
{
    SpectrumReport r;
    r.bands = intervals_from_json(j.at("bands"));
    for (const auto& x : j.at("points")) r.isolated_points.push_back(number_from_json(x));
    r.regime = regime_from_name(j.at("regime").get<std::string>());
    r.critical = j.at("critical").get<bool>();
    if (j.contains("gap_complement")) r.gap_complement = intervals_from_json(j.at("gap_complement"));
    return r;
}

json to_json(const EigenScanResult& r)
{
    json eig = json::array();
    for (const auto& e : r.eigenvalues) eig.push_back({{"z", e.z}, {"residual", e.residual}, {"multiplicity", e.multiplicity}});
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"z", s.z}, {"min_residual", s.min_residual}, {"converged", s.converged}});
    return {{"eigenvalues", eig},
            {"samples", samples},
            {"min_residual", r.min_residual},
            {"critical_warning", r.critical_warning},
            {"field_samples", r.field_samples.size()}};
}

json to_json(const CertificateInput& in, const CertificateResult& r)
{
    json j{{"tau", in.tau},
           {"mass", in.mass},
           {"c", in.c},
           {"N", in.n},
           {"L", in.L},
           {"omega", in.omega},
           {"bracket", r.bracket_value},
           {"terms", {{"first", r.terms.first}, {"second", r.terms.second}, {"third", r.terms.third}}},
           {"certified", r.certified},
           {"essential_gap_edge", r.essential_gap_edge}};
    if (r.suggested) {
        j["omega_star"] = r.suggested->omega_star;
        j["omega_star_L"] = r.suggested->L;
    } else {
        j["omega_star"] = nullptr;
    }
    return j;
}

json to_json(const CrossValidation& v)
{
    json eig = json::array();
    for (const auto& e : v.eigenvalues) eig.push_back({{"z", e.z}, {"residual", e.residual}});
    return {{"gap_edge", v.gap_edge}, {"certified", v.certified}, {"eigenvalues", eig},
            {"found", v.found},       {"meets_n", v.meets_n},     {"omega_matches", v.omega_matches},
            {"note", v.note}};
}

json to_json(const NonrelFit& f)
{
    return {{"c", f.c},
            {"err", f.err},
            {"dirac_shifted", f.dirac_shifted},
            {"schrodinger", f.schrodinger},
            {"slope", f.slope},
            {"monotone", f.monotone}};
}

std::string scan_csv(const EigenScanResult& r)
{
    std::ostringstream os;
    os << "z,min_residual,converged\n";
    for (const auto& s : r.samples)
        os << format_double(s.z) << ',' << format_double(s.min_residual) << ',' << (s.converged ? 1 : 0) << '\n';
    return os.str();
}

std::string field_csv(const std::vector<FieldSample>& samples)
{
    std::ostringstream os;
    os << "x,y,abs_u1_sq,abs_u2_sq\n";
    for (const auto& f : samples)
        os << format_double(f.x.x()) << ',' << format_double(f.x.y()) << ',' << format_double(std::norm(f.u(0))) << ','
           << format_double(std::norm(f.u(1))) << '\n';
    return os.str();
}

}  // namespace shellspec
