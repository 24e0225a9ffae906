#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shellspec/bound_state_certifier.hpp"
#include "shellspec/cli.hpp"
#include "shellspec/schrodinger_reference.hpp"
#include "shellspec/selfcheck.hpp"

namespace py = pybind11;
using namespace shellspec;

namespace {

SampledCurve sample_for_window(const CurveSpec& spec, const InteractionParams& p, double zmax, int nodes, double tol)
{
    const double L = truncation_halflength(spec, p, zmax, tol);
    return sample_curve(spec, nodes_per_unit_for(spec, L, nodes), L);
}

AssemblyOptions assembly(double tol, int threads)
{
    AssemblyOptions o;
    o.tol = tol;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Dirac delta-shell spectra on curves with straight ends";

    py::class_<InteractionParams>(m, "InteractionParams")
        .def(py::init([](double eta, double tau, double lambda_, double mass, double c) {
                 InteractionParams p;
                 p.eta = eta;
                 p.tau = tau;
                 p.lambda = lambda_;
                 p.mass = mass;
                 p.c = c;
                 p.validate();
                 return p;
             }),
             py::arg("eta") = 0.0, py::arg("tau") = 0.0, py::arg("lam") = 0.0, py::arg("mass") = 1.0, py::arg("c") = 1.0)
        .def_readwrite("eta", &InteractionParams::eta)
        .def_readwrite("tau", &InteractionParams::tau)
        .def_readwrite("lam", &InteractionParams::lambda)
        .def_readwrite("mass", &InteractionParams::mass)
        .def_readwrite("c", &InteractionParams::c)
        .def_property_readonly("d", &InteractionParams::d)
        .def("__repr__", [](const InteractionParams& p) {
            std::ostringstream os;
            os << "InteractionParams(eta=" << p.eta << ", tau=" << p.tau << ", lam=" << p.lambda << ", mass=" << p.mass
               << ", c=" << p.c << ")";
            return os.str();
        });

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("__iter__", [](const Interval& i) { return py::iter(py::make_tuple(i.lo, i.hi)); })
        .def("__repr__", [](const Interval& i) { return "Interval(" + format_double(i.lo) + ", " + format_double(i.hi) + ")"; });

    py::class_<SpectrumReport>(m, "SpectrumReport")
        .def_readonly("bands", &SpectrumReport::bands)
        .def_readonly("isolated_points", &SpectrumReport::isolated_points)
        .def_readonly("critical", &SpectrumReport::critical)
        .def_readonly("gap_complement", &SpectrumReport::gap_complement)
        .def_property_readonly("regime", [](const SpectrumReport& r) { return regime_name(r.regime); })
        .def("contains", &SpectrumReport::contains, py::arg("z"), py::arg("tol") = 0.0)
        .def("to_json", [](const SpectrumReport& r) { return to_json(r).dump(); });

    m.def("essential_spectrum", &essential_spectrum, py::arg("params"));
    m.def("z_pm", &z_pm, py::arg("k"), py::arg("sign"), py::arg("params"));
    m.def("is_confined", &is_confined);
    m.def("is_critical", &is_critical);
    m.def("isospectral_partner", [](const InteractionParams& p) { return isospectral_partners(p).inverted; });

    m.def("bessel_k", py::overload_cast<int, cplx>(&bessel_k), py::arg("order"), py::arg("xi"));
    m.def("green_kernel", [](cplx z, double x, double y, const InteractionParams& p) {
        return Eigen::Matrix2cd(green_kernel(z, Vec2(x, y), p));
    });

    py::class_<CurveSpec>(m, "Curve")
        .def_property_readonly("family", [](const CurveSpec& c) { return family_name(c.family); })
        .def_readonly("omega", &CurveSpec::omega)
        .def_readonly("width", &CurveSpec::width)
        .def_readonly("amplitude", &CurveSpec::amplitude)
        .def_readonly("bi_lipschitz", &CurveSpec::bi_lipschitz)
        .def("point", [](const CurveSpec& c, double s) { return Eigen::Vector2d(c.point(s)); })
        .def("tangent", [](const CurveSpec& c, double s) { return Eigen::Vector2d(c.tangent(s)); })
        .def("normal", [](const CurveSpec& c, double s) { return Eigen::Vector2d(c.normal(s)); });
    m.def("straight_line", [](double width) { return build_curve(straight_line(width)); }, py::arg("width") = 1.0);
    m.def("smoothed_corner", [](double omega, double width) { return build_curve(smoothed_corner(omega, width)); },
          py::arg("omega"), py::arg("width") = 1.0);
    m.def("perturbed_line", [](double amplitude, double width) { return build_curve(perturbed_line(amplitude, width)); },
          py::arg("amplitude"), py::arg("width") = 1.0);

    py::class_<GapEigenvalue>(m, "GapEigenvalue")
        .def_readonly("z", &GapEigenvalue::z)
        .def_readonly("residual", &GapEigenvalue::residual)
        .def_readonly("multiplicity", &GapEigenvalue::multiplicity)
        .def("__repr__", [](const GapEigenvalue& g) { return "GapEigenvalue(z=" + format_double(g.z) + ")"; });
    py::class_<EigenScanResult>(m, "EigenScanResult")
        .def_readonly("eigenvalues", &EigenScanResult::eigenvalues)
        .def_readonly("min_residual", &EigenScanResult::min_residual)
        .def_readonly("critical_warning", &EigenScanResult::critical_warning)
        .def_property_readonly("samples", [](const EigenScanResult& r) {
            py::list out;
            for (const auto& s : r.samples) out.append(py::make_tuple(s.z, s.min_residual, s.converged));
            return out;
        });

    m.def(
        "scan",
        [](const CurveSpec& curve, const InteractionParams& p, double lo, double hi, int nodes, int steps, double tol,
           int threads) {
            const SampledCurve sc = sample_for_window(curve, p, std::max(std::fabs(lo), std::fabs(hi)), nodes, tol);
            ScanOptions so;
            so.steps = steps;
            so.assembly = assembly(tol, threads);
            py::gil_scoped_release release;
            return bs_eigenvalue_scan(sc, p, {lo, hi}, so);
        },
        py::arg("curve"), py::arg("params"), py::arg("lo"), py::arg("hi"), py::arg("nodes") = 600, py::arg("steps") = 80,
        py::arg("tol") = default_truncation_tol, py::arg("threads") = 0);

    m.def(
        "identity_defect",
        [](const CurveSpec& curve, const InteractionParams& p, double z, int nodes, double tol) {
            const SampledCurve sc = sample_for_window(curve, p, std::fabs(z), nodes, tol);
            py::gil_scoped_release release;
            return cz_identity_defect(assemble_cz(sc, p, z, assembly(tol, 0))).compressed;
        },
        py::arg("curve"), py::arg("params"), py::arg("z") = 0.0, py::arg("nodes") = 600, py::arg("tol") = default_truncation_tol);

    m.def(
        "cz_matrix",
        [](const CurveSpec& curve, const InteractionParams& p, double z, int nodes, double tol) {
            const SampledCurve sc = sample_for_window(curve, p, std::fabs(z), nodes, tol);
            return assemble_cz(sc, p, z, assembly(tol, 0)).cz_matrix;
        },
        py::arg("curve"), py::arg("params"), py::arg("z") = 0.0, py::arg("nodes") = 300, py::arg("tol") = default_truncation_tol);

    py::class_<SchrodingerEigenvalue>(m, "SchrodingerEigenvalue")
        .def_readonly("z", &SchrodingerEigenvalue::z)
        .def_readonly("residual", &SchrodingerEigenvalue::residual);
    m.def(
        "schrodinger_eigenvalues",
        [](const CurveSpec& curve, double mass, double eta, double lo, double hi, int nodes, int max_roots) {
            const double L = single_layer_truncation_halflength(curve, mass, hi);
            const SampledCurve sc = sample_curve(curve, nodes_per_unit_for(curve, L, nodes), L);
            SchrodingerOptions so;
            so.max_roots = max_roots;
            py::gil_scoped_release release;
            return schrodinger_eigenvalues(sc, mass, eta, {lo, hi}, so);
        },
        py::arg("curve"), py::arg("mass"), py::arg("eta"), py::arg("lo"), py::arg("hi"), py::arg("nodes") = 600,
        py::arg("max_roots") = 0);

    py::class_<CertificateInput>(m, "CertificateInput")
        .def(py::init([](double tau, double mass, double c, int n, double L, double omega) {
                 CertificateInput in;
                 in.tau = tau;
                 in.mass = mass;
                 in.c = c;
                 in.n = n;
                 in.L = L;
                 in.omega = omega;
                 in.validate();
                 return in;
             }),
             py::arg("tau") = -1.0, py::arg("mass") = 1.0, py::arg("c") = 1.0, py::arg("n") = 1, py::arg("L") = 20.0,
             py::arg("omega") = 1e-3)
        .def_readonly("tau", &CertificateInput::tau)
        .def_readonly("L", &CertificateInput::L)
        .def_readonly("omega", &CertificateInput::omega);
    py::class_<OmegaStar>(m, "OmegaStar")
        .def_readonly("L", &OmegaStar::L)
        .def_readonly("omega_star", &OmegaStar::omega_star)
        .def_readonly("bracket", &OmegaStar::bracket);
    py::class_<CertificateResult>(m, "CertificateResult")
        .def_readonly("bracket", &CertificateResult::bracket_value)
        .def_readonly("certified", &CertificateResult::certified)
        .def_readonly("essential_gap_edge", &CertificateResult::essential_gap_edge)
        .def_readonly("suggested", &CertificateResult::suggested);
    m.def("bracket", &bracket, py::arg("input"));
    m.def("certify", &certify, py::arg("input"), py::arg("l_min") = 2.0);
    m.def("find_omega_star", &find_omega_star, py::arg("tau"), py::arg("mass") = 1.0, py::arg("c") = 1.0, py::arg("n") = 1,
          py::arg("l_min") = 2.0);

    m.def("selfcheck", [](int threads) {
        py::list out;
        for (const auto& r : run_selfcheck(threads)) out.append(py::make_tuple(r.module, r.name, r.pass, r.detail));
        return out;
    }, py::arg("threads") = 0);

    m.def(
        "run_config",
        [](const std::string& config_json) {
            std::ostringstream log;
            const JobConfig cfg = parse_config(json::parse(config_json));
            const int code = run(cfg, log);
            return py::make_tuple(code, log.str());
        },
        py::arg("config_json"));
}
