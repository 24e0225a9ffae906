#include "shellspec/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "shellspec/selfcheck.hpp"

namespace shellspec {

namespace {

Command command_from_name(const std::string& s)
{
    if (s == "bands") return Command::bands;
    if (s == "scan") return Command::scan;
    if (s == "certify") return Command::certify;
    if (s == "nonrel") return Command::nonrel;
    if (s == "selfcheck") return Command::selfcheck;
    throw ConfigError("unknown command \"" + s + "\"");
}

double positive(const json& j, const char* what)
{
    const double v = number_from_json(j);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
    return v;
}

int positive_int(const json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long>() <= 0) throw ConfigError(std::string(what) + " must be a positive integer");
    return j.get<int>();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

AssemblyOptions assembly_options(const JobConfig& cfg)
{
    AssemblyOptions a;
    a.tol = cfg.numerics.tol;
    a.threads = cfg.numerics.threads;
    return a;
}

SampledCurve sample_for(const JobConfig& cfg, const CurveSpec& spec, double L)
{
    const double npu =
        cfg.numerics.nodes_per_unit > 0.0 ? cfg.numerics.nodes_per_unit : nodes_per_unit_for(spec, L, cfg.numerics.nodes);
    return sample_curve(spec, npu, L);
}

// Largest open interval of the gap complement, pulled in by 8% of its length at each end.
Interval default_window(const SpectrumReport& rep)
{
    Interval best{0.0, 0.0};
    for (const auto& i : rep.gap_complement)
        if (i.hi - i.lo > best.hi - best.lo) best = i;
    if (!(best.hi > best.lo)) throw std::runtime_error("no spectral gap to scan");
    const double pad = 0.08 * (best.hi - best.lo);
    return {best.lo + pad, best.hi - pad};
}

int run_bands(const JobConfig& cfg, std::ostream& log)
{
    const SpectrumReport r = essential_spectrum(cfg.params);
    write_file(std::filesystem::path(cfg.out_dir) / "spectrum.json", dump(to_json(r)));
    log << "bands: " << r.bands.size() << " band(s), " << r.isolated_points.size() << " isolated point(s), regime "
        << regime_name(r.regime) << (r.critical ? ", critical" : "") << "\n";
    return exit_ok;
}

int run_scan(const JobConfig& cfg, std::ostream& log)
{
    if (!cfg.curve) throw ConfigError("scan needs a curve");
    if (is_confined(cfg.params)) log << "warning: confining couplings (d = -4c^2)\n";
    const SpectrumReport rep = essential_spectrum(cfg.params);
    const Interval w = cfg.numerics.window ? *cfg.numerics.window : default_window(rep);
    if (!rep.window_is_free(w.lo, w.hi)) throw ConfigError("scan window meets the essential spectrum");
    const CurveSpec spec = build_curve(*cfg.curve);
    const double zmax = std::max(std::fabs(w.lo), std::fabs(w.hi));
    const double L = truncation_halflength(spec, cfg.params, zmax, cfg.numerics.tol);
    const SampledCurve sc = sample_for(cfg, spec, L);
    ScanOptions so;
    so.steps = cfg.numerics.steps;
    so.assembly = assembly_options(cfg);
    if (is_critical(cfg.params)) log << "warning: critical couplings, the discretization is unreliable here\n";
    EigenScanResult res = bs_eigenvalue_scan(sc, cfg.params, w, so);

    if (cfg.field && !res.eigenvalues.empty()) {
        const FieldGrid& g = *cfg.field;
        std::vector<Vec2> pts;
        for (int a = 0; a < g.nx; ++a)
            for (int b = 0; b < g.ny; ++b) {
                const Vec2 x(g.xmin + (g.xmax - g.xmin) * a / std::max(g.nx - 1, 1),
                             g.ymin + (g.ymax - g.ymin) * b / std::max(g.ny - 1, 1));
                if (admissible_field_point(sc, x)) pts.push_back(x);
            }
        const BSAssembly a = assemble_cz(sc, cfg.params, res.eigenvalues.front().z, so.assembly);
        res.field_samples = reconstruct_eigenfunction(a, res.densities.front(), pts);
        write_file(std::filesystem::path(cfg.out_dir) / "field.csv", field_csv(res.field_samples));
    }
    json j = to_json(res);
    j["window"] = {w.lo, w.hi};
    j["nodes"] = sc.size();
    j["truncation_halflength"] = L;
    write_file(std::filesystem::path(cfg.out_dir) / "scan.json", dump(j));
    write_file(std::filesystem::path(cfg.out_dir) / "scan.csv", scan_csv(res));
    log << "scan: " << res.eigenvalues.size() << " eigenvalue(s) in [" << w.lo << ", " << w.hi << "]";
    for (const auto& e : res.eigenvalues) log << " " << std::setprecision(10) << e.z;
    log << ", min |mu+1| " << res.min_residual << "\n";
    return exit_ok;
}

int run_certify(const JobConfig& cfg, std::ostream& log)
{
    CertificateInput in;
    in.tau = cfg.params.tau;
    in.mass = cfg.params.mass;
    in.c = cfg.params.c;
    in.n = cfg.n;
    double l_min = 2.0;
    if (cfg.curve && cfg.curve->family == CurveFamily::smoothed_corner) l_min = certificate_l0(*cfg.curve);
    if (!cfg.L || !cfg.omega) {
        const auto star = find_omega_star(in.tau, in.mass, in.c, in.n, l_min);
        if (!star) throw std::runtime_error("no certifiable L found");
        in.L = cfg.L ? *cfg.L : star->L;
        // just inside the supremum, where the bracket is still negative
        in.omega = cfg.omega ? *cfg.omega : star->omega_star * (1.0 - 1e-6);
    } else {
        in.L = *cfg.L;
        in.omega = *cfg.omega;
    }
    const CertificateResult r = certify(in, l_min);
    json j = to_json(in, r);
    j["L0"] = l_min;
    // the test functions live on [L, 2L] x R, where the curve must already be straight
    j["L_admissible"] = in.L >= l_min;
    if (in.L < l_min) log << "warning: L = " << in.L << " is below L0 = " << l_min << " for this curve\n";
    if (cfg.cross_validate) {
        if (!cfg.curve) throw ConfigError("cross_validate needs a smoothed_corner curve");
        CrossValidateOptions co;
        co.nodes = cfg.numerics.nodes;
        co.scan.steps = cfg.numerics.steps;
        co.scan.assembly = assembly_options(cfg);
        j["cross_validation"] = to_json(cross_validate(in, *cfg.curve, co));
    }
    write_file(std::filesystem::path(cfg.out_dir) / "certificate.json", dump(j));
    log << "certify: bracket " << r.bracket_value << (r.certified ? " (certified)" : " (not certified)");
    if (r.suggested) log << ", omega_star " << r.suggested->omega_star << " at L " << r.suggested->L;
    log << "\n";
    return exit_ok;
}

int run_nonrel(const JobConfig& cfg, std::ostream& log)
{
    if (!cfg.curve) throw ConfigError("nonrel needs a curve");
    if (cfg.curve->family == CurveFamily::straight_line) throw ConfigError("nonrel needs a curve other than the line");
    if (!(cfg.nonrel_eta < 0.0)) throw ConfigError("nonrel needs eta < 0");
    NonrelOptions o;
    o.assembly = assembly_options(cfg);
    o.nodes_per_unit = cfg.numerics.nodes_per_unit;
    const NonrelFit f = nonrel_limit_experiment(*cfg.curve, cfg.params.mass, cfg.nonrel_eta, cfg.c_grid, o);
    write_file(std::filesystem::path(cfg.out_dir) / "nonrel.json", dump(to_json(f)));
    log << "nonrel: E_S " << std::setprecision(10) << f.schrodinger << ", slope " << f.slope << "\n";
    return exit_ok;
}

int run_selfcheck(const JobConfig& cfg, std::ostream& log)
{
    const auto results = shellspec::run_selfcheck(cfg.numerics.threads);
    json arr = json::array();
    bool ok = true;
    for (const auto& r : results) {
        log << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.module << std::setw(40) << r.name << r.detail
            << "\n";
        arr.push_back({{"module", r.module}, {"check", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        ok = ok && r.pass;
    }
    write_file(std::filesystem::path(cfg.out_dir) / "selfcheck.json", dump(arr));
    return ok ? exit_ok : exit_selfcheck_failed;
}

}  // namespace

std::string command_name(Command c)
{
    switch (c) {
    case Command::bands: return "bands";
    case Command::scan: return "scan";
    case Command::certify: return "certify";
    case Command::nonrel: return "nonrel";
    case Command::selfcheck: return "selfcheck";
    }
    return "?";
}

JobConfig parse_config(const json& j)
{
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        JobConfig cfg;
        if (!j.contains("command")) throw ConfigError("config needs a command");
        cfg.command = command_from_name(j.at("command").get<std::string>());
        if (j.contains("params")) {
            cfg.params = params_from_json(j.at("params"));
            if (!(cfg.params.c > 0.0)) throw ConfigError("c must be positive");
        }
        if (j.contains("curve")) cfg.curve = curve_from_json(j.at("curve"));
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
        if (j.contains("numerics")) {
            const json& n = j.at("numerics");
            if (n.contains("nodes")) cfg.numerics.nodes = positive_int(n.at("nodes"), "nodes");
            if (n.contains("nodes_per_unit")) cfg.numerics.nodes_per_unit = positive(n.at("nodes_per_unit"), "nodes_per_unit");
            if (n.contains("tol")) cfg.numerics.tol = positive(n.at("tol"), "tol");
            if (n.contains("steps")) cfg.numerics.steps = positive_int(n.at("steps"), "steps");
            if (n.contains("threads")) cfg.numerics.threads = positive_int(n.at("threads"), "threads");
            if (n.contains("window")) {
                const json& w = n.at("window");
                if (!w.is_array() || w.size() != 2) throw ConfigError("window must be [lo, hi]");
                cfg.numerics.window = Interval{number_from_json(w[0]), number_from_json(w[1])};
                if (!(cfg.numerics.window->hi > cfg.numerics.window->lo)) throw ConfigError("window is empty");
            }
            if (cfg.numerics.steps < 3) throw ConfigError("steps must be at least 3");
            if (!(cfg.numerics.tol < 1.0)) throw ConfigError("tol must be below 1");
        }
        if (j.contains("field")) {
            const json& f = j.at("field");
            FieldGrid g;
            if (f.contains("xmin")) g.xmin = number_from_json(f.at("xmin"));
            if (f.contains("xmax")) g.xmax = number_from_json(f.at("xmax"));
            if (f.contains("ymin")) g.ymin = number_from_json(f.at("ymin"));
            if (f.contains("ymax")) g.ymax = number_from_json(f.at("ymax"));
            if (f.contains("nx")) g.nx = positive_int(f.at("nx"), "nx");
            if (f.contains("ny")) g.ny = positive_int(f.at("ny"), "ny");
            cfg.field = g;
        }
        if (j.contains("certificate")) {
            const json& c = j.at("certificate");
            if (c.contains("N")) cfg.n = positive_int(c.at("N"), "N");
            if (c.contains("L")) cfg.L = positive(c.at("L"), "L");
            if (c.contains("omega")) cfg.omega = positive(c.at("omega"), "omega");
            if (c.contains("cross_validate")) cfg.cross_validate = c.at("cross_validate").get<bool>();
        }
        if (j.contains("nonrel")) {
            const json& n = j.at("nonrel");
            if (n.contains("eta")) cfg.nonrel_eta = number_from_json(n.at("eta"));
            if (n.contains("c_grid")) {
                cfg.c_grid.clear();
                for (const auto& c : n.at("c_grid")) cfg.c_grid.push_back(positive(c, "c_grid entry"));
            }
        }
        switch (cfg.command) {
        case Command::scan:
        case Command::nonrel:
            if (!cfg.curve) throw ConfigError(command_name(cfg.command) + " needs a curve");
            break;
        case Command::certify:
            if (!(cfg.params.tau < 0.0)) throw ConfigError("certify needs tau < 0");
            if (!(cfg.params.mass > 0.0)) throw ConfigError("certify needs m > 0");
            break;
        default: break;
        }
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

int run(const JobConfig& cfg, std::ostream& log)
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    try {
        switch (cfg.command) {
        case Command::bands: return run_bands(cfg, log);
        case Command::scan: return run_scan(cfg, log);
        case Command::certify: return run_certify(cfg, log);
        case Command::nonrel: return run_nonrel(cfg, log);
        case Command::selfcheck: return run_selfcheck(cfg, log);
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_config;
}

int cli_main(int argc, char** argv)
{
    CLI::App app{"Dirac delta-shell spectra on curves with straight ends"};
    std::string config_path, out_dir, command;
    int threads = 0;
    double tol = 0.0;
    app.add_option("--config", config_path, "JSON job configuration");
    app.add_option("--out", out_dir, "output directory (default: config \"out\" or .)");
    app.add_option("--threads", threads, "worker threads (default: SHELLSPEC_THREADS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "kernel truncation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--command", command, "command when no config is given (e.g. selfcheck)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    json j;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "config error: cannot open " << config_path << "\n";
            return exit_config;
        }
        try {
            j = json::parse(f);
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return exit_config;
        }
    } else if (!command.empty()) {
        j = {{"command", command}};
    } else {
        std::cerr << "config error: --config or --command is required\n";
        return exit_config;
    }
    if (!command.empty()) j["command"] = command;

    JobConfig cfg;
    try {
        cfg = parse_config(j);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.numerics.threads = threads;
    if (tol > 0.0) cfg.numerics.tol = tol;
    return run(cfg, std::cout);
}

}  // namespace shellspec
