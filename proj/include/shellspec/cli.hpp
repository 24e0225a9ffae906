#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shellspec/bound_state_certifier.hpp"
#include "shellspec/io.hpp"

namespace shellspec {

enum class Command { bands, scan, certify, nonrel, selfcheck };

std::string command_name(Command c);

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Numerics {
    int nodes = 600;              // target node count when nodes_per_unit is 0
    double nodes_per_unit = 0.0;
    double tol = default_truncation_tol;
    int steps = 80;
    std::optional<Interval> window;
    int threads = 0;
};

struct FieldGrid {
    double xmin = -3, xmax = 3, ymin = -3, ymax = 3;
    int nx = 31, ny = 31;
};

struct JobConfig {
    Command command = Command::bands;
    InteractionParams params;
    std::optional<CurveSpec> curve;
    Numerics numerics;
    std::string out_dir = ".";
    std::optional<FieldGrid> field;
    // certify
    int n = 1;
    std::optional<double> L;
    std::optional<double> omega;
    bool cross_validate = false;
    // nonrel
    double nonrel_eta = -1.0;
    std::vector<double> c_grid{4, 8, 16, 32};
};

enum ExitCode { exit_ok = 0, exit_selfcheck_failed = 1, exit_config = 2, exit_numerical = 3 };

// Throws ConfigError on malformed or incomplete input.
JobConfig parse_config(const json& j);

// Runs one job, writing artifacts into cfg.out_dir and a summary to `log`.
int run(const JobConfig& cfg, std::ostream& log);

// argv front end: --config PATH, --out DIR, --threads N, --tol X.
int cli_main(int argc, char** argv);

}  // namespace shellspec
