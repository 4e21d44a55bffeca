#pragma once

#include "ksrad/checks.hpp"
#include "ksrad/harness.hpp"
#include "ksrad/initial_data.hpp"
#include "ksrad/params.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ksrad::cli {

/// Fully resolved run configuration. Every key has an explicit value after
/// parsing; echo() emits the whole registry so that re-parsing the echoed
/// text reproduces the spec exactly.
struct RunSpec {
    std::string subcommand; // simulate | verify | eps-sweep | blowup-scan | oracle | calibrate

    ModelParams params;
    GridSpec grid{3, 1.0, 128};
    InitialDataSpec u0{InitialDataKind::poly_bump, 1.0, 0.0, 0.1};

    double t_end = 1.0;
    double cadence = 0.01;
    double t_budget = 1.0;
    double eps0 = 0.1;
    int levels = 5;
    std::vector<double> m_list{500.0};
    std::vector<double> eps_grid{1e-1, 1e-2, 1e-3, 1e-4};

    std::string outdir = "out";
    int workers = 1;
    std::uint64_t seed = 0;
    int probes = 100;
    bool plots = false;
    std::string resume;         // checkpoint to resume from (simulate)
    std::string checkpoint_out; // checkpoint path to write at the end (simulate)
    GradCoefficient coef = GradCoefficient::five_q;

    CheckMatrix matrix; // resolved: defaults for params, then overrides

    /// One "key = value" line per registry key, in registry order.
    std::vector<std::string> echo() const;
};

struct ParseError {
    std::string key; // offending key/flag ("" for file-level problems)
    std::string message;
};

/// Parse a config file (optional) plus command-line "key=value" overrides.
/// Unknown keys are errors; every constraint violation names its field.
/// Environment variables KSRAD_OUTDIR and KSRAD_WORKERS supply defaults for
/// the output directory and worker count.
RunSpec parse_config(const std::string& subcommand, const std::string& config_path,
                     const std::vector<std::string>& overrides, std::vector<ParseError>& errors);

/// The subcommand entry point used by main(); returns the process exit code
/// (0 ok, 1 runtime error, 2 completed with check violations).
int run(const RunSpec& spec);

/// `ksrad oracle <name> key=value...`: closed-form oracle evaluation.
int run_oracle(const std::vector<std::string>& args);

} // namespace ksrad::cli
