#pragma once

#include "ksrad/checks.hpp"
#include "ksrad/evolution.hpp"
#include "ksrad/initial_data.hpp"
#include "ksrad/params.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ksrad {

struct GridSpec {
    int dim = 3;
    double radius = 1.0;
    int cells = 128;
};

/// One named run of the check harness.
struct Scenario {
    std::string name;
    ModelParams params;
    GridSpec grid;
    InitialDataSpec u0;
    double t_end = 1.0;
    double cadence = 0.01;
    bool has_matrix_override = false;
    CheckMatrix matrix; // used when has_matrix_override
    StepperFault fault = StepperFault::none;
    bool keep_snapshots = false;
};

struct ScenarioResult {
    std::string name;
    SimStatus status = SimStatus::running;
    double t_reached = 0.0;
    double max_linf = 0.0;
    double K_hat = 0.0;
    CheckSummary checks;
    Trajectory trajectory;
    GridSpec grid;
    ModelParams params;
};

struct SuiteSpec {
    std::vector<Scenario> scenarios;
    int workers = 1;
    std::uint64_t seed = 0;
    int calibration_probes = 100;
    GradCoefficient coef = GradCoefficient::five_q;
    /// Applied to every scenario: enable bits are ANDed with the scenario's
    /// own matrix, tolerances replace it (the CLI's global override keys).
    CheckMatrix global_matrix = CheckMatrix::base_defaults();
};

struct SuiteReport {
    std::vector<ScenarioResult> results;
    long total_violations = 0;
};

/// The built-in scenario list: bounded regime (mu > 1), the critical band
/// mu = (n-2)/n +- delta, the subcritical L^p scenario (mu = 0.5), the
/// pre-blow-up window (mu = 0.8), and a genuine blow-up run (mu = 0.2).
std::vector<Scenario> canonical_scenarios(int cells = 128);

/// Run every scenario (in parallel across `workers`, deterministically
/// merged), checking the full inequality matrix step by step.
SuiteReport run_theorem_suite(const SuiteSpec& spec);

/// Run a single scenario through the checker. `global` (when given) masks
/// enable bits and supplies the tolerance models.
ScenarioResult run_scenario(const Scenario& sc, std::uint64_t seed, int probes,
                            GradCoefficient coef, const CheckMatrix* global = nullptr);

struct EpsSweepSpec {
    InitialDataSpec u0;
    ModelParams params;
    GridSpec grid;
    double eps0 = 0.1;
    int levels = 5;
    double t_end = 1.0;
    double cadence = 0.01;
    int workers = 1;
};

struct EpsLevelOutcome {
    double eps = 0.0;
    SimStatus status = SimStatus::running;
    double t_reached = 0.0;
    double max_linf = 0.0;
};

struct EpsSweepResult {
    std::vector<EpsLevelOutcome> levels;       // eps strictly decreasing
    std::vector<double> distances;             // d_j = sup-dist(level j, j+1)
    std::vector<double> cauchy_ratios;         // d_{j+1} / d_j
    std::vector<std::vector<double>> distance_matrix; // full pairwise
    std::vector<bool> pair_truncated;          // comparison window shortened
    std::vector<Trajectory> runs;              // with snapshots
};

/// Vanishing-viscosity sweep: eps_j = eps0 2^{-j}, shared grid, cadence and
/// initial data; sup-distances over the shared record times.
EpsSweepResult eps_sweep(const EpsSweepSpec& spec);

struct BlowupScanSpec {
    InitialDataSpec u0;
    ModelParams params; // mu in (0,1)
    GridSpec grid;
    std::vector<double> M_list;   // increasing thresholds
    std::vector<double> eps_grid; // decreasing
    double T_budget = 1.0;
    double cadence = 0.01;
    int workers = 1;
};

struct ThresholdRow {
    double M = 0.0;
    bool exceeded = false;
    double eps0_of_M = 0.0; // largest grid eps with an exceedance
    double t_eps = 0.0;
    double r_eps = 0.0;
    double value = 0.0;
};

struct BlowupScanResult {
    std::vector<EpsLevelOutcome> per_eps; // plus max-over-time L-inf column
    std::vector<ThresholdRow> rows;
};

/// Threshold-exceedance scan over a decreasing eps grid; for each M the
/// largest eps whose run exceeds M within the budget is reported together
/// with the witnessing time and radius.
BlowupScanResult blowup_scan(const BlowupScanSpec& spec);

/// Deterministic worker pool: runs fn(0..count-1) on at most `workers`
/// threads; results must be written into pre-sized slots by index.
void parallel_for_indexed(int count, int workers, const std::function<void(int)>& fn);

} // namespace ksrad
