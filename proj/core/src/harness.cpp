#include "ksrad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ksrad {

void parallel_for_indexed(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<Scenario> canonical_scenarios(int cells) {
    std::vector<Scenario> list;
    auto base = [&](const char* name, double mu, double kappa, double eps) {
        Scenario sc;
        sc.name = name;
        sc.params.dim = 3;
        sc.params.radius = 1.0;
        sc.params.mu = mu;
        sc.params.kappa = kappa;
        sc.params.eps = eps;
        sc.params.p_exponent = 1.5;
        sc.params.q_exponent = 4.0; // q = n + 1
        sc.grid = {3, 1.0, cells};
        sc.t_end = 1.0;
        sc.cadence = 0.01;
        return sc;
    };

    {
        Scenario sc = base("bounded_mu2_constant", 2.0, 0.0, 0.1);
        sc.u0 = {InitialDataKind::constant, 1.0, 0.0, 0.1};
        list.push_back(sc);
    }
    {
        Scenario sc = base("bounded_mu1p5_bump", 1.5, 0.3, 0.05);
        sc.u0 = {InitialDataKind::poly_bump, 2.0, 0.0, 0.1};
        list.push_back(sc);
    }
    {
        // critical band around mu = (n-2)/n = 1/3 for n = 3
        Scenario sc = base("critical_plus", 1.0 / 3.0 + 0.05, 0.0, 0.02);
        sc.u0 = {InitialDataKind::poly_bump, 1.0, 0.0, 0.1};
        list.push_back(sc);
    }
    {
        Scenario sc = base("critical_minus", 1.0 / 3.0 - 0.05, 0.0, 0.02);
        sc.u0 = {InitialDataKind::poly_bump, 1.0, 0.0, 0.1};
        list.push_back(sc);
    }
    {
        // subcritical L^p scenario: p = 1.5 < 1/(1 - mu) = 2
        Scenario sc = base("subcritical_mu0p5", 0.5, 0.0, 0.05);
        sc.u0 = {InitialDataKind::poly_bump, 2.0, 0.0, 0.1};
        list.push_back(sc);
    }
    {
        Scenario sc = base("preblowup_mu0p8", 0.8, 0.0, 0.05);
        sc.u0 = {InitialDataKind::poly_bump, 5.0, 0.0, 0.1};
        sc.t_end = 0.5;
        list.push_back(sc);
    }
    {
        // genuine blow-up run; the slack-model checks (b), (c), (e) are off
        // because the terminal single-cell concentration is under-resolved.
        // The cap sits 200x above the initial max but below the level where
        // upwind diffusion stalls the concentration at this resolution.
        Scenario sc = base("blowup_mu0p2", 0.2, 0.0, 1e-3);
        sc.u0 = {InitialDataKind::poly_bump, 50.0, 0.0, 0.1};
        sc.t_end = 1.0;
        sc.params.blowup_cap = 1e4;
        sc.has_matrix_override = true;
        sc.matrix = CheckMatrix::defaults(sc.params);
        sc.matrix[CheckId::lp_bound].enabled = false;
        sc.matrix[CheckId::lp_residual].enabled = false;
        sc.matrix[CheckId::grad_gronwall].enabled = false;
        list.push_back(sc);
    }
    return list;
}

ScenarioResult run_scenario(const Scenario& sc, std::uint64_t seed, int probes,
                            GradCoefficient coef, const CheckMatrix* global) {
    ScenarioResult res;
    res.name = sc.name;
    res.grid = sc.grid;
    res.params = sc.params;

    const RadialGrid g = build_grid(sc.grid.dim, sc.grid.radius, sc.grid.cells);
    const RadialField u0 = make_initial_data(sc.u0, g);

    res.K_hat = estimate_elliptic_constant(g, sc.params.q_exponent, probes, seed);
    CheckMatrix matrix = sc.has_matrix_override ? sc.matrix : CheckMatrix::defaults(sc.params);
    if (global) {
        for (int i = 0; i < kNumChecks; ++i) {
            const bool enabled = matrix.rows[i].enabled && global->rows[i].enabled;
            matrix.rows[i] = global->rows[i];
            matrix.rows[i].enabled = enabled;
        }
    }
    const CheckContext ctx = CheckContext::from_initial(u0, sc.params, g, res.K_hat, coef);
    StepChecker checker(sc.params, matrix, ctx);

    SimOptions opts;
    opts.t_end = sc.t_end;
    opts.record_every = sc.cadence;
    opts.keep_snapshots = sc.keep_snapshots;
    opts.fault = sc.fault;

    res.trajectory = simulate(u0, sc.params, g, opts);
    for (auto& rec : res.trajectory.records) checker.feed(rec);

    res.checks = checker.summary();
    res.status = res.trajectory.status();
    res.t_reached = res.trajectory.final_state.t;
    res.max_linf = res.trajectory.max_linf;
    return res;
}

SuiteReport run_theorem_suite(const SuiteSpec& spec) {
    SuiteReport report;
    report.results.resize(spec.scenarios.size());
    parallel_for_indexed(static_cast<int>(spec.scenarios.size()), spec.workers, [&](int i) {
        report.results[i] = run_scenario(spec.scenarios[i], spec.seed, spec.calibration_probes,
                                         spec.coef, &spec.global_matrix);
    });
    for (const auto& r : report.results) report.total_violations += r.checks.total_violations();
    return report;
}

namespace {

// Sup-distance between two runs over their shared cadence-aligned records.
double sup_distance(const Trajectory& a, const Trajectory& b, bool* truncated) {
    const std::size_t n = std::min(a.snapshots.size(), b.snapshots.size());
    if (truncated)
        *truncated = a.snapshots.size() != b.snapshots.size() ||
                     a.status() != SimStatus::finished || b.status() != SimStatus::finished;
    double d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (a.records[k].t != b.records[k].t) break; // past the common window
        const auto& ua = a.snapshots[k].values;
        const auto& ub = b.snapshots[k].values;
        for (std::size_t i = 0; i < ua.size(); ++i) d = std::max(d, std::abs(ua[i] - ub[i]));
    }
    return d;
}

} // namespace

EpsSweepResult eps_sweep(const EpsSweepSpec& spec) {
    if (spec.levels < 3) throw std::invalid_argument("eps_sweep: levels must be >= 3");
    const RadialGrid g = build_grid(spec.grid.dim, spec.grid.radius, spec.grid.cells);
    const RadialField u0 = make_initial_data(spec.u0, g);

    EpsSweepResult res;
    res.runs.resize(spec.levels);
    res.levels.resize(spec.levels);

    parallel_for_indexed(spec.levels, spec.workers, [&](int j) {
        ModelParams p = spec.params;
        p.eps = spec.eps0 * std::pow(2.0, -j);
        SimOptions opts;
        opts.t_end = spec.t_end;
        opts.record_every = spec.cadence;
        opts.keep_snapshots = true;
        res.runs[j] = simulate(u0, p, g, opts);
        res.levels[j] = {p.eps, res.runs[j].status(), res.runs[j].final_state.t,
                         res.runs[j].max_linf};
    });

    res.distance_matrix.assign(spec.levels, std::vector<double>(spec.levels, 0.0));
    for (int i = 0; i < spec.levels; ++i)
        for (int j = i + 1; j < spec.levels; ++j) {
            const double d = sup_distance(res.runs[i], res.runs[j], nullptr);
            res.distance_matrix[i][j] = res.distance_matrix[j][i] = d;
        }
    for (int j = 0; j + 1 < spec.levels; ++j) {
        bool truncated = false;
        res.distances.push_back(sup_distance(res.runs[j], res.runs[j + 1], &truncated));
        res.pair_truncated.push_back(truncated);
    }
    for (std::size_t j = 0; j + 1 < res.distances.size(); ++j)
        res.cauchy_ratios.push_back(res.distances[j] > 0.0
                                        ? res.distances[j + 1] / res.distances[j]
                                        : 0.0);
    return res;
}

BlowupScanResult blowup_scan(const BlowupScanSpec& spec) {
    if (!(spec.params.mu > 0.0 && spec.params.mu < 1.0))
        throw std::invalid_argument("blowup_scan: mu must lie in (0,1)");
    if (!std::is_sorted(spec.M_list.begin(), spec.M_list.end()))
        throw std::invalid_argument("blowup_scan: M_list must be increasing");
    for (std::size_t k = 0; k + 1 < spec.eps_grid.size(); ++k)
        if (spec.eps_grid[k] <= spec.eps_grid[k + 1])
            throw std::invalid_argument("blowup_scan: eps_grid must be strictly decreasing");

    const RadialGrid g = build_grid(spec.grid.dim, spec.grid.radius, spec.grid.cells);
    const RadialField u0 = make_initial_data(spec.u0, g);

    const int n = static_cast<int>(spec.eps_grid.size());
    std::vector<Trajectory> runs(n);
    BlowupScanResult res;
    res.per_eps.resize(n);

    parallel_for_indexed(n, spec.workers, [&](int k) {
        ModelParams p = spec.params;
        p.eps = spec.eps_grid[k];
        SimOptions opts;
        opts.t_end = spec.T_budget;
        opts.record_every = spec.cadence;
        opts.threshold_watch = spec.M_list;
        runs[k] = simulate(u0, p, g, opts);
        res.per_eps[k] = {p.eps, runs[k].status(), runs[k].final_state.t, runs[k].max_linf};
    });

    for (double M : spec.M_list) {
        ThresholdRow row;
        row.M = M;
        for (int k = 0; k < n; ++k) { // eps_grid is decreasing: first hit = largest eps
            const auto& hits = runs[k].threshold_hits;
            auto it = std::find_if(hits.begin(), hits.end(),
                                   [&](const ThresholdHit& h) { return h.threshold == M; });
            if (it != hits.end()) {
                row.exceeded = true;
                row.eps0_of_M = spec.eps_grid[k];
                row.t_eps = it->t;
                row.r_eps = it->r;
                row.value = it->value;
                break;
            }
        }
        res.rows.push_back(row);
    }
    return res;
}

} // namespace ksrad
