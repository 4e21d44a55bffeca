#include "run_spec.hpp"

#include "ksrad/checkpoint.hpp"
#include "ksrad/ode_oracles.hpp"
#include "ksrad/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>

namespace ksrad::cli {

namespace {

namespace fs = std::filesystem;

void usage() {
    std::cout <<
        "usage: ksrad <subcommand> [--config FILE] [key=value ...]\n"
        "\n"
        "subcommands:\n"
        "  simulate      run one simulation, write the diagnostics CSV\n"
        "  verify        run the canonical scenario suite with all step checks\n"
        "  eps-sweep     vanishing-viscosity sweep (eps0 * 2^-j, `levels` runs)\n"
        "  blowup-scan   threshold-exceedance scan over eps_grid / m_list\n"
        "  oracle        closed-form oracle evaluation (see below)\n"
        "  calibrate     estimate the elliptic and absorption constants\n"
        "\n"
        "Flags mirror config keys one-to-one as key=value pairs; `ksrad\n"
        "<subcommand> keys` lists them all with their current defaults.\n"
        "Environment: KSRAD_OUTDIR, KSRAD_WORKERS.\n"
        "\n"
        "oracle usage:\n"
        "  ksrad oracle logistic-bound kappa=K mu=M m=M0 t=T\n"
        "  ksrad oracle blowup-time a=A b=B d=D kappa=K\n"
        "  ksrad oracle threshold p=P mu=M vol=V b_hat=B\n"
        "  ksrad oracle existence-window d=D q=Q kappa=K vol=V c1=C c3=C k=K\n";
}

void final_line(const std::string& status, const std::string& sub, long violations,
                const std::string& outputs) {
    std::cout << "ksrad: status=" << status << " subcommand=" << sub
              << " violations=" << violations << " outputs=" << outputs << "\n";
}

std::vector<PlotSeries> series_over_time(const std::vector<DiagnosticRecord>& recs,
                                         double DiagnosticRecord::* field, const char* label) {
    PlotSeries s;
    s.label = label;
    for (const auto& r : recs) {
        const double v = r.*field;
        if (std::isnan(v)) continue;
        s.x.push_back(r.t);
        s.y.push_back(v);
    }
    return {s};
}

void write_run_plots(const std::string& stem, const std::vector<DiagnosticRecord>& recs) {
    auto linf = series_over_time(recs, &DiagnosticRecord::linf, "linf");
    auto b = series_over_time(recs, &DiagnosticRecord::bound_linf, "bound_linf");
    if (!b[0].x.empty()) linf.push_back(b[0]);
    write_text_file(stem + "_linf.svg", svg_line_plot("L-infinity norm", linf));

    auto mass = series_over_time(recs, &DiagnosticRecord::mass, "mass");
    auto bm = series_over_time(recs, &DiagnosticRecord::bound_mass, "bound_mass");
    if (!bm[0].x.empty()) mass.push_back(bm[0]);
    write_text_file(stem + "_mass.svg", svg_line_plot("mass", mass));
}

int cmd_simulate(const RunSpec& spec) {
    RadialGrid g = build_grid(spec.grid.dim, spec.grid.radius, spec.grid.cells);
    RadialField u0;
    SimOptions opts;
    opts.t_end = spec.t_end;
    opts.record_every = spec.cadence;
    ModelParams params = spec.params;

    if (!spec.resume.empty()) {
        const Checkpoint c = read_checkpoint(spec.resume);
        params = c.params;
        g = build_grid(params.dim, params.radius, c.grid_cells);
        u0 = c.u;
        opts.t_start = c.t;
        std::cout << "resuming from '" << spec.resume << "' at t=" << c.t << "\n";
    } else {
        u0 = make_initial_data(spec.u0, g);
    }

    const Trajectory traj = simulate(u0, params, g, opts);

    fs::create_directories(spec.outdir);
    const std::string csv = spec.outdir + "/simulate.csv";
    write_records_csv(csv, traj.records, spec.echo());
    if (spec.plots) write_run_plots(spec.outdir + "/simulate", traj.records);
    if (!spec.checkpoint_out.empty()) {
        Checkpoint c;
        c.params = params;
        c.grid_cells = g.cells;
        c.t = traj.final_state.t;
        c.step_count = traj.final_state.step_count;
        c.u = traj.final_state.u;
        write_checkpoint(spec.checkpoint_out, c);
    }

    std::cout << "status " << to_string(traj.status()) << " at t=" << traj.final_state.t
              << ", max linf " << traj.max_linf << ", steps " << traj.final_state.step_count
              << "\n";
    final_line("ok", "simulate", 0, spec.outdir);
    return 0;
}

int cmd_verify(const RunSpec& spec) {
    SuiteSpec suite;
    suite.scenarios = canonical_scenarios(spec.grid.cells);
    suite.workers = spec.workers;
    suite.seed = spec.seed;
    suite.calibration_probes = spec.probes;
    suite.coef = spec.coef;
    suite.global_matrix = spec.matrix;

    const SuiteReport report = run_theorem_suite(suite);

    fs::create_directories(spec.outdir);
    const auto echo = spec.echo();
    for (const auto& r : report.results) {
        write_records_csv(spec.outdir + "/verify_" + r.name + ".csv", r.trajectory.records, echo);
        if (spec.plots) write_run_plots(spec.outdir + "/verify_" + r.name, r.trajectory.records);
    }
    write_text_file(spec.outdir + "/verify_summary.json",
                    suite_summary_json(report, spec.seed, echo));

    for (const auto& r : report.results) {
        std::printf("%-22s %-12s t=%-8.4g max_linf=%-10.5g violations=%ld\n", r.name.c_str(),
                    to_string(r.status), r.t_reached, r.max_linf, r.checks.total_violations());
    }
    const bool ok = report.total_violations == 0;
    final_line(ok ? "ok" : "violations", "verify", report.total_violations, spec.outdir);
    return ok ? 0 : 2;
}

int cmd_eps_sweep(const RunSpec& spec) {
    EpsSweepSpec sw;
    sw.u0 = spec.u0;
    sw.params = spec.params;
    sw.grid = spec.grid;
    sw.eps0 = spec.eps0;
    sw.levels = spec.levels;
    sw.t_end = spec.t_end;
    sw.cadence = spec.cadence;
    sw.workers = spec.workers;

    const EpsSweepResult res = eps_sweep(sw);

    fs::create_directories(spec.outdir);
    const auto echo = spec.echo();
    for (std::size_t j = 0; j < res.runs.size(); ++j)
        write_records_csv(spec.outdir + "/sweep_level" + std::to_string(j) + ".csv",
                          res.runs[j].records, echo);
    write_text_file(spec.outdir + "/sweep_summary.json", sweep_summary_json(res, echo));

    for (std::size_t j = 0; j < res.levels.size(); ++j) {
        std::printf("eps=%-10.4g %-12s max_linf=%-10.5g", res.levels[j].eps,
                    to_string(res.levels[j].status), res.levels[j].max_linf);
        if (j < res.distances.size()) std::printf(" d=%.6g", res.distances[j]);
        std::printf("\n");
    }
    final_line("ok", "eps-sweep", 0, spec.outdir);
    return 0;
}

int cmd_blowup_scan(const RunSpec& spec) {
    BlowupScanSpec sc;
    sc.u0 = spec.u0;
    sc.params = spec.params;
    sc.grid = spec.grid;
    sc.M_list = spec.m_list;
    sc.eps_grid = spec.eps_grid;
    sc.T_budget = spec.t_budget;
    sc.cadence = spec.cadence;
    sc.workers = spec.workers;

    const BlowupScanResult res = blowup_scan(sc);

    fs::create_directories(spec.outdir);
    write_text_file(spec.outdir + "/scan_summary.json", scan_summary_json(res, spec.echo()));

    for (const auto& l : res.per_eps)
        std::printf("eps=%-10.4g %-12s t_reached=%-8.4g max_linf=%.6g\n", l.eps,
                    to_string(l.status), l.t_reached, l.max_linf);
    for (const auto& r : res.rows) {
        if (r.exceeded)
            std::printf("M=%-10.4g exceeded: eps0(M)=%.4g t=%.6g r=%.6g value=%.6g\n", r.M,
                        r.eps0_of_M, r.t_eps, r.r_eps, r.value);
        else
            std::printf("M=%-10.4g not exceeded within budget\n", r.M);
    }
    final_line("ok", "blowup-scan", 0, spec.outdir);
    return 0;
}

int cmd_calibrate(const RunSpec& spec) {
    const RadialGrid g = build_grid(spec.grid.dim, spec.grid.radius, spec.grid.cells);
    const double K_hat = estimate_elliptic_constant(g, spec.params.q_exponent, spec.probes,
                                                    spec.seed);
    // eta as in the blow-up threshold: half the decay surplus when mu < 1
    const double eta = spec.params.mu < 1.0 && (1.0 - spec.params.mu) * spec.params.p_exponent > 1.0
                           ? 0.5 * ((1.0 - spec.params.mu) * spec.params.p_exponent - 1.0)
                           : std::max(spec.params.eta, 0.5);
    const double B_hat =
        estimate_absorption_constant(g, spec.params.p_exponent, eta, spec.probes, spec.seed);

    fs::create_directories(spec.outdir);
    std::string json = "{\n  \"version\": \"" + std::string(kVersion) + "\",\n";
    json += "  \"K_hat\": " + format_double(K_hat) + ",\n";
    json += "  \"B_hat\": " + format_double(B_hat) + ",\n";
    json += "  \"eta\": " + format_double(eta) + ",\n";
    json += "  \"q\": " + format_double(spec.params.q_exponent) + ",\n";
    json += "  \"p\": " + format_double(spec.params.p_exponent) + ",\n";
    json += "  \"probes\": " + std::to_string(spec.probes) + ",\n";
    json += "  \"seed\": " + std::to_string(spec.seed) + "\n}\n";
    write_text_file(spec.outdir + "/calibration.json", json);

    std::cout << "K_hat(q=" << spec.params.q_exponent << ") = " << K_hat << "\n";
    std::cout << "B_hat(p=" << spec.params.p_exponent << ", eta=" << eta << ") = " << B_hat
              << "\n";
    final_line("ok", "calibrate", 0, spec.outdir);
    return 0;
}

std::map<std::string, std::string> parse_kv_args(const std::vector<std::string>& args,
                                                 std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < args.size(); ++i) {
        const auto eq = args[i].find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("oracle: expected key=value, got '" + args[i] + "'");
        kv[args[i].substr(0, eq)] = args[i].substr(eq + 1);
    }
    return kv;
}

double need(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("oracle: missing argument '" + key + "'");
    return std::stod(it->second);
}

double need_or(const std::map<std::string, std::string>& kv, const std::string& key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stod(it->second);
}

} // namespace

int run_oracle(const std::vector<std::string>& args) {
    if (args.empty()) {
        std::cerr << "oracle: missing oracle name\n";
        return 1;
    }
    try {
        const auto kv = parse_kv_args(args, 1);
        const std::string& name = args[0];
        if (name == "logistic-bound") {
            std::cout << format_double(logistic_bound(need(kv, "kappa"), need(kv, "mu"),
                                                      need(kv, "m"), need(kv, "t")))
                      << "\n";
        } else if (name == "blowup-time") {
            const auto bound =
                blowup_time_bound(need(kv, "a"), need(kv, "b"), need(kv, "d"), need(kv, "kappa"));
            if (!bound) {
                std::cerr << "rejected: requires a > (2b/d)^(1/kappa); no bound available\n";
                return 1;
            }
            std::cout << format_double(*bound) << "\n";
        } else if (name == "threshold") {
            std::cout << format_double(blowup_threshold(need(kv, "p"), need(kv, "mu"),
                                                        need(kv, "vol"), need(kv, "b_hat")))
                      << "\n";
        } else if (name == "existence-window") {
            const ExistenceWindow w =
                common_existence_time(need(kv, "d"), need(kv, "q"), need(kv, "kappa"),
                                      need(kv, "vol"), need(kv, "c1"), need(kv, "c3"),
                                      need(kv, "k"), need_or(kv, "dt", 1e-6));
            std::cout << "T(D) = " << format_double(w.T_of_D)
                      << "\nM(D) = " << format_double(w.M_of_D) << "\n";
        } else {
            std::cerr << "oracle: unknown oracle '" << name << "'\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(const RunSpec& spec) {
    try {
        if (spec.subcommand == "simulate") return cmd_simulate(spec);
        if (spec.subcommand == "verify") return cmd_verify(spec);
        if (spec.subcommand == "eps-sweep") return cmd_eps_sweep(spec);
        if (spec.subcommand == "blowup-scan") return cmd_blowup_scan(spec);
        if (spec.subcommand == "calibrate") return cmd_calibrate(spec);
        std::cerr << "unknown subcommand '" << spec.subcommand << "'\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        final_line("error", spec.subcommand, 0, spec.outdir);
        return 1;
    }
}

} // namespace ksrad::cli

int main(int argc, char** argv) {
    using namespace ksrad::cli;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        usage();
        return args.empty() ? 1 : 0;
    }
    const std::string sub = args[0];
    const std::set<std::string> known = {"simulate",    "verify", "eps-sweep",
                                         "blowup-scan", "oracle", "calibrate"};
    if (!known.count(sub)) {
        std::cerr << "unknown subcommand '" << sub << "'\n";
        usage();
        return 1;
    }
    if (sub == "oracle") return run_oracle({args.begin() + 1, args.end()});

    std::string config_path;
    std::vector<std::string> overrides;
    bool list_keys = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                std::cerr << "--config requires a path\n";
                return 1;
            }
            config_path = args[++i];
        } else if (args[i] == "keys") {
            list_keys = true;
        } else {
            overrides.push_back(args[i]);
        }
    }

    std::vector<ParseError> errors;
    const RunSpec spec = parse_config(sub, config_path, overrides, errors);
    if (list_keys) {
        for (const auto& line : spec.echo()) std::cout << line << "\n";
        return 0;
    }
    if (!errors.empty()) {
        for (const auto& e : errors)
            std::cerr << "config error" << (e.key.empty() ? "" : " [" + e.key + "]") << ": "
                      << e.message << "\n";
        return 1;
    }

    std::cout << "# resolved configuration\n";
    for (const auto& line : spec.echo()) std::cout << "#   " << line << "\n";
    return run(spec);
}
