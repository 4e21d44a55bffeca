#include "ksrad/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksrad {

const char* to_string(SimStatus s) {
    switch (s) {
        case SimStatus::running: return "running";
        case SimStatus::finished: return "finished";
        case SimStatus::blown_up: return "blown_up";
        case SimStatus::dt_underflow: return "dt_underflow";
    }
    return "?";
}

const char* check_name(CheckId id) {
    switch (id) {
        case CheckId::mass_bound: return "mass_bound";
        case CheckId::lp_bound: return "lp_bound";
        case CheckId::lp_residual: return "lp_residual";
        case CheckId::linf_bound: return "linf_bound";
        case CheckId::grad_gronwall: return "grad_gronwall";
        case CheckId::radial_bound: return "radial_bound";
        case CheckId::nonnegativity: return "nonnegativity";
        case CheckId::mass_law: return "mass_law";
        default: return "?";
    }
}

void SimState::reset_accumulators() {
    clip_mass_accum = 0.0;
    face_margin_accum = std::numeric_limits<double>::infinity();
    mass_identity_err_accum = 0.0;
}

SimState make_state(const RadialField& u0, const RadialGrid& g) {
    SimState s;
    s.u = u0;
    s.v = solve_v(u0, g);
    s.max_linf_seen = max_value(u0);
    s.reset_accumulators();
    return s;
}

namespace {

double face_bound_margin_of(const RadialField& u, const FaceField& vr, const RadialGrid& g) {
    const double umax = max_value(u);
    double margin = std::numeric_limits<double>::infinity();
    for (int f = 0; f < g.num_faces(); ++f)
        margin = std::min(margin, g.faces[f] / g.dim * umax - vr[f]);
    return margin;
}

struct StageResult {
    std::vector<double> rate;  // du/dt per cell
    double reaction_mass = 0.0; // sum w_i (reaction_i + source_i)
    double max_cell_outflow = 0.0; // max_i sum_outflow A_f |v_r| / w_i
};

StageResult stage_rates(const RadialField& u, const RadialField& v, const ModelParams& p,
                        const RadialGrid& g, double t, StepperFault fault,
                        const SourceFn& source, SimState* margin_sink) {
    const int I = g.cells;
    StageResult out;
    out.rate.assign(I, 0.0);

    const FaceField vr = flux_gradient_v(u, v, g);
    if (margin_sink) {
        margin_sink->face_margin_accum =
            std::min(margin_sink->face_margin_accum, face_bound_margin_of(u, vr, g));
    }

    // Face fluxes, diffusive minus advective; zero through both boundaries.
    std::vector<double> flux(g.num_faces(), 0.0);
    for (int f = 1; f < I; ++f) {
        const double w = vr[f];
        bool take_inner = w >= 0.0;
        if (fault == StepperFault::upwind_broken) take_inner = !take_inner;
        const double u_up = take_inner ? u[f - 1] : u[f];
        double F = -g.face_areas[f] * w * u_up;
        if (p.eps > 0.0) F += p.eps * g.face_areas[f] * (u[f] - u[f - 1]) / g.h;
        flux[f] = F;
    }
    if (fault == StepperFault::boundary_flux_leak) {
        // spurious outflow at r = R, half the radial-bound velocity
        const double umax = max_value(u);
        flux[I] = -g.face_areas[I] * u[I - 1] * (0.5 * g.radius / g.dim * umax);
    }

    for (int i = 0; i < I; ++i) {
        double react;
        switch (fault) {
            case StepperFault::mu_sign_flip: react = p.kappa * u[i] + p.mu * u[i] * u[i]; break;
            case StepperFault::decay_dropped: react = p.kappa * u[i]; break;
            case StepperFault::kappa_inflated: react = 2.0 * p.kappa * u[i] - p.mu * u[i] * u[i]; break;
            default: react = p.kappa * u[i] - p.mu * u[i] * u[i]; break;
        }
        const double src = source ? source(g.centers[i], t) : 0.0;
        out.rate[i] = (flux[i + 1] - flux[i]) / g.shell_volumes[i] + react + src;
        out.reaction_mass += g.shell_volumes[i] * (react + src);

        double outflow = 0.0;
        if (i > 0 && vr[i] < 0.0) outflow += -vr[i] * g.face_areas[i];
        if (i < I - 1 && vr[i + 1] > 0.0) outflow += vr[i + 1] * g.face_areas[i + 1];
        out.max_cell_outflow = std::max(out.max_cell_outflow, outflow / g.shell_volumes[i]);
    }
    return out;
}

// dt bounds from the current state; .first advective, .second reaction-like
std::pair<double, double> rate_bounds(const SimState& s, const ModelParams& p,
                                      const RadialGrid& g) {
    const FaceField vr = flux_gradient_v(s.u, s.v, g);
    const int I = g.cells;
    double outflow_max = 0.0;
    for (int i = 0; i < I; ++i) {
        double outflow = 0.0;
        if (i > 0 && vr[i] < 0.0) outflow += -vr[i] * g.face_areas[i];
        if (i < I - 1 && vr[i + 1] > 0.0) outflow += vr[i + 1] * g.face_areas[i + 1];
        outflow_max = std::max(outflow_max, outflow / g.shell_volumes[i]);
    }
    double dev_max = 0.0, umax = 0.0;
    for (int i = 0; i < I; ++i) {
        dev_max = std::max(dev_max, std::abs(s.v[i] - s.u[i]));
        umax = std::max(umax, s.u[i]);
    }
    return {outflow_max, p.kappa + 2.0 * p.mu * umax + dev_max};
}

double clip_negative(RadialField& u, const RadialGrid& g) {
    double clipped = 0.0;
    for (int i = 0; i < g.cells; ++i) {
        if (u[i] < 0.0) {
            clipped += -u[i] * g.shell_volumes[i];
            u[i] = 0.0;
        }
    }
    return clipped;
}

} // namespace

double stable_dt_raw(const SimState& s, const ModelParams& p, const RadialGrid& g) {
    const auto [outflow, reaction] = rate_bounds(s, p, g);
    double dt = std::numeric_limits<double>::infinity();
    if (outflow > 0.0) dt = std::min(dt, 1.0 / outflow);
    if (p.eps > 0.0) dt = std::min(dt, g.h * g.h / (2.0 * g.dim * p.eps));
    if (reaction > 0.0) dt = std::min(dt, 1.0 / reaction);
    return p.cfl_safety * dt;
}

double stable_dt(const SimState& s, const ModelParams& p, const RadialGrid& g) {
    return std::clamp(stable_dt_raw(s, p, g), p.dt_min, p.dt_max);
}

StepReport step(SimState& s, const ModelParams& p, const RadialGrid& g, double dt,
                const EllipticSystem& sys, StepperFault fault, const SourceFn& source) {
    StepReport rep;
    rep.dt = dt;
    rep.mass_before = integrate(s.u, g);

    const auto [outflow, reaction] = rate_bounds(s, p, g);
    rep.cfl_advective = dt * outflow;
    rep.cfl_diffusive = p.eps > 0.0 ? dt * 2.0 * g.dim * p.eps / (g.h * g.h) : 0.0;
    rep.max_reaction_rate = reaction;

    const int I = g.cells;
    const StageResult s1 = stage_rates(s.u, s.v, p, g, s.t, fault, source, &s);

    RadialField ustar(I);
    for (int i = 0; i < I; ++i) ustar[i] = s.u[i] + dt * s1.rate[i];
    double clip = clip_negative(ustar, g);

    if (!all_finite(ustar)) {
        s.status = SimStatus::blown_up;
        s.diagnostic = "non-finite predictor at t=" + std::to_string(s.t);
        return rep;
    }
    const RadialField vstar = sys.solve(ustar);
    const StageResult s2 = stage_rates(ustar, vstar, p, g, s.t + dt, fault, source, &s);

    RadialField unew(I);
    for (int i = 0; i < I; ++i) unew[i] = s.u[i] + 0.5 * dt * (s1.rate[i] + s2.rate[i]);

    rep.reaction_mass_delta = 0.5 * dt * (s1.reaction_mass + s2.reaction_mass);
    const double mass_preclip = integrate(unew, g);
    const double scale = std::max({rep.mass_before, mass_preclip, 1e-300});
    s.mass_identity_err_accum =
        std::max(s.mass_identity_err_accum,
                 std::abs(mass_preclip - rep.mass_before - rep.reaction_mass_delta) / scale);

    clip += clip_negative(unew, g);
    rep.clip_mass = clip;
    s.clip_mass_accum += clip;

    if (!all_finite(unew)) {
        s.status = SimStatus::blown_up;
        s.diagnostic = "non-finite update at t=" + std::to_string(s.t);
        return rep;
    }

    s.u = std::move(unew);
    s.v = sys.solve(s.u);
    s.t += dt;
    s.step_count += 1;
    rep.mass_after = integrate(s.u, g);

    const double umax = max_value(s.u);
    s.max_linf_seen = std::max(s.max_linf_seen, umax);
    const double cap = s.blowup_cap;
    if (umax > cap) {
        s.status = SimStatus::blown_up;
        s.diagnostic = "L-inf cap exceeded at t=" + std::to_string(s.t);
    }
    return rep;
}

StepReport step(SimState& s, const ModelParams& p, const RadialGrid& g, double dt) {
    const EllipticSystem sys(g);
    return step(s, p, g, dt, sys);
}

DiagnosticRecord compute_record(const SimState& s, const ModelParams& p, const RadialGrid& g,
                                double last_dt) {
    DiagnosticRecord r;
    r.t = s.t;
    r.dt = last_dt;
    r.mass = integrate(s.u, g);
    r.lp = lp_norm(s.u, g, p.p_exponent);
    r.linf = lp_norm(s.u, g, std::numeric_limits<double>::infinity());
    r.grad_q = grad_q_functional(s.u, g, p.q_exponent, 0.0);
    r.grad_q_eta = p.eta > 0.0 ? grad_q_functional(s.u, g, p.q_exponent, p.eta) : r.grad_q;
    r.vmin = min_value(s.v);

    const double pe = p.p_exponent;
    RadialField half_power(g.cells);
    for (int i = 0; i < g.cells; ++i) {
        const double u = std::max(s.u[i], 0.0);
        r.up_int += std::pow(u, pe) * g.shell_volumes[i];
        r.up1_int += std::pow(u, pe + 1.0) * g.shell_volumes[i];
        half_power[i] = std::pow(u, 0.5 * pe);
    }
    const RadialField dh = cell_gradient(half_power, g);
    double diss = 0.0;
    for (int i = 0; i < g.cells; ++i) diss += dh[i] * dh[i] * g.shell_volumes[i];
    r.diss_p = 4.0 / (pe * pe) * diss;

    r.clip_mass = s.clip_mass_accum;
    const FaceField vr = flux_gradient_v(s.u, s.v, g);
    r.face_bound_margin = std::min(s.face_margin_accum, face_bound_margin_of(s.u, vr, g));
    r.mass_identity_err = s.mass_identity_err_accum;
    return r;
}

Trajectory simulate(const RadialField& u0, const ModelParams& p, const RadialGrid& g,
                    const SimOptions& opts) {
    Trajectory traj;
    const EllipticSystem sys(g);
    SimState s = make_state(u0, g);
    s.t = opts.t_start;
    s.blowup_cap = auto_blowup_cap(p, max_value(u0));

    std::size_t next_threshold = 0;
    auto watch_thresholds = [&](double t) {
        while (next_threshold < opts.threshold_watch.size()) {
            const double M = opts.threshold_watch[next_threshold];
            int arg = -1;
            double best = M;
            for (int i = 0; i < g.cells; ++i)
                if (s.u[i] > best) { best = s.u[i]; arg = i; }
            if (arg < 0) break;
            traj.threshold_hits.push_back({M, t, g.centers[arg], best});
            ++next_threshold;
        }
    };

    double last_dt = 0.0;
    auto emit = [&] {
        DiagnosticRecord rec = compute_record(s, p, g, last_dt);
        traj.records.push_back(rec);
        if (opts.keep_snapshots) traj.snapshots.push_back(s.u);
        if (opts.sink) opts.sink(rec, s);
        s.reset_accumulators();
    };

    watch_thresholds(s.t);
    emit();

    const double cadence = opts.record_every > 0.0 ? opts.record_every : 0.0;
    long record_index =
        cadence > 0.0 ? static_cast<long>(std::floor(opts.t_start / cadence + 1e-9)) : 0;

    while (s.status == SimStatus::running && s.t < opts.t_end) {
        const double raw = stable_dt_raw(s, p, g);
        if (raw < p.dt_min) {
            s.status = SimStatus::dt_underflow;
            s.diagnostic = "stable dt fell below dt_min at t=" + std::to_string(s.t);
            emit();
            break;
        }
        double dt = std::min(raw, p.dt_max);

        double boundary = opts.t_end;
        if (cadence > 0.0) {
            const double next_record = (record_index + 1) * cadence;
            boundary = std::min(boundary, next_record);
        }
        bool lands_on_boundary = false;
        if (s.t + dt >= boundary - 1e-15 * std::max(1.0, boundary)) {
            dt = boundary - s.t;
            lands_on_boundary = true;
        }

        step(s, p, g, dt, sys, opts.fault, opts.source);
        last_dt = dt;
        if (lands_on_boundary && s.status == SimStatus::running) s.t = boundary;

        watch_thresholds(s.t);

        if (s.status != SimStatus::running) {
            emit(); // terminal record at the failure time
            break;
        }

        if (lands_on_boundary) {
            if (cadence > 0.0 && boundary < opts.t_end) ++record_index;
            if (s.t >= opts.t_end) {
                s.status = SimStatus::finished;
                emit();
                break;
            }
            emit();
        }
    }
    if (s.status == SimStatus::running) {
        // t_end reached without a boundary-aligned final step
        s.status = SimStatus::finished;
        emit();
    }
    traj.final_state = std::move(s);
    traj.max_linf = traj.final_state.max_linf_seen;
    return traj;
}

} // namespace ksrad
