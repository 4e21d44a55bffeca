#pragma once

#include "ksrad/diagnostics.hpp"
#include "ksrad/elliptic.hpp"
#include "ksrad/field.hpp"
#include "ksrad/grid.hpp"
#include "ksrad/params.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ksrad {

enum class SimStatus { running, finished, blown_up, dt_underflow };
const char* to_string(SimStatus s);

/// Deliberate stepper defects for the harness sensitivity suite. Every mode
/// other than `none` must be caught by at least one step check.
enum class StepperFault {
    none,
    mu_sign_flip,       // reaction becomes kappa u + mu u^2
    decay_dropped,      // reaction becomes kappa u
    kappa_inflated,     // reaction becomes 2 kappa u - mu u^2
    upwind_broken,      // advective flux takes the downwind cell
    boundary_flux_leak, // spurious advective outflow through r = R
};

struct SimState {
    double t = 0.0;
    long step_count = 0;
    RadialField u;
    RadialField v; // elliptic solve of the current u, refreshed every stage
    SimStatus status = SimStatus::running;
    std::string diagnostic; // set on abnormal termination

    double max_linf_seen = 0.0; // max over every step, not just records
    double blowup_cap = std::numeric_limits<double>::infinity();

    // accumulators since the last diagnostic record
    double clip_mass_accum = 0.0;
    double face_margin_accum = std::numeric_limits<double>::infinity();
    double mass_identity_err_accum = 0.0;

    void reset_accumulators();
};

/// Initial state with v = solve_v(u0).
SimState make_state(const RadialField& u0, const RadialGrid& g);

struct StepReport {
    double dt = 0.0;
    double cfl_advective = 0.0; // dt * max cell outflow rate
    double cfl_diffusive = 0.0; // dt * 2 n eps / h^2
    double max_reaction_rate = 0.0;
    double mass_before = 0.0;
    double mass_after = 0.0;
    double reaction_mass_delta = 0.0; // dt/2 [R(u) + R(u*)], the exact mass law RHS
    double clip_mass = 0.0;
};

/// Largest stable step: cfl_safety * min of the advective bound
/// (per-cell outflow, reduces to h/max|v_r| away from the origin), the
/// diffusive bound h^2/(2 n eps), and the reaction bound
/// 1/(kappa + 2 mu max u + max|v-u|); clamped to [dt_min, dt_max].
double stable_dt(const SimState& s, const ModelParams& p, const RadialGrid& g);
/// Same value before the [dt_min, dt_max] clamp (underflow detection).
double stable_dt_raw(const SimState& s, const ModelParams& p, const RadialGrid& g);

/// Optional manufactured source term s(r, t) added to u_t.
using SourceFn = std::function<double(double r, double t)>;

/// One Heun (explicit trapezoidal RK2) step of the conservative scheme
///   u_t = eps Lap_r u - (1/r^{n-1}) (r^{n-1} u v_r)_r + kappa u - mu u^2,
/// with donor-cell upwind advective fluxes, zero boundary fluxes, and the
/// elliptic problem re-solved every stage. Negative values are clipped to
/// zero with the removed mass logged (expected zero under the stable_dt
/// contract). Sets status blown_up when max u exceeds the cap or turns
/// non-finite.
StepReport step(SimState& s, const ModelParams& p, const RadialGrid& g, double dt,
                const EllipticSystem& sys, StepperFault fault = StepperFault::none,
                const SourceFn& source = nullptr);
StepReport step(SimState& s, const ModelParams& p, const RadialGrid& g, double dt);

struct ThresholdHit {
    double threshold = 0.0;
    double t = 0.0;
    double r = 0.0;
    double value = 0.0;
};

struct SimOptions {
    double t_start = 0.0; // nonzero when resuming from a checkpoint
    double t_end = 1.0;
    double record_every = 0.01; // <= 0 records only the endpoints
    bool keep_snapshots = false;
    StepperFault fault = StepperFault::none;
    SourceFn source;                        // optional manufactured source
    std::vector<double> threshold_watch;    // increasing; first-crossing report
    std::function<void(const DiagnosticRecord&, const SimState&)> sink;
};

struct Trajectory {
    std::vector<DiagnosticRecord> records;
    std::vector<RadialField> snapshots; // aligned with records when kept
    std::vector<ThresholdHit> threshold_hits;
    SimState final_state;
    double max_linf = 0.0;

    SimStatus status() const { return final_state.status; }
};

/// Advance until t_end, blow-up, or dt underflow, emitting a diagnostic
/// record at every cadence point (steps are clamped to land exactly on
/// cadence boundaries, which makes checkpoint/resume reproduce the
/// uninterrupted run bit-exactly).
Trajectory simulate(const RadialField& u0, const ModelParams& p, const RadialGrid& g,
                    const SimOptions& opts);

/// Raw functionals of the current state (bounds/margins left NaN).
DiagnosticRecord compute_record(const SimState& s, const ModelParams& p, const RadialGrid& g,
                                double last_dt);

} // namespace ksrad
