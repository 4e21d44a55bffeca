#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace ksrad {

/// Step-wise inequality checks, named after what they bound.
enum class CheckId : int {
    mass_bound = 0,     // integral u <= max{integral u0, kappa |Omega| / mu}
    lp_bound,           // integral u^p <= max{integral u0^p, (p kappa / (1-(1-mu)p))^p |Omega|}
    lp_residual,        // d/dt integral u^p + dissipation <= reaction terms
    linf_bound,         // ||u||_inf <= logistic comparison bound (mu >= 1)
    grad_gronwall,      // integral |grad u|^q under the Gronwall envelope
    radial_bound,       // v_r(r_f) <= (r_f / n) ||u||_inf at every face
    nonnegativity,      // u >= 0, v >= 0, zero clipped mass
    mass_law,           // per-step mass identity defect at roundoff level
    count
};

constexpr int kNumChecks = static_cast<int>(CheckId::count);

const char* check_name(CheckId id);

/// Per-cadence-point functionals of a run, one CSV row each.  Raw
/// functionals are filled by the integrator; bound values and margins are
/// filled by the checker (NaN where a check is disabled or inapplicable).
struct DiagnosticRecord {
    double t = 0.0;
    double dt = 0.0;   // last step size used (0 at t = 0)
    double mass = 0.0; // integral u
    double lp = 0.0;   // ||u||_p at the run's p exponent
    double linf = 0.0;
    double grad_q = 0.0;     // integral |grad u|^q
    double grad_q_eta = 0.0; // integral Phi_eta(|grad u|)
    double up_int = 0.0;     // integral u^p
    double up1_int = 0.0;    // integral u^{p+1}
    double diss_p = 0.0;     // (4/p^2) integral |grad(u^{p/2})|^2
    double vmin = 0.0;       // min of v at record time

    // Accumulated over the steps since the previous record:
    double clip_mass = 0.0;          // total mass removed by clipping at zero
    double face_bound_margin = 0.0;  // min over solves/faces of (r_f/n)||u||_inf - v_r
    double mass_identity_err = 0.0;  // worst relative defect of the per-step mass law

    // Running trapezoid time-integrals of ||u||_inf and ||u||_inf^{1+q}
    // (filled by the checker; consecutive records are self-contained).
    double int_linf = 0.0;
    double int_linf_pow = 0.0;

    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    double bound_mass = nan;
    double bound_lp = nan;        // bound on integral u^p
    double bound_linf = nan;      // mu >= 1 only
    double bound_gradq_log = nan; // log of the Gronwall envelope

    // Signed margins, tolerance included: negative = violation beyond
    // tolerance. NaN = check not evaluated at this record.
    std::array<double, kNumChecks> margins{nan, nan, nan, nan, nan, nan, nan, nan};

    bool has_violation() const {
        for (double m : margins)
            if (!std::isnan(m) && m < 0.0) return true;
        return false;
    }
};

} // namespace ksrad
