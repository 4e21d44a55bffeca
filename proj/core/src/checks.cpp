#include "ksrad/checks.hpp"

#include "ksrad/ode_oracles.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace ksrad {

double grad_coefficient_value(GradCoefficient c, double q, int dim) {
    if (c == GradCoefficient::five_q) return 5.0 * q;
    return (5.0 - 1.0 / dim) * q - 2.0;
}

CheckMatrix CheckMatrix::base_defaults() {
    CheckMatrix m;
    m[CheckId::mass_bound] = {true, 0.0, 1e-6, 0.0};
    m[CheckId::lp_bound] = {true, 0.0, 1e-4, 1.0};
    m[CheckId::lp_residual] = {true, 0.0, 1e-3, 2.0};
    m[CheckId::linf_bound] = {true, 0.0, 1e-2, 0.0};
    m[CheckId::grad_gronwall] = {true, 1e-6, 0.0, 1.0}; // log-space slack
    m[CheckId::radial_bound] = {true, 1e-10, 0.0, 0.0};
    m[CheckId::nonnegativity] = {true, 0.0, 0.0, 0.0};
    m[CheckId::mass_law] = {true, 1e-12, 0.0, 0.0};
    return m;
}

CheckMatrix CheckMatrix::defaults(const ModelParams& p) {
    CheckMatrix m = base_defaults();
    // Applicability gates from the theory: the comparison L-inf bound needs
    // mu >= 1; the L^p bound and residual need 1 - (1-mu)p > 0.
    if (p.mu < 1.0) m[CheckId::linf_bound].enabled = false;
    if (1.0 - (1.0 - p.mu) * p.p_exponent <= 0.0) m[CheckId::lp_bound].enabled = false;
    return m;
}

CheckContext CheckContext::from_initial(const RadialField& u0, const ModelParams& p,
                                        const RadialGrid& g, double K_hat,
                                        GradCoefficient coef) {
    CheckContext ctx;
    ctx.mass0 = integrate(u0, g);
    ctx.linf0 = max_value(u0);
    ctx.grad_q0 = grad_q_functional(u0, g, p.q_exponent, 0.0);
    double up0 = 0.0;
    for (int i = 0; i < g.cells; ++i)
        up0 += std::pow(std::max(u0[i], 0.0), p.p_exponent) * g.shell_volumes[i];
    ctx.up0_int = up0;
    ctx.volume = g.domain_volume;
    ctx.h = g.h;
    ctx.K_hat = K_hat;
    ctx.coef = coef;
    return ctx;
}

namespace {

double allowance(const CheckSettings& s, double h, double scale) {
    return s.tol_abs + (s.tol_rel + s.h_slack * h) * scale;
}

} // namespace

std::vector<CheckViolation> check_step(const DiagnosticRecord* prev, DiagnosticRecord& cur,
                                       const ModelParams& p, const CheckMatrix& m,
                                       const CheckContext& ctx) {
    std::vector<CheckViolation> out;
    auto set_margin = [&](CheckId id, double margin) {
        cur.margins[static_cast<int>(id)] = margin;
        if (margin < 0.0) out.push_back({id, cur.t, margin});
    };

    const double q = p.q_exponent;
    const double pe = p.p_exponent;

    // Running trapezoid integrals of the sup norm.
    if (prev) {
        const double dt = cur.t - prev->t;
        cur.int_linf = prev->int_linf + 0.5 * dt * (prev->linf + cur.linf);
        cur.int_linf_pow = prev->int_linf_pow +
                           0.5 * dt * (std::pow(prev->linf, 1.0 + q) + std::pow(cur.linf, 1.0 + q));
    } else {
        cur.int_linf = 0.0;
        cur.int_linf_pow = 0.0;
    }

    // (a) mass bound: integral u <= max{integral u0, kappa |Omega| / mu}.
    if (m[CheckId::mass_bound].enabled) {
        cur.bound_mass = std::max(ctx.mass0, p.kappa * ctx.volume / p.mu);
        const double a = allowance(m[CheckId::mass_bound], ctx.h, std::max(1.0, cur.bound_mass));
        set_margin(CheckId::mass_bound, cur.bound_mass + a - cur.mass);
    }

    // (b) L^p bound: integral u^p <= max{integral u0^p,
    //     (p kappa / (1 - (1-mu)p))^p |Omega|}.
    if (m[CheckId::lp_bound].enabled) {
        const double denom = 1.0 - (1.0 - p.mu) * pe;
        if (denom > 0.0) {
            cur.bound_lp =
                std::max(ctx.up0_int, std::pow(pe * p.kappa / denom, pe) * ctx.volume);
            const double a = allowance(m[CheckId::lp_bound], ctx.h, std::max(1.0, cur.bound_lp));
            set_margin(CheckId::lp_bound, cur.bound_lp + a - cur.up_int);
        }
    }

    // (c) differential inequality residual between consecutive records:
    //     d/dt int u^p + p(p-1) eps int u^{p-2}|grad u|^2
    //       <= p kappa int u^p - (1 - p + mu p) int u^{p+1}.
    if (m[CheckId::lp_residual].enabled && prev) {
        const double dt = cur.t - prev->t;
        if (dt > 0.0) {
            const double lhs = (cur.up_int - prev->up_int) / dt +
                               pe * (pe - 1.0) * p.eps * 0.5 * (prev->diss_p + cur.diss_p);
            const double rhs = pe * p.kappa * 0.5 * (prev->up_int + cur.up_int) -
                               (1.0 - pe + p.mu * pe) * 0.5 * (prev->up1_int + cur.up1_int);
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            const double a = allowance(m[CheckId::lp_residual], ctx.h, scale);
            set_margin(CheckId::lp_residual, rhs + a - lhs);
        }
    }

    // (d) explicit logistic L-inf bound (mu >= 1 only).
    if (m[CheckId::linf_bound].enabled && p.mu >= 1.0) {
        cur.bound_linf =
            ctx.linf0 > 0.0 ? logistic_bound(p.kappa, p.mu, ctx.linf0, cur.t) : 0.0;
        const double a = allowance(m[CheckId::linf_bound], ctx.h, std::max(1.0, cur.bound_linf));
        set_margin(CheckId::linf_bound, cur.bound_linf + a - cur.linf);
    }

    // (e) gradient Gronwall envelope, evaluated in log space so the
    //     exponential never overflows:
    //     int |grad u|^q <= (int |grad u0|^q + K |Omega| int ||u||^{1+q})
    //                       * exp(coef int ||u|| + kappa q t).
    if (m[CheckId::grad_gronwall].enabled) {
        const double coef = grad_coefficient_value(ctx.coef, q, p.dim);
        const double base = ctx.grad_q0 + ctx.K_hat * ctx.volume * cur.int_linf_pow;
        const double env_log =
            std::log(std::max(base, DBL_MIN)) + coef * cur.int_linf + p.kappa * q * cur.t;
        cur.bound_gradq_log = env_log;
        const double a = allowance(m[CheckId::grad_gronwall], ctx.h, 1.0);
        if (cur.grad_q <= DBL_MIN) {
            set_margin(CheckId::grad_gronwall, a);
        } else {
            set_margin(CheckId::grad_gronwall, env_log + a - std::log(cur.grad_q));
        }
    }

    // (f) radial bound: v_r(r_f) <= (r_f / n) ||u||_inf at every face of
    //     every elliptic solve since the previous record.
    if (m[CheckId::radial_bound].enabled) {
        const double a = allowance(m[CheckId::radial_bound], ctx.h, 1.0);
        set_margin(CheckId::radial_bound, cur.face_bound_margin + a);
    }

    // (g) nonnegativity of u and v and zero clipped mass.
    if (m[CheckId::nonnegativity].enabled) {
        const double a = allowance(m[CheckId::nonnegativity], ctx.h, 1.0);
        const double defect = cur.clip_mass + std::max(0.0, -cur.vmin);
        set_margin(CheckId::nonnegativity, a - defect);
    }

    // per-step mass law: the conservative fluxes telescope, so the mass
    // change must equal the reaction integral to roundoff.
    if (m[CheckId::mass_law].enabled) {
        const double a = allowance(m[CheckId::mass_law], ctx.h, 1.0);
        set_margin(CheckId::mass_law, a - cur.mass_identity_err);
    }

    return out;
}

long CheckSummary::total_violations() const {
    long n = 0;
    for (const auto& c : checks) n += c.violations;
    return n;
}

StepChecker::StepChecker(const ModelParams& p, const CheckMatrix& m, const CheckContext& ctx)
    : params_(p), matrix_(m), ctx_(ctx) {
    for (int i = 0; i < kNumChecks; ++i)
        summary_.checks[i].enabled = m.rows[i].enabled;
}

std::vector<CheckViolation> StepChecker::feed(DiagnosticRecord& rec) {
    auto violations = check_step(has_prev_ ? &prev_ : nullptr, rec, params_, matrix_, ctx_);

    for (int i = 0; i < kNumChecks; ++i) {
        const double margin = rec.margins[i];
        if (std::isnan(margin)) continue;
        auto& s = summary_.checks[i];
        s.evaluations += 1;
        if (margin < s.worst_margin) s.worst_margin = margin;
        if (margin < 0.0) {
            s.violations += 1;
            if (s.first_violation_t < 0.0) s.first_violation_t = rec.t;
        }
    }

    // raw (tolerance-free) slacks, for the refinement studies
    if (!std::isnan(rec.bound_lp) && rec.bound_lp > 0.0)
        summary_.worst_lp_slack =
            std::max(summary_.worst_lp_slack, rec.up_int / rec.bound_lp - 1.0);
    if (has_prev_) {
        const double dt = rec.t - prev_.t;
        if (dt > 0.0 && matrix_[CheckId::lp_residual].enabled) {
            const double pe = params_.p_exponent;
            const double lhs = (rec.up_int - prev_.up_int) / dt +
                               pe * (pe - 1.0) * params_.eps * 0.5 * (prev_.diss_p + rec.diss_p);
            const double rhs = pe * params_.kappa * 0.5 * (prev_.up_int + rec.up_int) -
                               (1.0 - pe + params_.mu * pe) * 0.5 * (prev_.up1_int + rec.up1_int);
            summary_.worst_residual_excess =
                std::max(summary_.worst_residual_excess,
                         (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        }
    }
    summary_.worst_mass_identity = std::max(summary_.worst_mass_identity, rec.mass_identity_err);

    prev_ = rec;
    has_prev_ = true;
    return violations;
}

} // namespace ksrad
