#pragma once

#include "ksrad/diagnostics.hpp"
#include "ksrad/field.hpp"
#include "ksrad/grid.hpp"
#include "ksrad/params.hpp"

#include <array>
#include <string>
#include <vector>

namespace ksrad {

/// Growth coefficient used in the gradient Gronwall envelope.
enum class GradCoefficient { five_q, refined /* (5 - 1/n) q - 2 */ };

double grad_coefficient_value(GradCoefficient c, double q, int dim);

/// Tolerance model of one check: a violation is a deficit beyond
/// tol_abs + tol_rel * scale + h_slack * h * scale.
struct CheckSettings {
    bool enabled = true;
    double tol_abs = 0.0;
    double tol_rel = 0.0;
    double h_slack = 0.0;
};

struct CheckMatrix {
    std::array<CheckSettings, kNumChecks> rows;

    CheckSettings& operator[](CheckId id) { return rows[static_cast<int>(id)]; }
    const CheckSettings& operator[](CheckId id) const { return rows[static_cast<int>(id)]; }

    /// Calibrated tolerances with every check enabled (no parameter gating);
    /// the base the CLI's override keys layer onto.
    static CheckMatrix base_defaults();

    /// Calibrated defaults; checks inapplicable to the parameters (e.g. the
    /// logistic L-inf bound for mu < 1, the L^p bound for p >= 1/(1-mu))
    /// come back disabled.
    static CheckMatrix defaults(const ModelParams& p);
};

/// Constants of one run that the step checks need besides two consecutive
/// records: initial functionals, the calibrated elliptic constant, and the
/// envelope coefficient variant.
struct CheckContext {
    double mass0 = 0.0;    // integral u0
    double up0_int = 0.0;  // integral u0^p
    double linf0 = 0.0;    // max u0
    double grad_q0 = 0.0;  // integral |grad u0|^q
    double volume = 0.0;   // |Omega|
    double h = 0.0;
    double K_hat = 0.0;    // calibrated elliptic constant
    GradCoefficient coef = GradCoefficient::five_q;

    static CheckContext from_initial(const RadialField& u0, const ModelParams& p,
                                     const RadialGrid& g, double K_hat,
                                     GradCoefficient coef = GradCoefficient::five_q);
};

struct CheckViolation {
    CheckId id = CheckId::mass_bound;
    double t = 0.0;
    double margin = 0.0; // negative
};

/// Evaluate every enabled check between two consecutive cadence records.
/// Bounds and tolerance-adjusted margins are written into `cur`; violations
/// (margin < 0) are returned. `prev == nullptr` marks the first record of a
/// run. Records carry the running trapezoid integrals of ||u||_inf and
/// ||u||_inf^{1+q}, so consecutive pairs are self-contained.
std::vector<CheckViolation> check_step(const DiagnosticRecord* prev, DiagnosticRecord& cur,
                                       const ModelParams& p, const CheckMatrix& m,
                                       const CheckContext& ctx);

/// Aggregated outcome of a run's checks.
struct CheckSummary {
    struct PerCheck {
        bool enabled = false;
        long evaluations = 0;
        long violations = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        double first_violation_t = -1.0;
    };
    std::array<PerCheck, kNumChecks> checks;
    double worst_lp_slack = 0.0;     // max relative overshoot of the L^p bound
    double worst_residual_excess = 0.0; // max raw LHS-RHS excess of the (3.1) residual
    double worst_mass_identity = 0.0;   // max per-step mass-law defect (relative)

    long total_violations() const;
};

/// Streaming wrapper: feed records in order, margins are filled in place.
class StepChecker {
public:
    StepChecker(const ModelParams& p, const CheckMatrix& m, const CheckContext& ctx);

    std::vector<CheckViolation> feed(DiagnosticRecord& rec);
    const CheckSummary& summary() const { return summary_; }

private:
    ModelParams params_;
    CheckMatrix matrix_;
    CheckContext ctx_;
    DiagnosticRecord prev_;
    bool has_prev_ = false;
    CheckSummary summary_;
};

} // namespace ksrad
