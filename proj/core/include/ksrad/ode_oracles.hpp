#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace ksrad {

/// Sampled scalar trajectory with strictly increasing times.
struct ScalarTrajectory {
    std::vector<double> times;
    std::vector<double> values;
    bool escaped = false; // |y| exceeded the escape threshold; samples truncated

    std::size_t size() const { return times.size(); }
};

using RateFunction = std::function<double(double)>;

/// Closed-form comparison bound for y' = kappa y - (mu - 1) y^2,
/// y(0) = m, evaluated at time t (requires mu >= 1):
///   kappa>0, mu>1 : kappa/(mu-1) * (1 + (kappa/((mu-1)m) - 1) e^{-kappa t})^{-1}
///   kappa=0, mu>1 : m / (1 + (mu-1) m t)
///   kappa>0, mu=1 : m e^{kappa t}
///   kappa=0, mu=1 : m
double logistic_bound(double kappa, double mu, double m, double t);

/// Classical fixed-step RK4 on y' = f(y). Integration stops early with
/// `escaped = true` once |y| > 1e12. Throws if f returns a non-finite value
/// at a finite state.
ScalarTrajectory solve_scalar_ode(const RateFunction& f, double y0, double t_end, double dt);

struct ComparisonVerdict {
    bool hypothesis_holds = false; // z(t) <= z(0) + int_0^t f(z), checked by trapezoid
    bool conclusion_holds = false; // z <= y pointwise against the ODE solution
    double worst_margin = 0.0;     // min over samples of y(t) - z(t)
};

/// Gronwall-type comparison: if z satisfies the integral inequality with a
/// nondecreasing rate f (caller contract) and z(0) < y0, then z stays below
/// the solution y of y' = f(y), y(0) = y0. Quadrature slack on the
/// hypothesis is one-sided: a near-miss yields an inconclusive verdict
/// (hypothesis_holds = false), never a false confirmation.
ComparisonVerdict comparison_check(const ScalarTrajectory& z, const RateFunction& f, double y0);

/// Upper bound 2 / ((kappa - 1) a^{kappa-1} d) for the survival time of any
/// nonnegative y with y(t) >= a - b t + d int_0^t y^kappa. Requires
/// a > (2b/d)^{1/kappa}; outside that gate no bound is available and
/// nullopt is returned.
std::optional<double> blowup_time_bound(double a, double b, double d, double kappa);

/// Threshold constant C(p) = (4 B / ((1-mu)p - 1))^{1/(p+1)}
///                           * vol^{1 + 1/(p(p+1))}
/// for the finite-time blow-up criterion; B is the empirically calibrated
/// absorption constant. Requires mu in (0,1) and p > 1/(1-mu).
double blowup_threshold(double p, double mu, double vol, double B_hat);

struct ExistenceWindow {
    double T_of_D = 0.0;
    double M_of_D = 0.0;
    // constants the window was computed from
    double D = 0.0, q = 0.0, kappa = 0.0, vol = 0.0, c1 = 0.0, c3 = 0.0, K = 0.0;
};

/// Epsilon-independent existence window: integrates
///   y' = (6q c1 + K vol (2c1)^{1+q}) y^{1+1/q} + (6q c3 + kappa q) y
///        + vol K (2c3)^{1+q} + 1,     y(0) = (sqrt(2) D)^q + 1,
/// and returns T(D) = first time y exceeds (sqrt(2) D)^q + 2 (bisected to
/// 1e-10) together with M(D) = c1 ((sqrt(2) D)^q + 2)^{1/q} + c3.
/// Since y' >= 1 and the allowance gap is 1, T(D) <= 1 always.
ExistenceWindow common_existence_time(double D, double q, double kappa, double vol, double c1,
                                      double c3, double K, double dt = 1e-6);

} // namespace ksrad
