#include "ksrad/ode_oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksrad {

namespace {

constexpr double kEscape = 1e12;

double rk4_step(const RateFunction& f, double y, double dt) {
    const double k1 = f(y);
    if (!std::isfinite(k1) && std::abs(y) <= kEscape)
        throw std::runtime_error("solve_scalar_ode: rate function returned non-finite value");
    const double k2 = f(y + 0.5 * dt * k1);
    const double k3 = f(y + 0.5 * dt * k2);
    const double k4 = f(y + dt * k3);
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

double logistic_bound(double kappa, double mu, double m, double t) {
    if (!(mu >= 1.0)) throw std::invalid_argument("logistic_bound: mu must be >= 1");
    if (!(m > 0.0)) throw std::invalid_argument("logistic_bound: m must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("logistic_bound: t must be >= 0");
    if (kappa > 0.0 && mu > 1.0) {
        const double a = kappa / (mu - 1.0);
        return a / (1.0 + (a / m - 1.0) * std::exp(-kappa * t));
    }
    if (kappa == 0.0 && mu > 1.0) return m / (1.0 + (mu - 1.0) * m * t);
    if (kappa > 0.0) return m * std::exp(kappa * t);
    return m;
}

ScalarTrajectory solve_scalar_ode(const RateFunction& f, double y0, double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("solve_scalar_ode: dt must be positive");
    ScalarTrajectory tr;
    const long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    tr.times.reserve(nsteps + 1);
    tr.values.reserve(nsteps + 1);
    double y = y0;
    tr.times.push_back(0.0);
    tr.values.push_back(y);
    for (long k = 0; k < nsteps; ++k) {
        const double t0 = k * dt;
        const double step = std::min(dt, t_end - t0);
        y = rk4_step(f, y, step);
        if (!std::isfinite(y) || std::abs(y) > kEscape) {
            tr.escaped = true;
            break;
        }
        tr.times.push_back(t0 + step);
        tr.values.push_back(y);
    }
    return tr;
}

ComparisonVerdict comparison_check(const ScalarTrajectory& z, const RateFunction& f, double y0) {
    ComparisonVerdict verdict;
    if (z.size() < 2 || !(z.values.front() < y0)) return verdict; // inconclusive

    // Hypothesis: z(t) <= z(0) + int_0^t f(z) at every sample, trapezoid
    // quadrature, with one-sided slack so a borderline miss is inconclusive.
    double integral = 0.0;
    double fz_prev = f(z.values.front());
    for (std::size_t k = 1; k < z.size(); ++k) {
        const double fz = f(z.values[k]);
        integral += 0.5 * (z.times[k] - z.times[k - 1]) * (fz_prev + fz);
        fz_prev = fz;
        const double tol = 1e-9 * (1.0 + std::abs(z.values[k]));
        if (z.values[k] > z.values.front() + integral + tol) return verdict;
    }
    verdict.hypothesis_holds = true;

    // Integrate y' = f(y), y(0) = y0, landing exactly on each z sample.
    double y = y0;
    double worst = y - z.values.front();
    for (std::size_t k = 1; k < z.size(); ++k) {
        const double span = z.times[k] - z.times[k - 1];
        const int sub = std::max(1, static_cast<int>(std::ceil(span / 1e-4)));
        const double dt = span / sub;
        for (int s = 0; s < sub; ++s) y = rk4_step(f, y, dt);
        if (!std::isfinite(y) || std::abs(y) > kEscape) {
            // y escaped upward; the comparison holds trivially from here on
            verdict.conclusion_holds = worst >= -1e-9;
            verdict.worst_margin = worst;
            return verdict;
        }
        worst = std::min(worst, y - z.values[k]);
    }
    verdict.worst_margin = worst;
    verdict.conclusion_holds = worst >= -1e-9;
    return verdict;
}

std::optional<double> blowup_time_bound(double a, double b, double d, double kappa) {
    if (!(a > 0.0) || !(b >= 0.0) || !(d > 0.0) || !(kappa > 1.0))
        throw std::invalid_argument("blowup_time_bound: need a > 0, b >= 0, d > 0, kappa > 1");
    if (!(a > std::pow(2.0 * b / d, 1.0 / kappa))) return std::nullopt;
    return 2.0 / ((kappa - 1.0) * std::pow(a, kappa - 1.0) * d);
}

double blowup_threshold(double p, double mu, double vol, double B_hat) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("blowup_threshold: mu must lie in (0,1)");
    if (!(B_hat >= 0.0)) throw std::invalid_argument("blowup_threshold: B_hat must be >= 0");
    const double denom = (1.0 - mu) * p - 1.0;
    if (!(denom > 0.0)) throw std::invalid_argument("blowup_threshold: requires p > 1/(1 - mu)");
    return std::pow(4.0 * B_hat / denom, 1.0 / (p + 1.0)) *
           std::pow(vol, 1.0 + 1.0 / (p * (p + 1.0)));
}

ExistenceWindow common_existence_time(double D, double q, double kappa, double vol, double c1,
                                      double c3, double K, double dt) {
    if (!(D > 0.0 && q > 1.0 && kappa >= 0.0 && vol > 0.0 && c1 > 0.0 && c3 > 0.0 && K > 0.0))
        throw std::invalid_argument("common_existence_time: all constants must be positive, q > 1");

    ExistenceWindow w;
    w.D = D; w.q = q; w.kappa = kappa; w.vol = vol; w.c1 = c1; w.c3 = c3; w.K = K;

    const double y0 = std::pow(std::sqrt(2.0) * D, q) + 1.0;
    const double ceiling = std::pow(std::sqrt(2.0) * D, q) + 2.0;
    const double a = 6.0 * q * c1 + K * vol * std::pow(2.0 * c1, 1.0 + q);
    const double b = 6.0 * q * c3 + kappa * q;
    const double c = vol * K * std::pow(2.0 * c3, 1.0 + q) + 1.0;
    auto rate = [&](double y) { return a * std::pow(y, 1.0 + 1.0 / q) + b * y + c; };

    // y' >= 1, so the crossing sits below t = 1; locate the step bracketing
    // it, then bisect the substep length (y is monotone increasing).
    double y = y0, t = 0.0;
    while (y <= ceiling && t < 1.0 + dt) {
        const double ynext = rk4_step(rate, y, dt);
        if (ynext > ceiling) break;
        y = ynext;
        t += dt;
    }
    double lo = 0.0, hi = dt;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (rk4_step(rate, y, mid) > ceiling ? hi : lo) = mid;
    }
    w.T_of_D = t + 0.5 * (lo + hi);
    w.M_of_D = c1 * std::pow(ceiling, 1.0 / q) + c3;
    return w;
}

} // namespace ksrad
