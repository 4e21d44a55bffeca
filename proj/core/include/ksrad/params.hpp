#pragma once

#include <string>
#include <vector>

namespace ksrad {

/// Model and scheme parameters for the regularized chemotaxis-logistic
/// system u_t = eps Lap u - div(u grad v) + kappa u - mu u^2, 0 = Lap v - v + u.
struct ModelParams {
    int dim = 3;
    double radius = 1.0;
    double kappa = 0.0;     // growth rate, >= 0
    double mu = 1.0;        // death rate, > 0
    double eps = 0.1;       // diffusivity, >= 0 (0 selects the upwind limit scheme)
    double p_exponent = 2.0; // L^p machinery exponent, >= 1
    double q_exponent = 4.0; // gradient functional exponent, > dim
    double eta = 0.0;        // Phi_eta regularizer, >= 0

    double cfl_safety = 0.4;   // in (0,1)
    double blowup_cap = 0.0;   // L-inf cap; 0 means auto = 1e6 * max u0
    double dt_min = 1e-12;
    double dt_max = 1e-2;

    /// Field-by-field validation; returns one "field: problem" line per
    /// violated constraint (empty means valid).
    std::vector<std::string> validate() const;
};

inline double auto_blowup_cap(const ModelParams& p, double initial_max) {
    return p.blowup_cap > 0.0 ? p.blowup_cap : 1e6 * std::max(initial_max, 1e-30);
}

} // namespace ksrad
