#pragma once

#include "ksrad/grid.hpp"

#include <vector>

namespace ksrad {

/// Scalar sample vector on cell centers (one value per shell).
struct RadialField {
    std::vector<double> values;

    RadialField() = default;
    explicit RadialField(std::size_t n, double fill = 0.0) : values(n, fill) {}
    explicit RadialField(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Scalar sample vector on faces (cells + 1 entries, faces 0 and I at the
/// origin and the outer boundary).
struct FaceField {
    std::vector<double> values;

    FaceField() = default;
    explicit FaceField(std::size_t n, double fill = 0.0) : values(n, fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Exact integral of the piecewise-constant reconstruction, sum f_i w_i.
double integrate(const RadialField& f, const RadialGrid& g);

/// (sum |f_i|^p w_i)^(1/p); for p = infinity the discrete max of |f_i|.
/// Throws std::invalid_argument for p < 1.
double lp_norm(const RadialField& f, const RadialGrid& g, double p);

/// Face-centered differences (f_{i+1} - f_i)/h on interior faces; both
/// boundary faces carry 0 (symmetry at r = 0, homogeneous Neumann at r = R).
FaceField radial_derivative(const RadialField& f, const RadialGrid& g);

/// Cell-centered gradient: average of the two adjacent face derivatives.
RadialField cell_gradient(const RadialField& f, const RadialGrid& g);
RadialField cell_gradient(const FaceField& df, const RadialGrid& g);

/// Integral of Phi_eta(|grad f|) with Phi_eta(s) = (s^2 + eta)^(q/2),
/// using the cell-centered gradient. Throws for q <= 1 or eta < 0.
double grad_q_functional(const RadialField& f, const RadialGrid& g, double q, double eta);

bool all_finite(const RadialField& f);
double max_value(const RadialField& f);
double min_value(const RadialField& f);

} // namespace ksrad
