#include "ksrad/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksrad {

namespace {

void require_match(const RadialField& f, const RadialGrid& g, const char* where) {
    if (f.size() != static_cast<std::size_t>(g.cells))
        throw std::invalid_argument(std::string(where) + ": field length does not match grid");
}

} // namespace

double integrate(const RadialField& f, const RadialGrid& g) {
    require_match(f, g, "integrate");
    double s = 0.0;
    for (int i = 0; i < g.cells; ++i) s += f[i] * g.shell_volumes[i];
    return s;
}

double lp_norm(const RadialField& f, const RadialGrid& g, double p) {
    require_match(f, g, "lp_norm");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1 or infinity");
    double s = 0.0;
    for (int i = 0; i < g.cells; ++i) s += std::pow(std::abs(f[i]), p) * g.shell_volumes[i];
    return std::pow(s, 1.0 / p);
}

FaceField radial_derivative(const RadialField& f, const RadialGrid& g) {
    require_match(f, g, "radial_derivative");
    if (f.size() < 2) throw std::invalid_argument("radial_derivative: need at least 2 cells");
    FaceField d(g.num_faces(), 0.0);
    for (int j = 1; j < g.cells; ++j) d[j] = (f[j] - f[j - 1]) / g.h;
    return d;
}

RadialField cell_gradient(const FaceField& df, const RadialGrid& g) {
    if (df.size() != static_cast<std::size_t>(g.num_faces()))
        throw std::invalid_argument("cell_gradient: face field length does not match grid");
    RadialField d(g.cells);
    for (int i = 0; i < g.cells; ++i) d[i] = 0.5 * (df[i] + df[i + 1]);
    return d;
}

RadialField cell_gradient(const RadialField& f, const RadialGrid& g) {
    return cell_gradient(radial_derivative(f, g), g);
}

double grad_q_functional(const RadialField& f, const RadialGrid& g, double q, double eta) {
    if (!(q > 1.0)) throw std::invalid_argument("grad_q_functional: q must be > 1");
    if (!(eta >= 0.0)) throw std::invalid_argument("grad_q_functional: eta must be >= 0");
    const RadialField d = cell_gradient(f, g);
    double s = 0.0;
    for (int i = 0; i < g.cells; ++i)
        s += std::pow(d[i] * d[i] + eta, 0.5 * q) * g.shell_volumes[i];
    return s;
}

bool all_finite(const RadialField& f) {
    return std::all_of(f.values.begin(), f.values.end(),
                       [](double v) { return std::isfinite(v); });
}

double max_value(const RadialField& f) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : f.values) m = std::max(m, v);
    return m;
}

double min_value(const RadialField& f) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : f.values) m = std::min(m, v);
    return m;
}

} // namespace ksrad
