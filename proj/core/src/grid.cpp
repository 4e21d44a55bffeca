#include "ksrad/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ksrad {

double unit_sphere_area(int dim) {
    // sigma_{n-1} = 2 pi^{n/2} / Gamma(n/2)
    const double n = static_cast<double>(dim);
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialGrid build_grid(int dim, double radius, int cells) {
    if (dim < 1)
        throw std::invalid_argument("build_grid: dim must be >= 1, got " + std::to_string(dim));
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("build_grid: radius must be positive and finite");
    if (cells < 4)
        throw std::invalid_argument("build_grid: cells must be >= 4, got " + std::to_string(cells));

    RadialGrid g;
    g.dim = dim;
    g.radius = radius;
    g.cells = cells;
    g.h = radius / cells;
    g.unit_sphere_area = unit_sphere_area(dim);

    g.centers.resize(cells);
    g.faces.resize(cells + 1);
    g.shell_volumes.resize(cells);
    g.face_areas.resize(cells + 1);

    for (int i = 0; i <= cells; ++i) {
        g.faces[i] = (i == cells) ? radius : i * g.h;
        g.face_areas[i] = g.unit_sphere_area * std::pow(g.faces[i], dim - 1);
    }
    const double n = static_cast<double>(dim);
    for (int i = 0; i < cells; ++i) {
        g.centers[i] = (i + 0.5) * g.h;
        g.shell_volumes[i] =
            g.unit_sphere_area * (std::pow(g.faces[i + 1], dim) - std::pow(g.faces[i], dim)) / n;
    }
    g.domain_volume = g.unit_sphere_area * std::pow(radius, dim) / n;
    return g;
}

} // namespace ksrad
