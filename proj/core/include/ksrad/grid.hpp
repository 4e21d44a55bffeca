#pragma once

#include <vector>

namespace ksrad {

/// Cell-centered radial mesh on [0, R] in dimension n with exact shell
/// volumes, so that constants integrate to |Omega| at roundoff level.
///
/// Cells i = 0..I-1 have centers r_i = (i + 1/2) h with h = R/I; faces sit
/// at r = i h.  Shell volumes are w_i = sigma_{n-1} (r_{i+1/2}^n -
/// r_{i-1/2}^n) / n, where sigma_{n-1} is the surface area of the unit
/// sphere (sigma_0 = 2: the 1-D "ball" (-R, R) is counted on both
/// half-lines).
struct RadialGrid {
    int dim = 0;
    double radius = 0.0;
    int cells = 0;
    double h = 0.0;

    std::vector<double> centers;       // size cells
    std::vector<double> faces;         // size cells + 1
    std::vector<double> shell_volumes; // size cells
    std::vector<double> face_areas;    // size cells + 1, sigma * r_f^(n-1)

    double unit_sphere_area = 0.0; // sigma_{n-1}
    double domain_volume = 0.0;    // sigma_{n-1} R^n / n

    int num_faces() const { return cells + 1; }
};

/// Surface area of the unit sphere in R^n (2, 2*pi, 4*pi for n = 1, 2, 3).
double unit_sphere_area(int dim);

/// Throws std::invalid_argument unless dim >= 1, radius > 0, cells >= 4.
RadialGrid build_grid(int dim, double radius, int cells);

} // namespace ksrad
