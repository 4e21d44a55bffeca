#pragma once

#include "ksrad/field.hpp"
#include "ksrad/grid.hpp"

#include <string>

namespace ksrad {

enum class InitialDataKind { constant, poly_bump, gaussian_bump, mollified_step };

const char* to_string(InitialDataKind k);
InitialDataKind initial_data_kind_from_string(const std::string& s);

struct InitialDataSpec {
    InitialDataKind kind = InitialDataKind::poly_bump;
    double amplitude = 1.0;
    double center = 0.0; // step radius / bump center, in [0, R]
    double width = 0.1;  // mollification width / gaussian std-dev
};

/// Nonnegative radial profile; the face-derivative convention already gives
/// u_r = 0 at r = 0 and r = R for every kind.
///
///   constant        A
///   poly_bump       A (1 - (r/R)^2)^2
///   gaussian_bump   A [exp(-(r-c)^2 / 2w^2) + exp(-(r+c)^2 / 2w^2)] / norm,
///                   even in r, normalized to peak amplitude A
///   mollified_step  height-A step at r = center, flattened beyond R - width
///                   and convolved with the standard bump mollifier of
///                   radius `width` (even extension across r = 0)
RadialField make_initial_data(const InitialDataSpec& spec, const RadialGrid& g);

} // namespace ksrad
