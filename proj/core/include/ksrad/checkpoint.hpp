#pragma once

#include "ksrad/evolution.hpp"
#include "ksrad/params.hpp"

#include <string>

namespace ksrad {

/// A resumable snapshot of a run. Values are stored as hexadecimal floating
/// point literals so that write -> read reproduces every double bit-exactly.
struct Checkpoint {
    ModelParams params;
    int grid_cells = 0;
    double t = 0.0;
    long step_count = 0;
    RadialField u;
};

void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);

} // namespace ksrad
