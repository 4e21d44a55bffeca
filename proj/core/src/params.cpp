#include "ksrad/params.hpp"

#include <cmath>

namespace ksrad {

std::vector<std::string> ModelParams::validate() const {
    std::vector<std::string> bad;
    auto fail = [&](const char* field, const char* what) {
        bad.push_back(std::string(field) + ": " + what);
    };
    if (dim < 1) fail("n", "must be >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) fail("radius", "must be positive");
    if (!(kappa >= 0.0)) fail("kappa", "must be >= 0");
    if (!(mu > 0.0)) fail("mu", "must be > 0");
    if (!(eps >= 0.0)) fail("eps", "must be >= 0");
    if (!(p_exponent >= 1.0)) fail("p", "must be >= 1");
    if (!(q_exponent > dim)) fail("q", "must exceed the dimension n");
    if (!(eta >= 0.0)) fail("eta", "must be >= 0");
    if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) fail("cfl_safety", "must lie in (0,1)");
    if (blowup_cap < 0.0) fail("blowup_cap", "must be positive (or 0 for auto)");
    if (!(dt_min > 0.0)) fail("dt_min", "must be positive");
    if (!(dt_max > 0.0)) fail("dt_max", "must be positive");
    if (dt_min > 0.0 && dt_max > 0.0 && !(dt_min < dt_max)) fail("dt_min", "must be < dt_max");
    return bad;
}

} // namespace ksrad
