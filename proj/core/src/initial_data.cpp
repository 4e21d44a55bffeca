#include "ksrad/initial_data.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace ksrad {

const char* to_string(InitialDataKind k) {
    switch (k) {
        case InitialDataKind::constant: return "constant";
        case InitialDataKind::poly_bump: return "poly_bump";
        case InitialDataKind::gaussian_bump: return "gaussian_bump";
        case InitialDataKind::mollified_step: return "mollified_step";
    }
    return "?";
}

InitialDataKind initial_data_kind_from_string(const std::string& s) {
    if (s == "constant") return InitialDataKind::constant;
    if (s == "poly_bump") return InitialDataKind::poly_bump;
    if (s == "gaussian_bump") return InitialDataKind::gaussian_bump;
    if (s == "mollified_step") return InitialDataKind::mollified_step;
    throw std::invalid_argument("unknown initial data kind '" + s + "'");
}

namespace {

// Standard bump mollifier exp(-1/(1-x^2)) on (-1, 1), discretized once on a
// fixed Simpson stencil with the weights normalized to sum exactly to 1, so
// the discrete convolution preserves constants exactly.
struct MollifierStencil {
    static constexpr int kPoints = 64; // even interval count
    std::array<double, kPoints + 1> x{};
    std::array<double, kPoints + 1> w{};

    MollifierStencil() {
        const double dx = 2.0 / kPoints;
        double sum = 0.0;
        for (int i = 0; i <= kPoints; ++i) {
            x[i] = -1.0 + i * dx;
            const double x2 = x[i] * x[i];
            const double f = (x2 < 1.0) ? std::exp(-1.0 / (1.0 - x2)) : 0.0;
            const double simpson = (i == 0 || i == kPoints) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            w[i] = simpson * f;
            sum += w[i];
        }
        for (auto& wi : w) wi /= sum;
    }
};

const MollifierStencil& mollifier_stencil() {
    static const MollifierStencil s;
    return s;
}

// Step flattened at R - width/2 (value frozen there), evenly extended
// across r = 0, constant beyond R.
double flattened_step(double r, double amplitude, double r0, double width, double R) {
    const double rc = std::min(std::abs(r), R - 0.5 * width);
    return rc < r0 ? amplitude : 0.0;
}

} // namespace

RadialField make_initial_data(const InitialDataSpec& spec, const RadialGrid& g) {
    const double A = spec.amplitude;
    const double R = g.radius;
    if (!(A >= 0.0) || !std::isfinite(A))
        throw std::invalid_argument("make_initial_data: amplitude must be >= 0");
    if (spec.kind != InitialDataKind::constant) {
        if (spec.center < 0.0 || spec.center > R)
            throw std::invalid_argument("make_initial_data: center must lie in [0, R]");
        if (!(spec.width > 0.0) || spec.width > R)
            throw std::invalid_argument("make_initial_data: width must lie in (0, R]");
    }

    RadialField f(g.cells);
    switch (spec.kind) {
        case InitialDataKind::constant:
            for (int i = 0; i < g.cells; ++i) f[i] = A;
            break;
        case InitialDataKind::poly_bump:
            for (int i = 0; i < g.cells; ++i) {
                const double s = g.centers[i] / R;
                const double b = 1.0 - s * s;
                f[i] = A * b * b;
            }
            break;
        case InitialDataKind::gaussian_bump: {
            const double c = spec.center;
            const double w = spec.width;
            // even reflection keeps the profile symmetric about r = 0
            const double peak = 1.0 + std::exp(-2.0 * c * c / (w * w));
            for (int i = 0; i < g.cells; ++i) {
                const double r = g.centers[i];
                const double a = (r - c) / w;
                const double b = (r + c) / w;
                f[i] = A * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b)) / peak;
            }
            break;
        }
        case InitialDataKind::mollified_step: {
            const double w = spec.width;
            const double r0 = spec.center;
            const auto& st = mollifier_stencil();
            for (int i = 0; i < g.cells; ++i) {
                const double r = g.centers[i];
                double s = 0.0;
                for (int k = 0; k <= MollifierStencil::kPoints; ++k)
                    s += st.w[k] * flattened_step(r - w * st.x[k], A, r0, w, R);
                f[i] = s;
            }
            break;
        }
    }
    return f;
}

} // namespace ksrad
