#include <doctest.h>

#include <stdexcept>

#include "ksrad/grid.hpp"

#include <cmath>
#include <numbers>

using namespace ksrad;

TEST_CASE("shell volumes sum to the exact ball volume") {
    // n=3, R=1: 4 pi / 3
    const RadialGrid g3 = build_grid(3, 1.0, 64);
    double sum = 0.0;
    for (double w : g3.shell_volumes) sum += w;
    CHECK(std::abs(sum - 4.0 * std::numbers::pi / 3.0) <= 1e-12 * g3.domain_volume);

    // n=2, R=1: pi
    const RadialGrid g2 = build_grid(2, 1.0, 128);
    sum = 0.0;
    for (double w : g2.shell_volumes) sum += w;
    CHECK(std::abs(sum - std::numbers::pi) <= 1e-12 * std::numbers::pi);
}

TEST_CASE("1-D shells are intervals counted on both half-lines") {
    const RadialGrid g = build_grid(1, 2.0, 8);
    for (double w : g.shell_volumes) CHECK(w == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.domain_volume == doctest::Approx(4.0));
}

TEST_CASE("quadrature exactness across n and I") {
    for (int n : {1, 2, 3}) {
        for (int I : {8, 64, 512, 4096}) {
            const RadialGrid g = build_grid(n, 1.7, I);
            double sum = 0.0;
            for (double w : g.shell_volumes) sum += w;
            CHECK(std::abs(sum - g.domain_volume) <= 1e-12 * g.domain_volume);
        }
    }
}

TEST_CASE("centers strictly increasing, faces interleave centers") {
    const RadialGrid g = build_grid(3, 1.0, 32);
    for (int i = 0; i + 1 < g.cells; ++i) CHECK(g.centers[i] < g.centers[i + 1]);
    for (int i = 0; i < g.cells; ++i) {
        CHECK(g.faces[i] < g.centers[i]);
        CHECK(g.centers[i] < g.faces[i + 1]);
    }
    CHECK(g.faces.front() == 0.0);
    CHECK(g.faces.back() == 1.0);
}

TEST_CASE("invalid arguments rejected") {
    CHECK_THROWS_AS(build_grid(0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, 1.0, 3), std::invalid_argument);
}
