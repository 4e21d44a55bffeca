#include <doctest.h>

#include <stdexcept>

#include "ksrad/harness.hpp"
#include "ksrad/report_io.hpp"

#include <cmath>

using namespace ksrad;

namespace {

ModelParams bounded_params() {
    ModelParams p;
    p.dim = 3;
    p.radius = 1.0;
    p.mu = 2.0;
    p.kappa = 0.0;
    p.eps = 0.1;
    p.p_exponent = 1.5;
    p.q_exponent = 4.0;
    return p;
}

} // namespace

TEST_CASE("eps_sweep: zero data gives identically zero distances") {
    EpsSweepSpec spec;
    spec.u0 = {InitialDataKind::constant, 0.0, 0.0, 0.1};
    spec.params = bounded_params();
    spec.grid = {3, 1.0, 16};
    spec.eps0 = 0.1;
    spec.levels = 3;
    spec.t_end = 0.1;
    spec.cadence = 0.05;
    const auto res = eps_sweep(spec);
    for (double d : res.distances) CHECK(d == 0.0);
}

TEST_CASE("eps_sweep: constant data is eps-independent once the reaction binds dt") {
    // eps multiplies an identically zero Laplacian, and for eps small enough
    // the (eps-independent) reaction rate determines every step, so the
    // trajectories agree bitwise.
    EpsSweepSpec spec;
    spec.u0 = {InitialDataKind::constant, 1.0, 0.0, 0.1};
    spec.params = bounded_params();
    spec.grid = {3, 1.0, 32};
    spec.eps0 = 5e-4;
    spec.levels = 3;
    spec.t_end = 0.2;
    spec.cadence = 0.05;
    const auto res = eps_sweep(spec);
    // the elliptic solve returns the constant only to ulp accuracy, which
    // seeds eps-dependent noise in the diffusive flux: roundoff, not zero
    for (double d : res.distances) CHECK(d <= 1e-13);
}

TEST_CASE("eps_sweep: bounded bump run has decreasing distances, sane metric") {
    EpsSweepSpec spec;
    spec.u0 = {InitialDataKind::poly_bump, 2.0, 0.0, 0.1};
    spec.params = bounded_params();
    spec.grid = {3, 1.0, 48};
    spec.eps0 = 0.1;
    spec.levels = 4;
    spec.t_end = 0.25;
    spec.cadence = 0.05;
    spec.workers = 4;
    const auto res = eps_sweep(spec);

    REQUIRE(res.distances.size() == 3);
    for (std::size_t j = 0; j + 1 < res.distances.size(); ++j)
        CHECK(res.distances[j + 1] < res.distances[j]);
    CHECK(res.distances[0] > 1e-8); // far above roundoff

    // symmetry and triangle inequality of the sup-distance matrix
    const auto& D = res.distance_matrix;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CHECK(D[i][j] == D[j][i]);
            for (int k = 0; k < 4; ++k) CHECK(D[i][j] <= D[i][k] + D[k][j] + 1e-15);
        }
    for (const auto& lvl : res.levels) CHECK(lvl.status == SimStatus::finished);
    CHECK_FALSE(res.pair_truncated[0]);
}

TEST_CASE("eps_sweep rejects fewer than 3 levels") {
    EpsSweepSpec spec;
    spec.levels = 2;
    CHECK_THROWS_AS(eps_sweep(spec), std::invalid_argument);
}

TEST_CASE("blowup_scan: threshold below the initial max is hit at t = 0") {
    BlowupScanSpec spec;
    spec.u0 = {InitialDataKind::poly_bump, 10.0, 0.0, 0.1};
    spec.params = bounded_params();
    spec.params.mu = 0.5;
    spec.grid = {3, 1.0, 32};
    spec.M_list = {5.0};
    spec.eps_grid = {1e-1, 1e-2};
    spec.T_budget = 0.05;
    spec.cadence = 0.05;
    const auto res = blowup_scan(spec);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].exceeded);
    CHECK(res.rows[0].eps0_of_M == 1e-1); // the largest eps qualifies
    CHECK(res.rows[0].t_eps == 0.0);
}

TEST_CASE("blowup_scan validates its grids") {
    BlowupScanSpec spec;
    spec.params = bounded_params(); // mu = 2 not in (0,1)
    CHECK_THROWS_AS(blowup_scan(spec), std::invalid_argument);
    spec.params.mu = 0.5;
    spec.M_list = {2.0, 1.0};
    CHECK_THROWS_AS(blowup_scan(spec), std::invalid_argument);
    spec.M_list = {1.0};
    spec.eps_grid = {1e-3, 1e-2};
    CHECK_THROWS_AS(blowup_scan(spec), std::invalid_argument);
}

TEST_CASE("run_theorem_suite: empty scenario list yields an empty green report") {
    SuiteSpec spec;
    const SuiteReport report = run_theorem_suite(spec);
    CHECK(report.results.empty());
    CHECK(report.total_violations == 0);
}

TEST_CASE("run_theorem_suite: mu = 1.5 scenario finishes under the logistic bound") {
    Scenario sc;
    sc.name = "bounded";
    sc.params = bounded_params();
    sc.params.mu = 1.5;
    sc.grid = {3, 1.0, 48};
    sc.u0 = {InitialDataKind::poly_bump, 2.0, 0.0, 0.1};
    sc.t_end = 0.5;
    sc.cadence = 0.05;
    SuiteSpec spec;
    spec.scenarios = {sc};
    spec.calibration_probes = 20;
    const SuiteReport report = run_theorem_suite(spec);
    REQUIRE(report.results.size() == 1);
    CHECK(report.results[0].status == SimStatus::finished);
    CHECK(report.results[0].checks.total_violations() == 0);
    const auto& linf = report.results[0].checks.checks[static_cast<int>(CheckId::linf_bound)];
    CHECK(linf.enabled);
    CHECK(linf.violations == 0);
}

TEST_CASE("suite runs are deterministic, independent of worker count") {
    auto make_spec = [](int workers) {
        SuiteSpec spec;
        Scenario a;
        a.name = "a";
        a.params = bounded_params();
        a.grid = {3, 1.0, 32};
        a.u0 = {InitialDataKind::poly_bump, 2.0, 0.0, 0.1};
        a.t_end = 0.2;
        a.cadence = 0.05;
        Scenario b = a;
        b.name = "b";
        b.params.mu = 0.6;
        b.params.kappa = 0.4;
        Scenario c = b;
        c.name = "c";
        c.params.eps = 0.0;
        spec.scenarios = {a, b, c};
        spec.workers = workers;
        spec.calibration_probes = 15;
        spec.seed = 7;
        return spec;
    };
    const SuiteReport r1 = run_theorem_suite(make_spec(1));
    const SuiteReport r8 = run_theorem_suite(make_spec(8));
    REQUIRE(r1.results.size() == r8.results.size());
    for (std::size_t i = 0; i < r1.results.size(); ++i) {
        const std::string csv1 = records_csv_string(r1.results[i].trajectory.records, {});
        const std::string csv8 = records_csv_string(r8.results[i].trajectory.records, {});
        CHECK(csv1 == csv8); // byte identical
        CHECK(r1.results[i].K_hat == r8.results[i].K_hat);
    }
}

TEST_CASE("parallel_for_indexed propagates exceptions and covers every index") {
    std::vector<int> hits(100, 0);
    parallel_for_indexed(100, 8, [&](int i) { hits[i] = 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(
        parallel_for_indexed(10, 4, [](int i) { if (i == 7) throw std::runtime_error("x"); }),
        std::runtime_error);
}
