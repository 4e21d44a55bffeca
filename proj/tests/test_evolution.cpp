#include <doctest.h>

#include <stdexcept>

#include "ksrad/checkpoint.hpp"
#include "ksrad/evolution.hpp"
#include "ksrad/initial_data.hpp"
#include "ksrad/ode_oracles.hpp"
#include "support/manufactured.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace ksrad;

namespace {

ModelParams base_params(double mu, double kappa, double eps) {
    ModelParams p;
    p.dim = 3;
    p.radius = 1.0;
    p.mu = mu;
    p.kappa = kappa;
    p.eps = eps;
    p.p_exponent = 2.0;
    p.q_exponent = 4.0;
    return p;
}

} // namespace

TEST_CASE("hand-computed Heun step on the pure logistic decay") {
    // u = 1, kappa = 0, mu = 1, dt = 0.1: k1 = -1, predictor 0.9,
    // k2 = -0.81, update 1 - 0.05 (1 + 0.81) = 0.9095. Advection vanishes
    // because v = u makes v_r identically zero.
    const RadialGrid g = build_grid(3, 1.0, 32);
    const ModelParams p = base_params(1.0, 0.0, 0.0);
    SimState s = make_state(RadialField(g.cells, 1.0), g);
    const StepReport rep = step(s, p, g, 0.1);
    for (double v : s.u.values) CHECK(v == doctest::Approx(0.9095).epsilon(1e-13));
    CHECK(rep.clip_mass == 0.0);
    CHECK(s.status == SimStatus::running);
}

TEST_CASE("zero field is a fixed point") {
    const RadialGrid g = build_grid(2, 1.0, 16);
    const ModelParams p = base_params(1.0, 0.0, 0.05);
    SimState s = make_state(RadialField(g.cells, 0.0), g);
    step(s, p, g, 0.01);
    for (double v : s.u.values) CHECK(v == 0.0);
}

TEST_CASE("stable_dt: zero field, diffusive formula, near-blow-up scaling") {
    const RadialGrid g = build_grid(3, 1.0, 64);

    ModelParams p = base_params(1.0, 0.0, 0.0);
    SimState zero = make_state(RadialField(g.cells, 0.0), g);
    CHECK(stable_dt(zero, p, g) == p.dt_max);

    // pure diffusion bound: cfl * h^2 / (2 n eps)
    p.eps = 0.01;
    p.kappa = 0.0;
    p.dt_max = 1.0;
    CHECK(stable_dt(zero, p, g) ==
          doctest::Approx(p.cfl_safety * g.h * g.h / (2.0 * 3 * 0.01)).epsilon(1e-13));

    // reaction-dominated: dt halves when max u doubles
    ModelParams pr = base_params(0.2, 0.0, 0.0);
    pr.dt_min = 1e-15;
    SimState s1 = make_state(RadialField(g.cells, 1e3), g);
    SimState s2 = make_state(RadialField(g.cells, 2e3), g);
    const double dt1 = stable_dt(s1, pr, g);
    const double dt2 = stable_dt(s2, pr, g);
    CHECK(dt1 == doctest::Approx(pr.cfl_safety / (2.0 * 0.2 * 1e3)).epsilon(1e-12));
    CHECK(dt1 / dt2 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("per-step mass identity holds to roundoff on bump data") {
    const RadialGrid g = build_grid(3, 1.0, 128);
    const ModelParams p = base_params(0.5, 0.3, 0.02);
    const RadialField u0 = make_initial_data({InitialDataKind::poly_bump, 3.0, 0, 0.1}, g);
    SimState s = make_state(u0, g);
    const EllipticSystem sys(g);
    for (int k = 0; k < 50; ++k) {
        const double dt = stable_dt(s, p, g);
        const StepReport rep = step(s, p, g, dt, sys);
        CHECK(rep.clip_mass == 0.0);
        CHECK(std::abs(rep.mass_after - rep.mass_before - rep.reaction_mass_delta) <=
              1e-12 * std::max(1.0, rep.mass_before));
        CHECK(rep.cfl_advective <= p.cfl_safety * (1 + 1e-12));
        CHECK(rep.cfl_diffusive <= p.cfl_safety * (1 + 1e-12));
    }
    CHECK(s.mass_identity_err_accum <= 1e-12);
}

TEST_CASE("spatially constant data stays constant and tracks the logistic ODE") {
    const RadialGrid g = build_grid(3, 1.0, 64);
    ModelParams p = base_params(2.0, 0.0, 0.1);
    SimOptions opts;
    opts.t_end = 1.0;
    opts.record_every = 0.1;
    const Trajectory traj = simulate(RadialField(g.cells, 1.0), p, g, opts);
    CHECK(traj.status() == SimStatus::finished);

    const auto& u = traj.final_state.u;
    CHECK(max_value(u) - min_value(u) <= 1e-12 * max_value(u));
    // exact solution of u' = -2 u^2: 1 / (1 + 2 t)
    CHECK(max_value(u) == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
    // and the comparison bound m / (1 + (mu-1) m t) holds with margin
    for (const auto& rec : traj.records)
        CHECK(rec.linf <= logistic_bound(0.0, 2.0, 1.0, rec.t) * (1 + 1e-8));
}

TEST_CASE("checkpoint round-trips bit-exactly and resuming reproduces the run") {
    const RadialGrid g = build_grid(3, 1.0, 64);
    const ModelParams p = base_params(1.5, 0.2, 0.05);
    const RadialField u0 = make_initial_data({InitialDataKind::poly_bump, 2.0, 0, 0.1}, g);

    SimOptions whole;
    whole.t_end = 0.4;
    whole.record_every = 0.05;
    const Trajectory full = simulate(u0, p, g, whole);
    REQUIRE(full.status() == SimStatus::finished);

    SimOptions first;
    first.t_end = 0.2;
    first.record_every = 0.05;
    const Trajectory part1 = simulate(u0, p, g, first);

    const auto tmp = std::filesystem::temp_directory_path() / "ksrad_ckpt_test.txt";
    Checkpoint c;
    c.params = p;
    c.grid_cells = g.cells;
    c.t = part1.final_state.t;
    c.step_count = part1.final_state.step_count;
    c.u = part1.final_state.u;
    write_checkpoint(tmp.string(), c);
    const Checkpoint r = read_checkpoint(tmp.string());
    std::filesystem::remove(tmp);

    REQUIRE(r.u.size() == c.u.size());
    for (std::size_t i = 0; i < c.u.size(); ++i) CHECK(r.u[i] == c.u[i]); // bit-exact
    CHECK(r.t == c.t);
    CHECK(r.params.mu == p.mu);

    SimOptions second;
    second.t_start = r.t;
    second.t_end = 0.4;
    second.record_every = 0.05;
    const Trajectory part2 = simulate(r.u, r.params, g, second);

    for (int i = 0; i < g.cells; ++i)
        CHECK(part2.final_state.u[i] ==
              doctest::Approx(full.final_state.u[i]).epsilon(1e-12));
}

TEST_CASE("no clipping across the standard parameter matrix") {
    const RadialGrid g = build_grid(3, 1.0, 64);
    for (double mu : {0.3, 1.0, 2.0}) {
        for (double eps : {0.0, 0.05}) {
            ModelParams p = base_params(mu, 0.2, eps);
            SimOptions opts;
            opts.t_end = 0.3;
            opts.record_every = 0.05;
            const RadialField u0 =
                make_initial_data({InitialDataKind::poly_bump, 4.0, 0, 0.1}, g);
            const Trajectory traj = simulate(u0, p, g, opts);
            CHECK(traj.status() == SimStatus::finished);
            for (const auto& rec : traj.records) CHECK(rec.clip_mass == 0.0);
            CHECK(min_value(traj.final_state.u) >= 0.0);
        }
    }
}

TEST_CASE("blow-up cap and dt underflow terminate with the right status") {
    const RadialGrid g = build_grid(3, 1.0, 32);
    ModelParams p = base_params(0.1, 0.0, 0.0);
    p.blowup_cap = 50.0;
    p.dt_min = 1e-9;
    // strong bump: chemotactic concentration drives max u upward
    const RadialField u0 = make_initial_data({InitialDataKind::poly_bump, 40.0, 0, 0.1}, g);
    SimOptions opts;
    opts.t_end = 2.0;
    opts.record_every = 0.1;
    opts.threshold_watch = {45.0};
    const Trajectory traj = simulate(u0, p, g, opts);
    CHECK((traj.status() == SimStatus::blown_up || traj.status() == SimStatus::dt_underflow));
    if (traj.status() == SimStatus::blown_up) CHECK(traj.max_linf > 50.0);
    REQUIRE(traj.threshold_hits.size() == 1);
    CHECK(traj.threshold_hits[0].value > 45.0);
    CHECK(traj.threshold_hits[0].r < 0.5); // concentration at the origin
}

TEST_CASE("manufactured forced problem: convergence orders") {
    // Full physics at O(1) amplitude: the donor-cell advective flux is
    // first order. With a small amplitude the advective error term (~ h A^2)
    // is subdominant and the second-order diffusion/reaction core shows.
    auto run_order = [](double A, double eps, int I0) {
        manufactured::Problem pb;
        pb.eps = eps;
        pb.A = A;
        ModelParams p = base_params(pb.mu, pb.kappa, pb.eps);
        double errs[3];
        int k = 0;
        for (int I : {I0, 2 * I0, 4 * I0}) {
            const RadialGrid g = build_grid(pb.n, pb.R, I);
            RadialField u0(g.cells);
            for (int i = 0; i < g.cells; ++i) u0[i] = manufactured::u_exact(pb, g.centers[i], 0.0);
            ModelParams pp = p;
            pp.dt_max = 0.2 * pb.R / I; // dt ~ h
            SimOptions opts;
            opts.t_end = 0.25;
            opts.record_every = 0.0;
            opts.source = [&](double r, double t) { return manufactured::source(pb, r, t); };
            const Trajectory traj = simulate(u0, pp, g, opts);
            REQUIRE(traj.status() == SimStatus::finished);
            double err = 0.0;
            for (int i = 0; i < g.cells; ++i)
                err = std::max(err, std::abs(traj.final_state.u[i] -
                                             manufactured::u_exact(pb, g.centers[i], 0.25)));
            errs[k++] = err;
        }
        const double order1 = std::log2(errs[0] / errs[1]);
        const double order2 = std::log2(errs[1] / errs[2]);
        return 0.5 * (order1 + order2);
    };

    const double order_full = run_order(1.0, 0.05, 32);
    CHECK(order_full >= 0.8); // upwind advection dominates

    const double order_smooth = run_order(1e-3, 0.05, 32);
    CHECK(order_smooth >= 1.8); // diffusion/reaction core is second order

    const double order_hyperbolic = run_order(1.0, 0.0, 32);
    CHECK(order_hyperbolic >= 0.8); // first-order upwind limit scheme
}
