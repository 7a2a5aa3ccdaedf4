#include "doctest.h"
#include "oracles.hpp"

#include <chanreg/calculus.hpp>
#include <chanreg/errors.hpp>
#include <chanreg/norms.hpp>
#include <chanreg/random_fields.hpp>
#include <chanreg/run.hpp>

using namespace chanreg;
using oracle::pi;

namespace {

SolverConfig base(InitKind init, int n = 16, int nz = 9) {
    SolverConfig c;
    c.nu = 1.0;
    c.dt = 1e-3;
    c.t_end = 0.01;
    c.nx = c.ny = n;
    c.nz = nz;
    c.init = init;
    return c;
}

double dist(const VelocityState& a, const VelocityState& b) {
    return std::sqrt(std::pow(l2_norm(a.v1 - b.v1), 2) + std::pow(l2_norm(a.v2 - b.v2), 2) +
                     std::pow(l2_norm(a.w - b.w), 2));
}

} // namespace

TEST_CASE("exact solutions") {
    Grid g(16, 16, 9);
    auto s = exact_shear(g, 0.3, 0.5);
    auto v = to_physical(s.v1);
    for (int iz = 0; iz < g.nz(); ++iz)
        CHECK(v.value(2, 3, iz) == doctest::Approx(std::cos(pi * g.z(iz)) * std::exp(-0.5 * pi * pi * 0.3)));
    // stress-free walls
    auto vz = to_physical(ddz(s.v1));
    CHECK(std::abs(vz.value(0, 0, 0)) < 1e-15);
    CHECK(std::abs(vz.value(0, 0, g.nz() - 1)) < 1e-15);

    auto tg = exact_taylor_green(g, 0.01, 1.0);
    auto a = to_physical(tg.v1), b = to_physical(tg.v2);
    const double e = std::exp(-8 * pi * pi * 0.01);
    for (int ix = 0; ix < g.nx(); ix += 3)
        for (int iy = 0; iy < g.ny(); iy += 5) {
            const double x = g.x(ix), y = g.y(iy);
            CHECK(std::abs(a.value(ix, iy, 2) - std::sin(2 * pi * x) * std::cos(2 * pi * y) * e) < 1e-14);
            CHECK(std::abs(b.value(ix, iy, 2) + std::cos(2 * pi * x) * std::sin(2 * pi * y) * e) < 1e-14);
        }
    const double energy = std::pow(l2_norm(tg.v1), 2) + std::pow(l2_norm(tg.v2), 2);
    CHECK(energy == doctest::Approx(0.5 * std::exp(-16 * pi * pi * 0.01)).epsilon(1e-14));
    CHECK(divergence_max(tg) < 1e-14);
}

TEST_CASE("shear satisfies the discrete momentum equation") {
    Grid g(16, 16, 9);
    const double nu = 0.7, t = 0.2;
    auto s = exact_shear(g, t, nu);
    // v_t - nu (Lap_h v + v_zz) with v_t from the closed form
    auto res = nu * pi * pi * s.v1 + nu * (laplacian_h(s.v1) + ddz(ddz(s.v1)));
    CHECK(oracle::max_abs(res) < 1e-12);
    auto n = nonlinear(s);
    CHECK(oracle::max_abs(n.n1) == 0.0);
    CHECK(oracle::max_abs(n.n2) == 0.0);
    CHECK(oracle::max_abs(n.nw) == 0.0);
}

TEST_CASE("nonlinear terms and pressure of Taylor-Green") {
    Grid g(16, 16, 9);
    auto s = exact_taylor_green(g, 0.0, 1.0);
    auto n = nonlinear(s);
    CHECK(oracle::max_abs(n.nw) == 0.0);
    // (N1, N2) = -grad p with p = (cos 4 pi x + cos 4 pi y)/4
    auto p = exact_taylor_green_pressure(g, 0.0, 1.0).p;
    CHECK(oracle::max_diff(n.n1, -1.0 * ddx(p)) < 1e-14);
    CHECK(oracle::max_diff(n.n2, -1.0 * ddy(p)) < 1e-14);
    auto ps = pressure_solve(s, ForcingSpec::zero(g)).p;
    CHECK(oracle::max_diff(ps, p) < 1e-14);
    CHECK(std::abs(ps.coeff(0, 0, 0)) == 0.0);

    auto zero = make_initial_state(base(InitKind::Zero));
    auto nz0 = nonlinear(zero);
    CHECK(oracle::max_abs(nz0.n1) == 0.0);
    CHECK(oracle::max_abs(pressure_solve(zero, ForcingSpec::zero(zero.grid())).p) == 0.0);
}

TEST_CASE("pressure satisfies its Poisson equation") {
    Grid g(16, 16, 13);
    auto s = random_state(g, 4, 3, 1.0);
    auto f = random_forcing(g, 5, 2, 2.0);
    auto n = nonlinear(s);
    auto p = pressure_from_nonlinear(n, f).p;
    // Lap p + div N - div F = 0 on the modes the projection keeps
    auto lap = laplacian_h(p) + ddz(ddz(p));
    auto src = divergence_h(n.n1 - f.f1, n.n2 - f.f2) + ddz(n.nw - f.g);
    auto r = lap + src;
    double worst = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int m = 0; m < g.nmodes_z(); ++m) {
                if (ix == g.nx() / 2 || iy == g.ny() / 2 || (ix == 0 && iy == 0 && m == 0)) continue;
                worst = std::max(worst, std::abs(r.coeffs()[g.index(ix, iy, m)]));
            }
    CHECK(worst < 1e-11 * std::max(1.0, oracle::max_abs(src)));
}

TEST_CASE("projection is idempotent and removes divergence") {
    Grid g(16, 16, 9);
    VelocityState s{random_field(g, Parity::EvenZ, 1, 5, 7), random_field(g, Parity::EvenZ, 2, 5, 7),
                    random_field(g, Parity::OddZ, 3, 5, 7), 0.0};
    CHECK(divergence_max(s) > 1.0);
    project(s);
    CHECK(divergence_max(s) < 1e-13);
    auto again = s;
    project(again);
    CHECK(dist(again, s) < 1e-15);
}

TEST_CASE("one step of shear is third order locally") {
    auto err = [](double dt) {
        auto c = base(InitKind::Shear);
        c.dt = dt;
        auto s = make_initial_state(c);
        auto n = nonlinear(s);
        auto r = step(s, c, ForcingSpec::zero(s.grid()), n, nullptr);
        CHECK(r.state.t == dt);
        return dist(r.state, exact_shear(s.grid(), dt, 1.0));
    };
    const double e1 = err(4e-3), e2 = err(2e-3);
    CHECK(std::log2(e1 / e2) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("zero state stays zero and random runs stay divergence-free") {
    auto c = base(InitKind::Zero);
    c.nu = 50.0;
    auto r = run(c, ForcingSpec::zero(c.grid()), make_initial_state(c));
    CHECK(oracle::max_abs(r.final_state.v1) == 0.0);
    CHECK(oracle::max_abs(r.final_state.w) == 0.0);

    auto cr = base(InitKind::Random);
    cr.init_seed = 9;
    cr.forcing = ForcingKind::Random;
    cr.forcing_amplitude = 3.0;
    cr.nu = 0.05;
    auto rr = run(cr, make_forcing(cr), make_initial_state(cr));
    CHECK(rr.max_divergence <= 1e-11);
    CHECK(rr.max_reconstruction_error <= 1e-10);
    CHECK(rr.final_state.v1.parity() == Parity::EvenZ);
    CHECK(rr.final_state.w.parity() == Parity::OddZ);
    CHECK(rr.series.size() == 10);
}

TEST_CASE("run bookkeeping") {
    auto c = base(InitKind::Shear);
    c.t_end = 0.0;
    auto r = run(c, ForcingSpec::zero(c.grid()), make_initial_state(c));
    CHECK(r.series.empty());
    CHECK(r.initial.t == 0.0);

    c.t_end = 0.01;
    c.diag_every = 3;
    r = run(c, ForcingSpec::zero(c.grid()), make_initial_state(c));
    REQUIRE(r.series.size() == 4);  // steps 3, 6, 9 and the final step 10
    CHECK(r.series.back().t == doctest::Approx(0.01));
}

TEST_CASE("blow-up is reported with the last valid time") {
    auto c = base(InitKind::Random);
    c.init_amplitude = 1e-3;
    c.forcing = ForcingKind::Random;
    c.forcing_amplitude = 1e3;
    c.t_end = 0.05;
    auto r = run(c, make_forcing(c), make_initial_state(c));
    CHECK(r.blow_up);
    CHECK(r.last_valid_time < c.t_end);
    CHECK(r.last_valid_time >= 0.0);

    auto nan_cfg = base(InitKind::Random);
    nan_cfg.init_amplitude = 1e3;
    nan_cfg.nu = 1e-4;
    nan_cfg.dt = 0.05;
    nan_cfg.t_end = 50.0;
    nan_cfg.blowup_factor = 1e300;
    auto rn = run(nan_cfg, make_forcing(nan_cfg), make_initial_state(nan_cfg));
    CHECK(rn.blow_up);
    CHECK(std::isfinite(rn.last_valid_time));
}

TEST_CASE("config validation") {
    auto c = base(InitKind::Shear);
    CHECK_NOTHROW(c.validate());
    c.alpha = 3.0;
    CHECK_THROWS_AS(c.validate(), ParseError);
    c = base(InitKind::Shear);
    c.r = 4.0;
    CHECK_THROWS_AS(c.validate(), ParseError);
    c = base(InitKind::Shear);
    c.q = 1.0;
    CHECK_THROWS_AS(c.validate(), ParseError);
    c = base(InitKind::Checkpoint);
    CHECK_THROWS_AS(c.validate(), ParseError);
}
