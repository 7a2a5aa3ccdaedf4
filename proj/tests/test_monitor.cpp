#include "doctest.h"
#include "oracles.hpp"

#include <chanreg/errors.hpp>
#include <chanreg/norms.hpp>
#include <chanreg/random_fields.hpp>
#include <chanreg/run.hpp>

using namespace chanreg;
using oracle::pi;

namespace {

SolverConfig cfg(InitKind init) {
    SolverConfig c;
    c.nu = 1.0;
    c.dt = 1e-3;
    c.t_end = 0.02;
    c.nx = c.ny = 16;
    c.nz = 9;
    c.init = init;
    return c;
}

} // namespace

TEST_CASE("records of closed-form states") {
    auto c = cfg(InitKind::Zero);
    Grid g = c.grid();
    auto zero = make_initial_state(c);
    auto rz = record(zero, PressureField{ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral)},
                     ForcingSpec::zero(g), c, nullptr);
    CHECK(rz.energy == 0.0);
    CHECK(rz.pz_l2q == 0.0);
    CHECK(rz.h1_v == 0.0);

    auto s = exact_shear(g, 0.1, 1.0);
    auto rs = record(s, pressure_solve(s, ForcingSpec::zero(g)), ForcingSpec::zero(g), c, nullptr);
    CHECK(rs.energy == doctest::Approx(0.5 * std::exp(-2 * pi * pi * 0.1)).epsilon(1e-14));
    CHECK(rs.pz_l2q == 0.0);
    CHECK(rs.vz == doctest::Approx(pi * pi * 0.5 * std::exp(-2 * pi * pi * 0.1)).epsilon(1e-13));

    auto tg = exact_taylor_green(g, 0.0, 1.0);
    auto rt = record(tg, pressure_solve(tg, ForcingSpec::zero(g)), ForcingSpec::zero(g), c, nullptr);
    CHECK(rt.pz_l2q == 0.0);
    CHECK(rt.vtilde_r == 0.0);
}

TEST_CASE("bound constants from the printed formulas") {
    auto c = cfg(InitKind::Shear);
    InitNorms n;
    n.v0_sq = 1.0;
    CHECK(k11(c, n) == 1.0);
    CHECK(k12(0.0, c, n) == 1.0);

    InitNorms f;
    f.f_sq = std::pow(pi, 4);
    c.lambda1 = pi * pi;
    CHECK(k11(c, f) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k12(2.0, c, f) == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));

    // zero data
    InitNorms z;
    CHECK(k2(0.0, c, {}, z) == 0.0);
    CHECK(kr(0.0, c, {}, z) == 1.0);

    // T = 0 with data: exponent K11 K12(0) + K11^{2/(r-2)} K12(0)
    InitNorms d;
    d.v0_sq = 0.2;
    d.v0_h1 = 0.9;
    d.w0_h1 = 0.1;
    const double K = 0.2;
    const double expected = std::exp(K * K + std::pow(K, 2.0 / (c.r - 2.0)) * K) * (1.0 + std::pow(0.9, 6));
    CHECK(kr(0.0, c, {}, d) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(k2(0.0, c, {}, d) == doctest::Approx(std::exp(K * K) * 1.0).epsilon(1e-14));

    std::vector<DiagnosticsRecord> rec(3);
    rec[1].t = 0.1;
    rec[2].t = 0.2;
    rec[1].pz_l2q = 1.0;
    CHECK_THROWS_AS(kr(0.3, c, rec, d), CoverageError);
    rec[0].t = 0.05;
    CHECK_THROWS_AS(kr(0.01, c, rec, d), CoverageError);
    // a resumed series carries the earlier integral in its first record
    const double plain = kr(0.05, c, rec, d);
    rec[0].pz_r_accum = 0.25;
    const double b6 = 1.0 + std::pow(0.9, 6);
    CHECK(kr(0.05, c, rec, d) / plain == doctest::Approx((b6 + 0.25) / b6).epsilon(1e-14));
}

TEST_CASE("bounds grow with T") {
    auto c = cfg(InitKind::Random);
    c.forcing = ForcingKind::Random;
    c.forcing_amplitude = 1.0;
    auto r = run(c, make_forcing(c), make_initial_state(c));
    auto rec = r.all_records();
    double last_r = 0.0, last_2 = 0.0;
    for (double T = 0.0; T <= 0.02; T += 0.0025) {
        const double a = kr(T, c, rec, r.init), b = k2(T, c, rec, r.init);
        CHECK(a >= last_r);
        CHECK(b >= last_2);
        last_r = a;
        last_2 = b;
    }
}

TEST_CASE("criterion accumulator matches the time integral") {
    auto c = cfg(InitKind::Random);
    c.forcing = ForcingKind::Random;
    c.forcing_amplitude = 5.0;
    c.diag_every = 2;
    auto r = run(c, make_forcing(c), make_initial_state(c));
    auto rec = r.all_records();
    TimeSeries s;
    double prev = -1.0;
    for (const auto& x : rec) {
        s.push_back(x.t, x.pz_l2q);
        CHECK(x.criterion_accum >= prev);
        prev = x.criterion_accum;
    }
    CHECK(rec.back().pz_l2q > 0.0);
    const double ref = std::pow(time_lalpha(s, c.alpha), c.alpha);
    CHECK(std::abs(rec.back().criterion_accum - ref) <= 1e-10 * ref);
}

TEST_CASE("energy residual") {
    auto c = cfg(InitKind::Zero);
    std::vector<DiagnosticsRecord> zero(4);
    for (int i = 0; i < 4; ++i) zero[i].t = 0.1 * i;
    for (double x : energy_residual(zero, c)) CHECK(x == 0.0);

    // quadratic energy is differentiated exactly on nonuniform samples
    std::vector<DiagnosticsRecord> q;
    for (double t : {0.0, 0.1, 0.25, 0.3, 0.7}) {
        DiagnosticsRecord d;
        d.t = t;
        d.energy = 1.0 + 2.0 * t + 3.0 * t * t;
        q.push_back(d);
    }
    auto res = energy_residual(q, c);
    for (std::size_t k = 0; k < q.size(); ++k) CHECK(res[k] == doctest::Approx(0.5 * (2.0 + 6.0 * q[k].t)).epsilon(1e-12));
}

TEST_CASE("averaged nonlinearity identity") {
    Grid g(16, 16, 9);
    auto flat = exact_taylor_green(g, 0.0, 1.0);
    CHECK(check_identity_avg_nonlinear(flat) < 1e-13);
    CHECK(check_identity_avg_nonlinear(exact_shear(g, 0.0, 1.0)) < 1e-14);
    for (std::uint64_t seed = 1; seed <= 3; ++seed)
        CHECK(check_identity_avg_nonlinear(random_state(g, seed, 4, 1.0)) <= 1e-9);
}

TEST_CASE("baroclinic residual") {
    auto c = cfg(InitKind::Zero);
    Grid g = c.grid();
    auto z = make_initial_state(c);
    auto p0 = PressureField{ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral)};
    auto zn = z;
    zn.t = 1e-3;
    CHECK(check_baroclinic_residual(z, z, zn, p0, ForcingSpec::zero(g), 1.0) == 0.0);
    CHECK_THROWS_AS(check_baroclinic_residual(z, z, z, p0, ForcingSpec::zero(g), 1.0), DomainError);
    // exact states: residual is the centered-difference error only
    auto a = exact_shear(g, 0.1 - 1e-3, 1.0), b = exact_shear(g, 0.1, 1.0), d = exact_shear(g, 0.1 + 1e-3, 1.0);
    const double r1 = check_baroclinic_residual(a, b, d, p0, ForcingSpec::zero(g), 1.0);
    auto a2 = exact_shear(g, 0.1 - 5e-4, 1.0), d2 = exact_shear(g, 0.1 + 5e-4, 1.0);
    const double r2 = check_baroclinic_residual(a2, b, d2, p0, ForcingSpec::zero(g), 1.0);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("verdict") {
    auto c = cfg(InitKind::Shear);
    auto r = run(c, ForcingSpec::zero(c.grid()), make_initial_state(c));
    auto rec = r.all_records();
    auto v = verdict(rec, c, r.init, r.blow_up, r.last_valid_time);
    CHECK(v.criterion_integral == 0.0);
    CHECK(v.energy_bound_held);
    CHECK(v.K11 == rec.front().energy);
    CHECK_FALSE(v.blow_up);
    auto back = CriterionReport::from_key_values(v.to_key_values());
    CHECK(back.K11 == v.K11);
    CHECK(back.KR == v.KR);
    CHECK(back.samples == v.samples);
    CHECK(v.to_text().find("no blow-up") != std::string::npos);

    auto zc = cfg(InitKind::Zero);
    auto zr = run(zc, ForcingSpec::zero(zc.grid()), make_initial_state(zc));
    auto zv = verdict(zr.all_records(), zc, zr.init, false, zr.last_valid_time);
    CHECK(zv.criterion_integral == 0.0);
    CHECK(zv.energy_bound_held);
    CHECK(zv.h1_bound_held);

    auto bv = verdict(rec, c, r.init, true, 0.0125);
    CHECK(bv.blow_up);
    CHECK(bv.last_valid_time == 0.0125);
    CHECK(bv.to_text().find("0.0125") != std::string::npos);
}
