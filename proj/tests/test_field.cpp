#include "doctest.h"
#include "oracles.hpp"

#include <chanreg/errors.hpp>
#include <chanreg/norms.hpp>
#include <chanreg/random_fields.hpp>
#include <chanreg/transform.hpp>

#include <random>
#include <thread>

using namespace chanreg;
using oracle::pi;

namespace {

ScalarField random_physical(const Grid& g, Parity p, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(g.size());
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int iz = 0; iz < g.nz(); ++iz) {
                const bool wall = iz == 0 || iz == g.nz() - 1;
                v[g.index(ix, iy, iz)] = (p == Parity::OddZ && wall) ? 0.0 : u(rng);
            }
    return ScalarField::physical(g, p, std::move(v));
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid(7, 8, 5), InvalidFieldError);
    CHECK_THROWS_AS(Grid(8, 6, 5), InvalidFieldError);
    CHECK_THROWS_AS(Grid(8, 8, 4), InvalidFieldError);
    Grid g(8, 10, 5);
    CHECK(g.z(4) == 1.0);
    CHECK(g.kx(4) == -4);
    CHECK(g.ky(9) == -1);
}

TEST_CASE("constant field has only the zero mode") {
    Grid g(8, 8, 5);
    auto f = to_spectral(ScalarField::sample(g, Parity::EvenZ, [](double, double, double) { return 2.5; }));
    CHECK(std::abs(f.coeff(0, 0, 0) - Complex(2.5)) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) rest = std::max(rest, std::abs(f.coeffs()[i]));
    CHECK(rest < 1e-14);
}

TEST_CASE("cos(2 pi x) matches a direct discrete transform") {
    Grid g(16, 8, 9);
    auto phys = ScalarField::sample(g, Parity::EvenZ, [](double x, double, double) { return std::cos(2 * pi * x); });
    auto f = to_spectral(phys);
    // naive horizontal DFT at the m = 0 column
    for (int kx = -7; kx <= 7; ++kx) {
        std::complex<double> s = 0.0;
        for (int ix = 0; ix < g.nx(); ++ix)
            for (int iy = 0; iy < g.ny(); ++iy)
                s += phys.value(ix, iy, 0) * std::polar(1.0, -2 * pi * (kx * g.x(ix)));
        s /= double(g.nx() * g.ny());
        CHECK(std::abs(f.coeff(kx, 0, 0) - s) < 1e-14);
    }
    CHECK(std::abs(f.coeff(1, 0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(f.coeff(-1, 0, 0) - 0.5) < 1e-14);
    CHECK(oracle::max_abs(f) == doctest::Approx(0.5));
}

TEST_CASE("single cosine mode evaluates to cos(pi z) on the nodes") {
    Grid g(8, 8, 9);
    auto f = ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral);
    f.set_mode(0, 0, 1, 1.0);
    auto p = to_physical(f);
    for (int iz = 0; iz < g.nz(); ++iz) CHECK(std::abs(p.value(3, 5, iz) - std::cos(pi * g.z(iz))) < 1e-14);
    auto z = to_physical(ScalarField::zeros(g, Parity::OddZ, Repr::Spectral));
    CHECK(oracle::max_abs(z) == 0.0);
}

TEST_CASE("round trip and agreement with the serial reference") {
    for (Parity par : {Parity::EvenZ, Parity::OddZ}) {
        Grid g(12, 8, 7);
        auto phys = random_physical(g, par, 7);
        auto spec = to_spectral(phys);
        auto back = to_physical(spec);
        CHECK(oracle::max_diff(back, phys) <= 1e-12 * oracle::max_abs(phys));

        std::vector<double> v(phys.values().begin(), phys.values().end());
        std::vector<Complex> ref(g.size());
        transform::reference::forward(g, par, v, ref);
        double d = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) d = std::max(d, std::abs(ref[i] - spec.coeffs()[i]));
        CHECK(d < 1e-13);

        std::vector<double> rv(g.size());
        transform::reference::inverse(g, par, spec.coeffs(), rv);
        double e = 0.0;
        for (std::size_t i = 0; i < rv.size(); ++i) e = std::max(e, std::abs(rv[i] - phys.values()[i]));
        CHECK(e < 1e-12);
    }
}

TEST_CASE("spectral data evaluates like the direct sum") {
    Grid g(8, 8, 7);
    auto f = random_field(g, Parity::OddZ, 3, 2, 4);
    auto p = to_physical(f);
    for (int ix : {0, 3, 7})
        for (int iz = 0; iz < g.nz(); ++iz)
            CHECK(std::abs(p.value(ix, 5, iz) - oracle::eval(f, g.x(ix), g.y(5), g.z(iz))) < 1e-12);
}

TEST_CASE("odd fields vanish on the walls") {
    Grid g(8, 8, 9);
    auto f = to_physical(random_field(g, Parity::OddZ, 11, 3, 7));
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy) {
            CHECK(std::abs(f.value(ix, iy, 0)) <= 1e-12);
            CHECK(std::abs(f.value(ix, iy, g.nz() - 1)) <= 1e-12);
        }
}

TEST_CASE("Parseval against node quadrature") {
    for (Parity par : {Parity::EvenZ, Parity::OddZ}) {
        Grid g(10, 8, 9);
        auto phys = random_physical(g, par, 5);  // full band including Nyquist
        const double quad = oracle::node_integral_pow(phys, 2.0);
        const double spec = std::pow(l2_norm(to_spectral(phys)), 2);
        CHECK(std::abs(quad - spec) <= 1e-10 * quad);
    }
}

TEST_CASE("even wall derivative vanishes at second order") {
    auto wall_slope = [](int nz) {
        Grid g(8, 8, nz);
        auto f = ScalarField::sample(g, Parity::EvenZ,
                                     [](double, double, double z) { return std::cos(pi * z) + 0.3 * std::cos(2 * pi * z) + z * 0; });
        const double h = 1.0 / (nz - 1);
        return std::abs(-3 * f.value(0, 0, 0) + 4 * f.value(0, 0, 1) - f.value(0, 0, 2)) / (2 * h);
    };
    const double e1 = wall_slope(9), e2 = wall_slope(17), e3 = wall_slope(33);
    CHECK(std::log2(e1 / e2) >= 1.9);
    CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("invalid inputs") {
    Grid g(8, 8, 5);
    auto odd = ScalarField::sample(g, Parity::OddZ, [](double, double, double) { return 1.0; });
    CHECK_THROWS_AS(to_spectral(odd), InvalidFieldError);
    auto f = ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral);
    f.coeffs()[g.index(1, 0, 0)] = 1.0;  // partner (-1, 0) left at zero
    CHECK_THROWS_AS(to_physical(f), InvalidFieldError);
    CHECK_THROWS_AS(to_physical(to_physical(ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral))), RepresentationError);
    std::vector<Complex> bad(g.size());
    bad[0] = 1.0;
    CHECK_THROWS_AS(ScalarField::spectral(g, Parity::OddZ, bad), InvalidFieldError);
}

TEST_CASE("dealias") {
    Grid g(32, 32, 17);
    auto a = ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral);
    a.set_mode(1, 0, 0, 1.0);
    CHECK(oracle::max_diff(dealias(a), a) == 0.0);
    auto b = ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral);
    b.set_mode(15, 0, 0, 1.0);
    CHECK(oracle::max_abs(dealias(b)) == 0.0);
    CHECK(dealias_mz(g) == 10);

    auto r = to_spectral(random_physical(g, Parity::EvenZ, 9));
    auto d = dealias(r);
    CHECK(oracle::max_diff(dealias(d), d) == 0.0);
    CHECK(l2_norm(d) <= l2_norm(r));
    // orthogonality of the discarded part
    CHECK(std::abs(inner_product(d, r - d)) < 1e-12);
}

TEST_CASE("resample keeps band-limited fields") {
    Grid g(8, 8, 9), h(16, 12, 17);
    auto f = random_field(g, Parity::OddZ, 4, 2, 4);
    auto up = resample(f, h);
    auto back = resample(up, g);
    CHECK(oracle::max_diff(back, f) == 0.0);
    CHECK(l2_norm(up) == doctest::Approx(l2_norm(f)).epsilon(1e-14));
    CHECK(std::abs(oracle::eval(up, 0.3, 0.7, 0.2) - oracle::eval(f, 0.3, 0.7, 0.2)) < 1e-13);
}

TEST_CASE("transforms are safe to run from several threads") {
    Grid g(16, 16, 9);
    auto f = random_field(g, Parity::EvenZ, 2, 4, 6);
    const auto expected = to_physical(f);
    std::vector<double> worst(4, 0.0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (int k = 0; k < 5; ++k) worst[t] = std::max(worst[t], oracle::max_diff(to_physical(f), expected));
        });
    for (auto& th : pool) th.join();
    for (double w : worst) CHECK(w == 0.0);
}
