#include "doctest.h"
#include "oracles.hpp"

#include <chanreg/errors.hpp>
#include <chanreg/inequality_lab.hpp>
#include <chanreg/norms.hpp>
#include <chanreg/random_fields.hpp>

#include <random>

using namespace chanreg;
using oracle::pi;

namespace {

PlanarField sinsin(const Grid& g) {
    return to_spectral(PlanarField::sample(g, [](double x, double y) { return std::sin(2 * pi * x) * std::sin(2 * pi * y); }));
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

} // namespace

TEST_CASE("GN in two dimensions") {
    Grid g(32, 32, 5), h(64, 64, 5);
    auto phi = random_planar(g, 3, 6);
    CHECK(check_gn_2d(phi, 2.0).empirical_constant == 1.0);
    auto a = check_gn_2d(sinsin(g), 4.0), b = check_gn_2d(sinsin(h), 4.0);
    CHECK(a.pass);
    CHECK(rel_close(a.empirical_constant, b.empirical_constant, 0.1));
    CHECK(rel_close(check_gn_2d(10.0 * phi, 4.0).empirical_constant, check_gn_2d(phi, 4.0).empirical_constant, 1e-10));
    auto zero = check_gn_2d(PlanarField::zeros(g, Repr::Spectral), 4.0);
    CHECK(zero.pass);
    CHECK(zero.empirical_constant == 0.0);
    CHECK_THROWS_AS(check_gn_2d(phi, 1.5), DomainError);
}

TEST_CASE("GN in three dimensions") {
    Grid g(16, 16, 17), h(32, 32, 33);
    auto psi = [](const Grid& gr) {
        return to_spectral(ScalarField::sample(gr, Parity::OddZ, [](double x, double y, double z) {
            return std::sin(2 * pi * x) * std::sin(2 * pi * y) * std::sin(pi * z);
        }));
    };
    auto r = random_field(g, Parity::EvenZ, 4, 3, 5);
    CHECK(check_gn_3d(r, 2.0).empirical_constant == 1.0);
    auto a = check_gn_3d(psi(g), 6.0), b = check_gn_3d(psi(h), 6.0);
    CHECK(std::isfinite(a.empirical_constant));
    CHECK(rel_close(a.empirical_constant, b.empirical_constant, 0.1));
    CHECK(rel_close(check_gn_3d(10.0 * r, 5.0).empirical_constant, check_gn_3d(r, 5.0).empirical_constant, 1e-10));
    CHECK_THROWS_AS(check_gn_3d(r, 6.5), DomainError);
}

TEST_CASE("two-dimensional interpolation") {
    Grid g(32, 32, 5), h(64, 64, 5);
    auto c = to_spectral(PlanarField::sample(g, [](double, double) { return 2.0; }));
    auto rc = check_interp_2d(c, 3.0, 5.0);
    CHECK(rc.empirical_constant <= 1.0 + 1e-14);
    auto s = [](const Grid& gr) { return to_spectral(PlanarField::sample(gr, [](double x, double) { return std::sin(2 * pi * x); })); };
    auto a = check_interp_2d(s(g), 2.0, 4.0), b = check_interp_2d(s(h), 2.0, 4.0);
    CHECK(a.pass);
    CHECK(rel_close(a.empirical_constant, b.empirical_constant, 0.1));
    auto phi = random_planar(g, 8, 6);
    CHECK(rel_close(check_interp_2d(10.0 * phi, 2.0, 4.0).empirical_constant,
                    check_interp_2d(phi, 2.0, 4.0).empirical_constant, 1e-10));
    CHECK_THROWS_AS(check_interp_2d(phi, 3.0, 3.0), DomainError);
}

TEST_CASE("Minkowski") {
    ProductTable sep;
    sep.w1 = {0.25, 0.25, 0.5};
    sep.w2 = {0.5, 0.5};
    const double gx[] = {1.0, -2.0, 0.5}, hy[] = {3.0, 1.0};
    for (double a : gx)
        for (double b : hy) sep.values.push_back(a * b);
    auto r = check_minkowski(sep, 2.5);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(r.rhs_structure).epsilon(1e-14));
    auto one = check_minkowski(sep, 1.0);
    CHECK(one.lhs == doctest::Approx(one.rhs_structure).epsilon(1e-14));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ProductTable t;
    t.w1.assign(20, 0.05);
    t.w2.assign(7, 1.0 / 7);
    for (int i = 0; i < 140; ++i) t.values.push_back(u(rng));
    auto rt = check_minkowski(t, 2.0);
    CHECK(rt.pass);
    CHECK(rt.empirical_constant <= 1.0 + 1e-10);
    CHECK_FALSE(check_minkowski(t, 2.0, true).pass);
    CHECK_THROWS_AS(check_minkowski(t, 0.5), DomainError);
}

TEST_CASE("vertical Poincare bound for p_z") {
    Grid g(8, 8, 17);
    auto flat = to_spectral(ScalarField::sample(g, Parity::EvenZ, [](double x, double, double) { return std::cos(2 * pi * x); }));
    auto rf = check_poincare_pz(flat);
    CHECK(rf.pass);
    CHECK(rf.lhs < 1e-15);
    auto c = to_spectral(ScalarField::sample(g, Parity::EvenZ, [](double, double, double z) { return std::cos(pi * z); }));
    auto rc = check_poincare_pz(c);
    CHECK(rc.pass);
    CHECK(rc.rhs_structure == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(rc.lhs == doctest::Approx(1.0).epsilon(1e-14));
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto r = check_poincare_pz(random_field(g, Parity::EvenZ, s, 2, 10));
        CHECK(r.violation_count == 0);
    }
}

TEST_CASE("velocity lemma") {
    Grid g(16, 16, 9), h(32, 32, 17);
    auto zero_v = VelocityState{ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral),
                                ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral),
                                ScalarField::zeros(g, Parity::OddZ, Repr::Spectral), 0.0};
    auto phi = random_field(g, Parity::EvenZ, 1, 4, 4);
    auto psi = random_field(g, Parity::OddZ, 2, 4, 4);
    auto r0 = check_lemma_ll(phi, psi, zero_v, 3.5, 0.1);
    CHECK(r0.lhs == 0.0);
    CHECK(r0.pass);
    auto v = random_state(g, 3, 4, 1.0);
    auto rz = check_lemma_ll(ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral), psi, v, 3.5, 0.1);
    CHECK(rz.lhs == 0.0);
    CHECK(rz.empirical_constant == 0.0);

    // small eps keeps the numerator positive
    auto a = check_lemma_ll(phi, psi, v, 3.5, 1e-4);
    auto b = check_lemma_ll(resample(phi, h), resample(psi, h), random_state(h, 3, 4, 1.0), 3.5, 1e-4);
    CHECK(a.empirical_constant > 0.0);
    CHECK(std::isfinite(a.empirical_constant));
    CHECK(rel_close(a.empirical_constant, b.empirical_constant, 0.1));
    auto s = check_lemma_ll(10.0 * phi, 10.0 * psi, v, 3.5, 1e-4);
    CHECK(rel_close(s.empirical_constant, a.empirical_constant, 1e-10));
    CHECK_THROWS_AS(check_lemma_ll(phi, psi, v, 4.0, 0.1), DomainError);
}

TEST_CASE("family sweep") {
    FamilyConfig c;
    c.count = 6;
    auto rows = run_family(Grid(16, 16, 9), c);
    CHECK(rows.size() == 6 * family_checks().size());
    for (const auto& r : rows) CHECK(r.report.pass);
    // the family is grid independent: the same continuous fields on a finer grid
    auto fine = run_family(Grid(32, 32, 17), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double a = rows[i].report.empirical_constant, b = fine[i].report.empirical_constant;
        if (rows[i].report.name != "poincare_pz") CHECK(std::abs(a - b) <= 0.1 * std::max(a, b) + 1e-15);
    }
    c.reversed_minkowski = true;
    bool any_fail = false;
    for (const auto& r : run_family(Grid(16, 16, 9), c)) any_fail |= !r.report.pass;
    CHECK(any_fail);
}
