#include "chanreg/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chanreg/calculus.hpp"
#include "chanreg/errors.hpp"
#include "chanreg/norms.hpp"
#include "chanreg/random_fields.hpp"

namespace chanreg {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// L^q norm; q = 2 uses Parseval so the degenerate exponent cases are exact
double lq(const ScalarField& f, double q) { return q == 2.0 ? l2_norm(f) : lq_norm(f, q); }
double lq(const PlanarField& f, double q) { return q == 2.0 ? l2_norm(f) : lq_norm_2d(f, q); }

InequalityReport ratio_report(std::string name, double lhs, double rhs, double cap) {
    InequalityReport r{std::move(name), lhs, rhs};
    if (lhs == 0.0)
        r.empirical_constant = 0.0;
    else
        r.empirical_constant = rhs > 0.0 ? lhs / rhs : inf;
    r.pass = std::isfinite(r.empirical_constant) && r.empirical_constant <= cap;
    return r;
}

PlanarField spectral(const PlanarField& f) { return f.repr() == Repr::Spectral ? f : to_spectral(f); }
ScalarField spectral(const ScalarField& f) { return f.is_spectral() ? f : to_spectral(f); }

} // namespace

InequalityReport check_gn_2d(const PlanarField& phi_in, double alpha, double cap) {
    if (!(alpha >= 2.0)) throw DomainError("check_gn_2d: alpha must be >= 2");
    const auto phi = spectral(phi_in);
    const double lhs = lq(phi, alpha);
    const double rhs = std::pow(l2_norm(phi), 2.0 / alpha) * std::pow(h1_norm(phi), (alpha - 2.0) / alpha);
    return ratio_report("gn_2d", lhs, rhs, cap);
}

InequalityReport check_gn_3d(const ScalarField& psi_in, double alpha, double cap) {
    if (!(alpha >= 2.0 && alpha <= 6.0)) throw DomainError("check_gn_3d: alpha must lie in [2, 6]");
    const auto psi = spectral(psi_in);
    const double lhs = lq(psi, alpha);
    const double rhs = std::pow(l2_norm(psi), (6.0 - alpha) / (2.0 * alpha)) *
                       std::pow(h1_norm(psi), 3.0 * (alpha - 2.0) / (2.0 * alpha));
    return ratio_report("gn_3d", lhs, rhs, cap);
}

InequalityReport check_interp_2d(const PlanarField& phi_in, double alpha, double beta, double cap) {
    if (!(alpha >= 2.0)) throw DomainError("check_interp_2d: alpha must be >= 2");
    if (!(beta > alpha)) throw DomainError("check_interp_2d: beta must exceed alpha");
    const auto phi = spectral(phi_in);
    const auto p = to_physical(phi);
    const auto px = to_physical(ddx(phi)), py = to_physical(ddy(phi));
    const auto v = p.values(), vx = px.values(), vy = py.values();
    double weighted = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        weighted += std::pow(std::abs(v[i]), alpha - 2.0) * (vx[i] * vx[i] + vy[i] * vy[i]);
    weighted /= static_cast<double>(v.size());
    const double na = lq(phi, alpha);
    const double lhs = lq(phi, beta);
    const double rhs = std::pow(na, alpha / beta) * std::pow(weighted, (beta - alpha) / (alpha * beta)) + na;
    return ratio_report("interp_2d", lhs, rhs, cap);
}

InequalityReport check_minkowski(const ProductTable& f, double beta, bool reversed) {
    if (!(beta >= 1.0)) throw DomainError("check_minkowski: beta must be >= 1");
    const std::size_t n1 = f.w1.size(), n2 = f.w2.size();
    if (f.values.size() != n1 * n2) throw DomainError("check_minkowski: table size mismatch");
    double lhs = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < n2; ++j) inner += f.w2[j] * std::abs(f.values[i * n2 + j]);
        lhs += f.w1[i] * std::pow(inner, beta);
    }
    lhs = std::pow(lhs, 1.0 / beta);
    double rhs = 0.0;
    for (std::size_t j = 0; j < n2; ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < n1; ++i) inner += f.w1[i] * std::pow(std::abs(f.values[i * n2 + j]), beta);
        rhs += f.w2[j] * std::pow(inner, 1.0 / beta);
    }
    if (reversed) std::swap(lhs, rhs);
    InequalityReport r{reversed ? "minkowski_reversed" : "minkowski", lhs, rhs};
    r.empirical_constant = lhs == 0.0 ? 0.0 : (rhs > 0.0 ? lhs / rhs : inf);
    r.pass = lhs <= rhs + 1e-10;
    return r;
}

ProductTable column_table(const ScalarField& f_in) {
    const auto f = f_in.is_spectral() ? to_physical(f_in) : f_in;
    const Grid& g = f.grid();
    ProductTable t;
    t.w1.assign(g.planar_size(), 1.0 / static_cast<double>(g.planar_size()));
    t.w2 = g.z_weights();
    t.values.assign(f.values().begin(), f.values().end());
    return t;
}

InequalityReport check_poincare_pz(const ScalarField& p_in) {
    const auto p = spectral(p_in);
    if (p.parity() != Parity::EvenZ) throw InvalidFieldError("check_poincare_pz: p must be EvenZ");
    const Grid& g = p.grid();
    const auto tilde = to_physical(fluctuation(p));
    // column integral of |p_z| on a vertically refined grid
    const Grid fine = g.with_nz(8 * g.nmodes_z() + 1);
    const auto pz = to_physical(resample(ddz(p), fine));
    const auto wz = fine.z_weights();
    InequalityReport r{"poincare_pz"};
    double worst_ratio = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy) {
            double col = 0.0;
            for (int k = 0; k < fine.nz(); ++k) col += wz[k] * std::abs(pz.value(ix, iy, k));
            r.rhs_structure = std::max(r.rhs_structure, col);
            for (int iz = 0; iz < g.nz(); ++iz) {
                const double a = std::abs(tilde.value(ix, iy, iz));
                r.lhs = std::max(r.lhs, a);
                if (a > 0.0) worst_ratio = std::max(worst_ratio, col > 0.0 ? a / col : inf);
                const double excess = a - col;
                if (excess > 1e-8) ++r.violation_count;
                r.max_violation = std::max(r.max_violation, excess);
            }
        }
    r.max_violation = std::max(r.max_violation, 0.0);
    r.empirical_constant = worst_ratio;
    r.pass = r.violation_count == 0;
    return r;
}

InequalityReport check_lemma_ll(const ScalarField& phi_in, const ScalarField& psi_in, const VelocityState& v,
                                double r, double eps, double cap) {
    if (!(r > 3.0 && r < 4.0)) throw DomainError("check_lemma_ll: r must lie in (3, 4)");
    if (!(eps > 0.0)) throw DomainError("check_lemma_ll: eps must be positive");
    const auto phi = spectral(phi_in), psi = spectral(psi_in);
    const Grid& g = phi.grid();
    if (!(psi.grid() == g) || !(v.grid() == g)) throw InvalidFieldError("check_lemma_ll: grid mismatch");

    const auto a = to_physical(v.v1), b = to_physical(v.v2);
    const auto f = to_physical(phi), h = to_physical(psi);
    const auto wz = g.z_weights();
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double mag = std::hypot(a.values()[i], b.values()[i]);
        lhs += wz[i % g.nz()] * mag * std::abs(f.values()[i]) * std::abs(h.values()[i]);
    }
    lhs /= static_cast<double>(g.planar_size());

    const auto sq = [](double x) { return x * x; };
    const double eps_part = eps * (sq(grad_h_norm(phi)) + sq(dz_norm(phi)) + sq(l2_norm(psi)));
    const double vt = lq_norm(fluctuation(v.v1), fluctuation(v.v2), r);
    const auto b1 = vertical_average(v.v1), b2 = vertical_average(v.v2);
    const double vbar_sq = sq(l2_norm(b1)) + sq(l2_norm(b2));
    const double gbar_sq = sq(grad_h_norm(b1)) + sq(grad_h_norm(b2));
    const double bracket = std::pow(vt, 2.0 * r / (r - 3.0)) + sq(vt) + (1.0 + vbar_sq) * (vbar_sq + gbar_sq);
    const double denom = bracket * sq(l2_norm(phi));
    const double num = std::max(0.0, lhs - eps_part);

    InequalityReport rep{"lemma_ll", lhs, denom};
    rep.empirical_constant = num == 0.0 ? 0.0 : (denom > 0.0 ? num / denom : inf);
    rep.pass = std::isfinite(rep.empirical_constant) && rep.empirical_constant <= cap;
    return rep;
}

// ------------------------------------------------------------------ family

std::vector<std::string> family_checks() {
    return {"gn_2d", "gn_3d", "interp_2d", "minkowski", "poincare_pz", "lemma_ll"};
}

std::vector<FamilyRow> run_family(const Grid& grid, const FamilyConfig& c) {
    if (c.count < 1) throw DomainError("run_family: count must be >= 1");
    if (4 * c.kmax > grid.nx() || 4 * c.kmax > grid.ny() || c.mmax >= grid.nmodes_z())
        throw DomainError("run_family: family band exceeds the grid");
    const double lambda = 10.0;
    std::vector<FamilyRow> rows;
    rows.reserve(static_cast<std::size_t>(c.count) * family_checks().size());
    for (int k = 0; k < c.count; ++k) {
        const std::uint64_t s = c.seed * 1000003ULL + static_cast<std::uint64_t>(k) * 16ULL;
        PlanarField phi2 = PlanarField::zeros(grid, Repr::Spectral);
        ScalarField psi3 = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
        ScalarField pe = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
        ScalarField phi = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
        ScalarField psi = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
        VelocityState v{ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                        ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                        ScalarField::zeros(grid, Parity::OddZ, Repr::Spectral), 0.0};
        if (k == 0) {
            phi2.set_mode(0, 0, 1.0);
            psi3.set_mode(0, 0, 0, 1.0);
            pe.set_mode(0, 0, 0, 1.0);
            phi.set_mode(0, 0, 0, 1.0);
            psi.set_mode(0, 0, 0, 1.0);
            v.v1.set_mode(0, 0, 0, 1.0);
        } else {
            phi2 = random_planar(grid, s + 1, c.kmax);
            psi3 = random_field(grid, Parity::OddZ, s + 2, c.kmax, c.mmax);
            pe = random_field(grid, Parity::EvenZ, s + 3, c.kmax, c.mmax);
            phi = random_field(grid, Parity::EvenZ, s + 4, c.kmax, c.mmax);
            psi = random_field(grid, Parity::OddZ, s + 5, c.kmax, c.mmax);
            v = random_state(grid, s + 6, c.kmax, 1.0);
        }
        auto add = [&](InequalityReport r, double scaled) { rows.push_back({k, std::move(r), scaled}); };
        add(check_gn_2d(phi2, c.gn2d_alpha, c.cap), check_gn_2d(lambda * phi2, c.gn2d_alpha, c.cap).empirical_constant);
        add(check_gn_3d(psi3, c.gn3d_alpha, c.cap), check_gn_3d(lambda * psi3, c.gn3d_alpha, c.cap).empirical_constant);
        add(check_interp_2d(phi2, c.interp_alpha, c.interp_beta, c.cap),
            check_interp_2d(lambda * phi2, c.interp_alpha, c.interp_beta, c.cap).empirical_constant);
        const auto tab = column_table(pe);
        auto tab_scaled = tab;
        for (auto& x : tab_scaled.values) x *= lambda;
        add(check_minkowski(tab, c.minkowski_beta, c.reversed_minkowski),
            check_minkowski(tab_scaled, c.minkowski_beta, c.reversed_minkowski).empirical_constant);
        add(check_poincare_pz(pe), check_poincare_pz(lambda * pe).empirical_constant);
        add(check_lemma_ll(phi, psi, v, c.lemma_r, c.lemma_eps, c.cap),
            check_lemma_ll(lambda * phi, lambda * psi, v, c.lemma_r, c.lemma_eps, c.cap).empirical_constant);
    }
    return rows;
}

} // namespace chanreg
