#include "chanreg/solver.hpp"

#include <cmath>
#include <numbers>

#include "chanreg/calculus.hpp"
#include "chanreg/errors.hpp"
#include "chanreg/kernels.hpp"
#include "chanreg/random_fields.hpp"

namespace chanreg {

namespace {

constexpr double pi = std::numbers::pi;

// a*b + c*d + e*f on physical samples
ScalarField triple_product(const ScalarField& a, const ScalarField& b, const ScalarField& c,
                           const ScalarField& d, const ScalarField& e, const ScalarField& f,
                           Parity parity) {
    auto out = ScalarField::zeros(a.grid(), parity, Repr::Physical);
    kernels::multiply(a.values(), b.values(), out.values());
    kernels::multiply_add(c.values(), d.values(), out.values());
    kernels::multiply_add(e.values(), f.values(), out.values());
    return out;
}

ScalarField to_spectral_checked(const ScalarField& f, const char* name) {
    try {
        return to_spectral(f);
    } catch (const InvalidFieldError& e) {
        throw InternalConsistencyError(std::string(name) + ": " + e.what());
    }
}

} // namespace

Nonlinear nonlinear(const VelocityState& s, bool dealias) {
    const auto v1 = to_physical(s.v1);
    const auto v2 = to_physical(s.v2);
    const auto w = to_physical(s.w);
    auto advect = [&](const ScalarField& u, Parity parity, const char* name) {
        const auto ux = to_physical(ddx(u));
        const auto uy = to_physical(ddy(u));
        const auto uz = to_physical(ddz(u));
        auto n = to_spectral_checked(triple_product(v1, ux, v2, uy, w, uz, parity), name);
        if (dealias) dealias_in_place(n);
        return n;
    };
    return {advect(s.v1, Parity::EvenZ, "n1"), advect(s.v2, Parity::EvenZ, "n2"),
            advect(s.w, Parity::OddZ, "nw")};
}

PressureField pressure_from_nonlinear(const Nonlinear& n, const ForcingSpec& forcing) {
    const Grid& g = n.n1.grid();
    const int N = g.nmodes_z();
    auto p = ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral);
    auto pc = p.coeffs();
    const auto a1 = n.n1.coeffs(), a2 = n.n2.coeffs(), b = n.nw.coeffs();
    const auto f1 = forcing.f1.coeffs(), f2 = forcing.f2.coeffs(), gz = forcing.g.coeffs();
    const std::ptrdiff_t planes = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < planes; ++j) {
        const int ix = static_cast<int>(j / g.ny()), iy = static_cast<int>(j % g.ny());
        const double kx = derivative_wavenumber(ix, g.nx()), ky = derivative_wavenumber(iy, g.ny());
        for (int m = 0; m < N; ++m) {
            const double km = m * pi;
            const double k2 = kx * kx + ky * ky + km * km;
            if (k2 == 0.0) continue;
            const std::size_t i = static_cast<std::size_t>(j) * g.nz() + m;
            const Complex I(0.0, 1.0);
            const Complex div = I * kx * (a1[i] - f1[i]) + I * ky * (a2[i] - f2[i]) + km * (b[i] - gz[i]);
            pc[i] = div / k2;
        }
    }
    return {std::move(p)};
}

PressureField pressure_solve(const VelocityState& state, const ForcingSpec& forcing, bool dealias) {
    return pressure_from_nonlinear(nonlinear(state, dealias), forcing);
}

void project(VelocityState& s) {
    const Grid& g = s.grid();
    const int N = g.nmodes_z();
    auto a1 = s.v1.coeffs(), a2 = s.v2.coeffs(), b = s.w.coeffs();
    const std::ptrdiff_t planes = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < planes; ++j) {
        const int ix = static_cast<int>(j / g.ny()), iy = static_cast<int>(j % g.ny());
        const double kx = derivative_wavenumber(ix, g.nx()), ky = derivative_wavenumber(iy, g.ny());
        const std::size_t base = static_cast<std::size_t>(j) * g.nz();
        for (int m = 0; m < N; ++m) {
            const double km = m * pi;
            const double k2 = kx * kx + ky * ky + km * km;
            if (k2 == 0.0) continue;
            const std::size_t i = base + m;
            const Complex I(0.0, 1.0);
            const Complex phi = (I * kx * a1[i] + I * ky * a2[i] + km * b[i]) / k2;
            a1[i] += I * kx * phi;
            a2[i] += I * ky * phi;
            b[i] -= km * phi;
        }
        a1[base + N] = 0.0;
        a2[base + N] = 0.0;
        b[base] = 0.0;
        b[base + N] = 0.0;
    }
}

double divergence_max(const VelocityState& s) {
    const Grid& g = s.grid();
    const int N = g.nmodes_z();
    const auto a1 = s.v1.coeffs(), a2 = s.v2.coeffs(), b = s.w.coeffs();
    double worst = 0.0;
    const std::ptrdiff_t planes = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (std::ptrdiff_t j = 0; j < planes; ++j) {
        const int ix = static_cast<int>(j / g.ny()), iy = static_cast<int>(j % g.ny());
        const double kx = derivative_wavenumber(ix, g.nx()), ky = derivative_wavenumber(iy, g.ny());
        for (int m = 0; m <= N; ++m) {
            const std::size_t i = static_cast<std::size_t>(j) * g.nz() + m;
            const Complex I(0.0, 1.0);
            const Complex d = I * kx * a1[i] + I * ky * a2[i] + m * pi * b[i];
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

StepResult step(const VelocityState& s, const SolverConfig& cfg, const ForcingSpec& forcing,
                const Nonlinear& cur, const Nonlinear* prev) {
    const Grid& g = s.grid();
    const int N = g.nmodes_z();
    const double dt = cfg.dt, nu = cfg.nu;
    const double c1 = prev ? 1.5 : 1.0;
    const double c0 = prev ? -0.5 : 0.0;
    VelocityState next{s.v1, s.v2, s.w, s.t + dt};

    auto advance = [&](ScalarField& u, const ScalarField& nc, const ScalarField* np, const ScalarField& f) {
        auto uc = u.coeffs();
        const auto ncc = nc.coeffs(), fc = f.coeffs();
        const Complex* npc = np ? np->coeffs().data() : nullptr;
        const std::ptrdiff_t planes = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t j = 0; j < planes; ++j) {
            const int ix = static_cast<int>(j / g.ny()), iy = static_cast<int>(j % g.ny());
            const double kx = 2.0 * pi * g.kx(ix), ky = 2.0 * pi * g.ky(iy);
            for (int m = 0; m <= N; ++m) {
                const std::size_t i = static_cast<std::size_t>(j) * g.nz() + m;
                const double k2 = kx * kx + ky * ky + (m * pi) * (m * pi);
                const double h = 0.5 * nu * dt * k2;
                Complex explicit_part = c1 * (fc[i] - ncc[i]);
                if (npc) explicit_part += c0 * (fc[i] - npc[i]);
                uc[i] = ((1.0 - h) * uc[i] + dt * explicit_part) / (1.0 + h);
            }
        }
    };
    advance(next.v1, cur.n1, prev ? &prev->n1 : nullptr, forcing.f1);
    advance(next.v2, cur.n2, prev ? &prev->n2 : nullptr, forcing.f2);
    advance(next.w, cur.nw, prev ? &prev->nw : nullptr, forcing.g);
    project(next);
    if (cfg.dealias) {
        dealias_in_place(next.v1);
        dealias_in_place(next.v2);
        dealias_in_place(next.w);
    }
    if (!kernels::all_finite(next.v1.coeffs()) || !kernels::all_finite(next.v2.coeffs()) ||
        !kernels::all_finite(next.w.coeffs()))
        throw BlowUpSignal("non-finite velocity coefficient", s.t);

    auto n = nonlinear(next, cfg.dealias);
    auto p = pressure_from_nonlinear(n, forcing);
    return {std::move(next), std::move(p), std::move(n)};
}

VelocityState exact_shear(const Grid& grid, double t, double nu) {
    VelocityState s{ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                    ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                    ScalarField::zeros(grid, Parity::OddZ, Repr::Spectral), t};
    s.v1.set_mode(0, 0, 1, std::exp(-nu * pi * pi * t));
    return s;
}

VelocityState exact_taylor_green(const Grid& grid, double t, double nu) {
    VelocityState s{ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                    ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
                    ScalarField::zeros(grid, Parity::OddZ, Repr::Spectral), t};
    const double e = std::exp(-8.0 * pi * pi * nu * t);
    // sin X cos Y = (sin(X+Y) + sin(X-Y))/2, sin th = (e^{ith} - e^{-ith})/(2i)
    s.v1.set_mode(1, 1, 0, Complex(0.0, -0.25 * e));
    s.v1.set_mode(1, -1, 0, Complex(0.0, -0.25 * e));
    s.v2.set_mode(1, 1, 0, Complex(0.0, 0.25 * e));
    s.v2.set_mode(1, -1, 0, Complex(0.0, -0.25 * e));
    return s;
}

PressureField exact_taylor_green_pressure(const Grid& grid, double t, double nu) {
    auto p = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
    const double a = 0.125 * std::exp(-16.0 * pi * pi * nu * t);
    p.set_mode(2, 0, 0, a);
    p.set_mode(0, 2, 0, a);
    return {std::move(p)};
}

ForcingSpec make_forcing(const SolverConfig& cfg) {
    const Grid g = cfg.grid();
    if (cfg.forcing == ForcingKind::None || cfg.forcing_amplitude == 0.0) return ForcingSpec::zero(g);
    return random_forcing(g, cfg.forcing_seed, cfg.forcing_modes, cfg.forcing_amplitude);
}

VelocityState make_initial_state(const SolverConfig& cfg) {
    const Grid g = cfg.grid();
    switch (cfg.init) {
    case InitKind::Zero: {
        VelocityState s{ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral),
                        ScalarField::zeros(g, Parity::EvenZ, Repr::Spectral),
                        ScalarField::zeros(g, Parity::OddZ, Repr::Spectral), 0.0};
        return s;
    }
    case InitKind::Shear: return exact_shear(g, 0.0, cfg.nu);
    case InitKind::TaylorGreen: return exact_taylor_green(g, 0.0, cfg.nu);
    case InitKind::Random: return random_state(g, cfg.init_seed, cfg.init_modes, cfg.init_amplitude);
    case InitKind::Checkpoint: break;
    }
    throw InvalidFieldError("checkpoint initial states are loaded by the caller");
}

} // namespace chanreg
