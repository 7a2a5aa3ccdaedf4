#pragma once

#include "chanreg/state.hpp"

namespace chanreg {

/// Advective terms (v.grad_h) v + w v_z (n1, n2; EvenZ) and
/// v.grad_h w + w w_z (nw; OddZ), evaluated pseudospectrally.
struct Nonlinear {
    ScalarField n1;
    ScalarField n2;
    ScalarField nw;
};

Nonlinear nonlinear(const VelocityState& state, bool dealias = true);

/// Solves -Lap p = div N - div (f, g) spectrally; zero mean gauge.
PressureField pressure_solve(const VelocityState& state, const ForcingSpec& forcing, bool dealias = true);
PressureField pressure_from_nonlinear(const Nonlinear& n, const ForcingSpec& forcing);

/// Spectral Leray projection onto divergence-free fields of the even/odd
/// extended periodic system. The vertical Nyquist mode m = N is removed
/// because sin(N pi z) cannot be represented on the nodes.
void project(VelocityState& state);

/// max |div_h v + w_z| over spectral coefficients.
double divergence_max(const VelocityState& state);

struct StepResult {
    VelocityState state;
    PressureField pressure;  // pressure of the new state
    Nonlinear nonlinear;     // advective terms of the new state
};

/// One CNAB2 step: Crank-Nicolson for nu Lap, Adams-Bashforth 2 for the
/// advective term and forcing, then Leray projection. With previous ==
/// nullptr the first-order starter (CN / forward Euler) is used.
/// Throws BlowUpSignal carrying state.t when a coefficient turns non-finite.
StepResult step(const VelocityState& state, const SolverConfig& config, const ForcingSpec& forcing,
                const Nonlinear& current, const Nonlinear* previous);

/// v = (cos(pi z) e^{-nu pi^2 t}, 0), w = 0, p = const.
VelocityState exact_shear(const Grid& grid, double t, double nu);
/// v = (sin 2pi x cos 2pi y, -cos 2pi x sin 2pi y) e^{-8 pi^2 nu t}, w = 0.
VelocityState exact_taylor_green(const Grid& grid, double t, double nu);
/// p = (cos 4pi x + cos 4pi y) e^{-16 pi^2 nu t} / 4.
PressureField exact_taylor_green_pressure(const Grid& grid, double t, double nu);

ForcingSpec make_forcing(const SolverConfig& config);
/// Initial state for every InitKind except Checkpoint.
VelocityState make_initial_state(const SolverConfig& config);

} // namespace chanreg
