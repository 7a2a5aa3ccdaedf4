#pragma once

#include <cstdint>
#include <numbers>
#include <string>

#include "chanreg/field.hpp"

namespace chanreg {

/// Horizontal velocity (v1, v2) and vertical velocity w at time t.
/// v1, v2 are EvenZ and w is OddZ; all three spectral.
struct VelocityState {
    ScalarField v1;
    ScalarField v2;
    ScalarField w;
    double t = 0.0;

    const Grid& grid() const noexcept { return v1.grid(); }
};

/// Time-independent body force (f1, f2, g).
struct ForcingSpec {
    ScalarField f1;
    ScalarField f2;
    ScalarField g;

    static ForcingSpec zero(const Grid& grid);
};

/// Pressure with zero mean, EvenZ.
struct PressureField {
    ScalarField p;
};

enum class InitKind : std::uint8_t { Zero, Shear, TaylorGreen, Random, Checkpoint };
enum class ForcingKind : std::uint8_t { None, Random };

std::string to_string(InitKind k);
std::string to_string(ForcingKind k);

struct SolverConfig {
    double nu = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    int nx = 0;
    int ny = 0;
    int nz = 0;
    bool dealias = true;
    int diag_every = 1;

    InitKind init = InitKind::Zero;
    std::uint64_t init_seed = 0;
    double init_amplitude = 1.0;  // L2 norm of the random initial velocity
    int init_modes = 2;           // band limit of the random initial velocity
    std::string init_path;        // checkpoint file for InitKind::Checkpoint

    ForcingKind forcing = ForcingKind::None;
    std::uint64_t forcing_seed = 0;
    double forcing_amplitude = 0.0;  // L2 norm of (f1, f2, g)
    int forcing_modes = 2;

    double lambda1 = std::numbers::pi * std::numbers::pi;  // Poincare constant
    double r = 3.5;                                         // baroclinic exponent, 3 < r < 4
    double q = 2.0;                                         // pressure exponent, q > 1
    double alpha = 4.0;                                     // time exponent, alpha > 3
    double c_generic = 1.0;                                 // stand-in for unnamed constants
    double blowup_factor = 1e6;                             // energy / initial energy threshold

    Grid grid() const { return Grid(nx, ny, nz); }
    /// Number of steps needed to reach t_end.
    long steps() const;
    /// Throws ParseError naming the first violated constraint.
    void validate() const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

} // namespace chanreg
