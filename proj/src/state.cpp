#include "chanreg/state.hpp"

#include <cmath>
#include <sstream>

#include "chanreg/errors.hpp"
#include "chanreg/field.hpp"

namespace chanreg {

ForcingSpec ForcingSpec::zero(const Grid& grid) {
    return {ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
            ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral),
            ScalarField::zeros(grid, Parity::OddZ, Repr::Spectral)};
}

std::string to_string(InitKind k) {
    switch (k) {
    case InitKind::Zero: return "zero";
    case InitKind::Shear: return "shear";
    case InitKind::TaylorGreen: return "taylor_green";
    case InitKind::Random: return "random";
    case InitKind::Checkpoint: return "checkpoint";
    }
    return "?";
}

std::string to_string(ForcingKind k) { return k == ForcingKind::None ? "none" : "random"; }

long SolverConfig::steps() const { return std::lround(t_end / dt); }

namespace {

template <class T>
[[noreturn]] void reject(const char* key, const char* constraint, T got) {
    std::ostringstream os;
    os << "key '" << key << "': must satisfy " << constraint << " (got " << got << ")";
    throw ParseError(os.str());
}

} // namespace

void SolverConfig::validate() const {
    if (!(nu > 0.0)) reject("nu", "nu > 0", nu);
    if (!(dt > 0.0)) reject("dt", "dt > 0", dt);
    if (!(t_end >= 0.0)) reject("t_end", "t_end >= 0", t_end);
    if (nx < 8 || nx % 2 != 0) reject("nx", "nx even and >= 8", nx);
    if (ny < 8 || ny % 2 != 0) reject("ny", "ny even and >= 8", ny);
    if (nz < 5) reject("nz", "nz >= 5", nz);
    if (diag_every < 1) reject("diag_every", "diag_every >= 1", diag_every);
    if (!(r > 3.0 && r < 4.0)) reject("r", "3 < r < 4", r);
    if (!(q > 1.0)) reject("q", "q > 1", q);
    if (!(alpha > 3.0)) reject("alpha", "alpha > 3", alpha);
    if (!(lambda1 > 0.0)) reject("lambda1", "lambda1 > 0", lambda1);
    if (!(c_generic >= 0.0)) reject("c_generic", "c_generic >= 0", c_generic);
    if (!(blowup_factor > 1.0)) reject("blowup_factor", "blowup_factor > 1", blowup_factor);
    if (!(init_amplitude >= 0.0)) reject("init_amplitude", "init_amplitude >= 0", init_amplitude);
    if (!(forcing_amplitude >= 0.0)) reject("forcing_amplitude", "forcing_amplitude >= 0", forcing_amplitude);
    const int hlim = std::min(nx, ny) / 3;
    const int vlim = (2 * (nz - 1)) / 3;
    if (init_modes < 1 || init_modes > std::min(hlim, vlim))
        reject("init_modes", "1 <= init_modes <= dealiased band of the grid", init_modes);
    if (forcing_modes < 1 || forcing_modes > std::min(hlim, vlim))
        reject("forcing_modes", "1 <= forcing_modes <= dealiased band of the grid", forcing_modes);
    if (init == InitKind::Checkpoint && init_path.empty())
        reject("init_path", "a checkpoint path when init = checkpoint", "<empty>");
}

} // namespace chanreg
