#pragma once

#include <cstdint>

#include "chanreg/field.hpp"
#include "chanreg/state.hpp"

namespace chanreg {

/// Band-limited random field with coefficients |kx|, |ky| <= kmax and
/// m <= mmax drawn from a seeded normal distribution. The coefficients
/// depend only on (seed, kmax, mmax), so the same continuous field is
/// obtained on any grid that resolves the band. Normalized to unit L2 norm.
ScalarField random_field(const Grid& grid, Parity parity, std::uint64_t seed, int kmax, int mmax);
PlanarField random_planar(const Grid& grid, std::uint64_t seed, int kmax);

/// Random divergence-free state with zero horizontal mean velocity,
/// dealiased, scaled to ||(v, w)||_2 = amplitude.
VelocityState random_state(const Grid& grid, std::uint64_t seed, int kmax, double amplitude);

/// Random band-limited forcing with zero mean, scaled to ||(f, g)||_2 = amplitude.
ForcingSpec random_forcing(const Grid& grid, std::uint64_t seed, int kmax, double amplitude);

} // namespace chanreg
