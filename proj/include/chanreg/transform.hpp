#pragma once

#include <span>

#include "chanreg/field.hpp"

// Raw transform kernels behind to_spectral / to_physical.
//
// The fast path uses FFTW plans executed slab-parallel with OpenMP. The
// reference path evaluates the defining sums directly and serially; it is
// kept for testing and benchmarking only.
namespace chanreg::transform {

void forward(const Grid& grid, Parity parity, std::span<const double> phys, std::span<Complex> spec);
void inverse(const Grid& grid, Parity parity, std::span<const Complex> spec, std::span<double> phys);

void forward_2d(const Grid& grid, std::span<const double> phys, std::span<Complex> spec);
void inverse_2d(const Grid& grid, std::span<const Complex> spec, std::span<double> phys);

namespace reference {

void forward(const Grid& grid, Parity parity, std::span<const double> phys, std::span<Complex> spec);
void inverse(const Grid& grid, Parity parity, std::span<const Complex> spec, std::span<double> phys);

} // namespace reference

} // namespace chanreg::transform
