#pragma once

#include "chanreg/field.hpp"

// Differential and vertical-integral operators. All inputs are spectral
// unless stated otherwise; results are spectral.
namespace chanreg {

/// 2 pi k for the derivative along an n-point axis; zero at the Nyquist
/// index so that derivatives of real fields stay real.
double derivative_wavenumber(int i, int n) noexcept;

ScalarField ddx(const ScalarField& f);
ScalarField ddy(const ScalarField& f);
/// EvenZ -> OddZ and OddZ -> EvenZ. The even Nyquist mode cos(N pi z)
/// differentiates to sin(N pi z), which vanishes on the nodes and is dropped.
ScalarField ddz(const ScalarField& f);
/// Multiplier -4 pi^2 (kx^2 + ky^2).
ScalarField laplacian_h(const ScalarField& f);
/// d/dx v1 + d/dy v2; EvenZ inputs.
ScalarField divergence_h(const ScalarField& v1, const ScalarField& v2);

PlanarField ddx(const PlanarField& f);
PlanarField ddy(const PlanarField& f);

/// Integral over z in (0,1), exact for the basis: the m=0 slice of an
/// even field, sum of 2/(m pi) b_m over odd m for an odd field.
PlanarField vertical_average(const ScalarField& f);
/// z-independent even field equal to a planar field.
ScalarField extend_vertically(const PlanarField& f, const Grid& grid);
/// f minus its vertical average. Only defined for EvenZ fields: the
/// fluctuation of an odd field is not representable in the sine basis.
ScalarField fluctuation(const ScalarField& f);

/// w = -integral_0^z div_h v dxi. Throws IncompatibleDivergenceError when
/// the vertical average of div_h v exceeds 1e-10 (relative to max(1, |div_h v|)).
ScalarField vertical_velocity(const ScalarField& v1, const ScalarField& v2);

/// Pointwise product of two physical fields, with product parity.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

} // namespace chanreg
