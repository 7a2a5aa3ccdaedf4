#pragma once

// Independent reference evaluations used by the unit tests. Nothing here
// calls the FFT path.

#include <chanreg/field.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

/// Direct evaluation of a spectral field at a point.
inline double eval(const chanreg::ScalarField& f, double x, double y, double z) {
    const auto& g = f.grid();
    std::complex<double> s = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy) {
            const std::complex<double> e = std::polar(1.0, 2.0 * pi * (g.kx(ix) * x + g.ky(iy) * y));
            for (int m = 0; m < g.nz(); ++m) {
                const double phi = f.parity() == chanreg::Parity::EvenZ ? std::cos(m * pi * z) : std::sin(m * pi * z);
                s += f.coeffs()[g.index(ix, iy, m)] * e * phi;
            }
        }
    return s.real();
}

/// Trapezoid-in-z, uniform-in-xy sum of |f|^q over physical samples.
inline double node_integral_pow(const chanreg::ScalarField& f, double q) {
    const auto& g = f.grid();
    double s = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int iz = 0; iz < g.nz(); ++iz) {
                const double w = (iz == 0 || iz == g.nz() - 1) ? 0.5 : 1.0;
                s += w * std::pow(std::abs(f.value(ix, iy, iz)), q);
            }
    return s / (double(g.nx()) * g.ny() * (g.nz() - 1));
}

inline double max_diff(const chanreg::ScalarField& a, const chanreg::ScalarField& b) {
    double d = 0.0;
    if (a.is_spectral())
        for (std::size_t i = 0; i < a.coeffs().size(); ++i) d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    else
        for (std::size_t i = 0; i < a.values().size(); ++i) d = std::max(d, std::abs(a.values()[i] - b.values()[i]));
    return d;
}

inline double max_abs(const chanreg::ScalarField& a) {
    double d = 0.0;
    if (a.is_spectral())
        for (auto c : a.coeffs()) d = std::max(d, std::abs(c));
    else
        for (auto v : a.values()) d = std::max(d, std::abs(v));
    return d;
}

} // namespace oracle
