#include "chanreg/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chanreg/errors.hpp"
#include "chanreg/kernels.hpp"

namespace chanreg {

namespace {

using std::numbers::pi;

constexpr double kCompatibilityTol = 1e-10;

void require_spectral(const ScalarField& f, const char* op) {
    if (!f.is_spectral()) throw RepresentationError(std::string(op) + ": field must be spectral");
}

// out(ix,iy,m) = mult(ix,iy) * in(ix,iy,m)
template <class Mult>
ScalarField apply_horizontal(const ScalarField& f, Mult&& mult) {
    const Grid& g = f.grid();
    ScalarField out = ScalarField::zeros(g, f.parity(), Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy) {
            const Complex s = mult(ix, iy);
            const auto base = g.index(ix, iy, 0);
            for (int m = 0; m < nz; ++m) dst[base + m] = s * in[base + m];
        }
    return out;
}

} // namespace

double derivative_wavenumber(int i, int n) noexcept {
    if (2 * i == n) return 0.0;
    return 2.0 * pi * Grid::wavenumber(i, n);
}

ScalarField ddx(const ScalarField& f) {
    require_spectral(f, "ddx");
    const int nx = f.grid().nx();
    return apply_horizontal(f, [nx](int ix, int) { return Complex(0.0, derivative_wavenumber(ix, nx)); });
}

ScalarField ddy(const ScalarField& f) {
    require_spectral(f, "ddy");
    const int ny = f.grid().ny();
    return apply_horizontal(f, [ny](int, int iy) { return Complex(0.0, derivative_wavenumber(iy, ny)); });
}

ScalarField laplacian_h(const ScalarField& f) {
    require_spectral(f, "laplacian_h");
    const Grid& g = f.grid();
    return apply_horizontal(f, [&g](int ix, int iy) {
        const double kx = g.kx(ix), ky = g.ky(iy);
        return Complex(-4.0 * pi * pi * (kx * kx + ky * ky), 0.0);
    });
}

ScalarField ddz(const ScalarField& f) {
    require_spectral(f, "ddz");
    const Grid& g = f.grid();
    const Parity to = flip(f.parity());
    ScalarField out = ScalarField::zeros(g, to, Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    const int nz = g.nz(), N = g.nmodes_z();
    const double sign = f.parity() == Parity::EvenZ ? -1.0 : 1.0;
    const auto ncol = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < ncol; ++c)
        for (int m = 1; m < N; ++m) dst[c * nz + m] = sign * m * pi * in[c * nz + m];
    return out;
}

ScalarField divergence_h(const ScalarField& v1, const ScalarField& v2) {
    if (v1.parity() != Parity::EvenZ || v2.parity() != Parity::EvenZ)
        throw InvalidFieldError("divergence_h: horizontal velocity must be EvenZ");
    ScalarField d = ddx(v1);
    d += ddy(v2);
    return d;
}

PlanarField ddx(const PlanarField& f) {
    const Grid& g = f.grid();
    auto out = PlanarField::zeros(g, Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy) {
            const auto i = static_cast<std::size_t>(ix) * g.ny() + iy;
            dst[i] = Complex(0.0, derivative_wavenumber(ix, g.nx())) * in[i];
        }
    return out;
}

PlanarField ddy(const PlanarField& f) {
    const Grid& g = f.grid();
    auto out = PlanarField::zeros(g, Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy) {
            const auto i = static_cast<std::size_t>(ix) * g.ny() + iy;
            dst[i] = Complex(0.0, derivative_wavenumber(iy, g.ny())) * in[i];
        }
    return out;
}

PlanarField vertical_average(const ScalarField& f) {
    require_spectral(f, "vertical_average");
    const Grid& g = f.grid();
    auto out = PlanarField::zeros(g, Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    const int nz = g.nz(), N = g.nmodes_z();
    for (std::size_t c = 0; c < g.planar_size(); ++c) {
        if (f.parity() == Parity::EvenZ) {
            dst[c] = in[c * nz];
        } else {
            Complex s = 0.0;
            for (int m = 1; m < N; m += 2) s += in[c * nz + m] * (2.0 / (m * pi));
            dst[c] = s;
        }
    }
    return out;
}

ScalarField extend_vertically(const PlanarField& f, const Grid& grid) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("extend_vertically: field must be spectral");
    if (f.grid().nx() != grid.nx() || f.grid().ny() != grid.ny())
        throw InvalidFieldError("extend_vertically: horizontal grid mismatch");
    auto out = ScalarField::zeros(grid, Parity::EvenZ, Repr::Spectral);
    const auto in = f.coeffs();
    auto dst = out.coeffs();
    for (std::size_t c = 0; c < grid.planar_size(); ++c) dst[c * grid.nz()] = in[c];
    return out;
}

ScalarField fluctuation(const ScalarField& f) {
    require_spectral(f, "fluctuation");
    if (f.parity() != Parity::EvenZ)
        throw InvalidFieldError("fluctuation: only defined for EvenZ fields");
    ScalarField out = f;
    auto c = out.coeffs();
    const int nz = f.grid().nz();
    for (std::size_t col = 0; col < f.grid().planar_size(); ++col) c[col * nz] = 0.0;
    return out;
}

ScalarField vertical_velocity(const ScalarField& v1, const ScalarField& v2) {
    const ScalarField div = divergence_h(v1, v2);
    const Grid& g = div.grid();
    const auto d = div.coeffs();
    const int nz = g.nz(), N = g.nmodes_z();

    double mean_defect = 0.0;
    for (std::size_t c = 0; c < g.planar_size(); ++c) mean_defect = std::max(mean_defect, std::abs(d[c * nz]));
    const double scale = std::max(1.0, kernels::max_abs(d));
    if (mean_defect > kCompatibilityTol * scale)
        throw IncompatibleDivergenceError("vertical_velocity: vertical average of div_h v is " +
                                          std::to_string(mean_defect) + ", expected 0");

    auto w = ScalarField::zeros(g, Parity::OddZ, Repr::Spectral);
    auto out = w.coeffs();
    const auto ncol = static_cast<std::ptrdiff_t>(g.planar_size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < ncol; ++c)
        for (int m = 1; m < N; ++m) out[c * nz + m] = -d[c * nz + m] / (m * pi);
    return w;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    if (a.is_spectral() || b.is_spectral()) throw RepresentationError("multiply: fields must be physical");
    if (!(a.grid() == b.grid())) throw InvalidFieldError("multiply: grid mismatch");
    auto out = ScalarField::zeros(a.grid(), product_parity(a.parity(), b.parity()), Repr::Physical);
    kernels::multiply(a.values(), b.values(), out.values());
    return out;
}

} // namespace chanreg
