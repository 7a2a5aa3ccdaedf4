#include "chanreg/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chanreg/errors.hpp"
#include "chanreg/kernels.hpp"
#include "chanreg/transform.hpp"

namespace chanreg {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kWallTol = 1e-10;

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidFieldError(msg);
}

} // namespace

std::string_view to_string(Parity p) noexcept { return p == Parity::EvenZ ? "even" : "odd"; }
std::string_view to_string(Repr r) noexcept { return r == Repr::Physical ? "physical" : "spectral"; }

double vertical_weight(Parity p, int m, int nmodes_z) noexcept {
    if (p == Parity::EvenZ) return (m == 0 || m == nmodes_z) ? 1.0 : 0.5;
    return (m > 0 && m < nmodes_z) ? 0.5 : 0.0;
}

// ---------------------------------------------------------------- ScalarField

ScalarField ScalarField::zeros(const Grid& grid, Parity parity, Repr repr) {
    ScalarField f(grid, parity, repr);
    if (repr == Repr::Physical)
        f.phys_.assign(grid.size(), 0.0);
    else
        f.spec_.assign(grid.size(), Complex(0.0, 0.0));
    return f;
}

ScalarField ScalarField::physical(const Grid& grid, Parity parity, std::vector<double> values) {
    require(values.size() == grid.size(), "field: physical data size does not match grid");
    ScalarField f(grid, parity, Repr::Physical);
    f.phys_ = std::move(values);
    return f;
}

ScalarField ScalarField::spectral(const Grid& grid, Parity parity, std::vector<Complex> coeffs) {
    require(coeffs.size() == grid.size(), "field: spectral data size does not match grid");
    if (parity == Parity::OddZ) {
        const int nz = grid.nz();
        for (std::size_t c = 0; c < grid.planar_size(); ++c)
            require(coeffs[c * nz] == Complex(0.0) && coeffs[c * nz + nz - 1] == Complex(0.0),
                    "field: odd field has a nonzero m=0 or m=N sine coefficient");
    }
    ScalarField f(grid, parity, Repr::Spectral);
    f.spec_ = std::move(coeffs);
    return f;
}

std::span<const double> ScalarField::values() const {
    if (repr_ != Repr::Physical) throw RepresentationError("field: physical values of a spectral field");
    return phys_;
}
std::span<double> ScalarField::values() {
    if (repr_ != Repr::Physical) throw RepresentationError("field: physical values of a spectral field");
    return phys_;
}
std::span<const Complex> ScalarField::coeffs() const {
    if (repr_ != Repr::Spectral) throw RepresentationError("field: coefficients of a physical field");
    return spec_;
}
std::span<Complex> ScalarField::coeffs() {
    if (repr_ != Repr::Spectral) throw RepresentationError("field: coefficients of a physical field");
    return spec_;
}

Complex ScalarField::coeff(int kx, int ky, int m) const {
    return coeffs()[grid_.index(Grid::slot(kx, grid_.nx()), Grid::slot(ky, grid_.ny()), m)];
}

void ScalarField::set_mode(int kx, int ky, int m, Complex c) {
    auto data = coeffs();
    if (parity_ == Parity::OddZ && (m == 0 || m == grid_.nmodes_z()))
        throw InvalidFieldError("field: sine mode index out of range");
    const int ix = Grid::slot(kx, grid_.nx()), iy = Grid::slot(ky, grid_.ny());
    const int jx = Grid::slot(-kx, grid_.nx()), jy = Grid::slot(-ky, grid_.ny());
    if (ix == jx && iy == jy) {
        data[grid_.index(ix, iy, m)] = Complex(c.real(), 0.0);
        return;
    }
    data[grid_.index(ix, iy, m)] = c;
    data[grid_.index(jx, jy, m)] = std::conj(c);
}

void ScalarField::require_congruent(const ScalarField& o, const char* op) const {
    if (!congruent(o))
        throw InvalidFieldError(std::string("field: ") + op +
                                " needs matching grid, parity and representation");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::axpy(double a, const ScalarField& o) {
    require_congruent(o, "axpy");
    if (repr_ == Repr::Physical)
        kernels::axpy<double>(a, o.phys_, phys_);
    else
        kernels::axpy<Complex>(a, o.spec_, spec_);
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    if (repr_ == Repr::Physical)
        kernels::scale<double>(a, phys_);
    else
        kernels::scale<Complex>(a, spec_);
    return *this;
}

// ---------------------------------------------------------------- PlanarField

PlanarField PlanarField::zeros(const Grid& grid, Repr repr) {
    PlanarField f(grid, repr);
    if (repr == Repr::Physical)
        f.phys_.assign(grid.planar_size(), 0.0);
    else
        f.spec_.assign(grid.planar_size(), Complex(0.0));
    return f;
}

PlanarField PlanarField::physical(const Grid& grid, std::vector<double> values) {
    require(values.size() == grid.planar_size(), "planar field: data size does not match grid");
    PlanarField f(grid, Repr::Physical);
    f.phys_ = std::move(values);
    return f;
}

PlanarField PlanarField::spectral(const Grid& grid, std::vector<Complex> coeffs) {
    require(coeffs.size() == grid.planar_size(), "planar field: data size does not match grid");
    PlanarField f(grid, Repr::Spectral);
    f.spec_ = std::move(coeffs);
    return f;
}

std::span<const double> PlanarField::values() const {
    if (repr_ != Repr::Physical) throw RepresentationError("planar field: values of a spectral field");
    return phys_;
}
std::span<double> PlanarField::values() {
    if (repr_ != Repr::Physical) throw RepresentationError("planar field: values of a spectral field");
    return phys_;
}
std::span<const Complex> PlanarField::coeffs() const {
    if (repr_ != Repr::Spectral) throw RepresentationError("planar field: coefficients of a physical field");
    return spec_;
}
std::span<Complex> PlanarField::coeffs() {
    if (repr_ != Repr::Spectral) throw RepresentationError("planar field: coefficients of a physical field");
    return spec_;
}

Complex PlanarField::coeff(int kx, int ky) const {
    return coeffs()[static_cast<std::size_t>(Grid::slot(kx, grid_.nx())) * grid_.ny() +
                    Grid::slot(ky, grid_.ny())];
}

void PlanarField::set_mode(int kx, int ky, Complex c) {
    auto data = coeffs();
    const auto at = [&](int ix, int iy) -> Complex& {
        return data[static_cast<std::size_t>(ix) * grid_.ny() + iy];
    };
    const int ix = Grid::slot(kx, grid_.nx()), iy = Grid::slot(ky, grid_.ny());
    const int jx = Grid::slot(-kx, grid_.nx()), jy = Grid::slot(-ky, grid_.ny());
    if (ix == jx && iy == jy) {
        at(ix, iy) = Complex(c.real(), 0.0);
        return;
    }
    at(ix, iy) = c;
    at(jx, jy) = std::conj(c);
}

PlanarField& PlanarField::operator*=(double a) {
    if (repr_ == Repr::Physical)
        kernels::scale<double>(a, phys_);
    else
        kernels::scale<Complex>(a, spec_);
    return *this;
}

// ---------------------------------------------------------------- transforms

double hermitian_defect(std::span<const Complex> c, const Grid& g, int nz_stride) {
    const int nx = g.nx(), ny = g.ny();
    double defect = 0.0;
#pragma omp parallel for schedule(static) reduction(max : defect)
    for (int ix = 0; ix < nx; ++ix) {
        const int jx = (nx - ix) % nx;
        for (int iy = 0; iy < ny; ++iy) {
            const int jy = (ny - iy) % ny;
            const std::size_t a = (static_cast<std::size_t>(ix) * ny + iy) * nz_stride;
            const std::size_t b = (static_cast<std::size_t>(jx) * ny + jy) * nz_stride;
            for (int m = 0; m < nz_stride; ++m)
                defect = std::max(defect, std::abs(c[a + m] - std::conj(c[b + m])));
        }
    }
    return defect;
}

ScalarField to_spectral(const ScalarField& f) {
    if (f.repr() != Repr::Physical) throw RepresentationError("to_spectral: field is already spectral");
    const Grid& g = f.grid();
    const auto v = f.values();
    if (f.parity() == Parity::OddZ) {
        const double scale = kernels::max_abs(v);
        const int N = g.nmodes_z();
        for (std::size_t c = 0; c < g.planar_size(); ++c) {
            const double lo = std::abs(v[c * g.nz()]), hi = std::abs(v[c * g.nz() + N]);
            if (lo > kWallTol * scale || hi > kWallTol * scale)
                throw InvalidFieldError("to_spectral: odd field does not vanish on the walls");
        }
    }
    auto out = ScalarField::zeros(g, f.parity(), Repr::Spectral);
    transform::forward(g, f.parity(), v, out.coeffs());
    return out;
}

ScalarField to_physical(const ScalarField& f) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("to_physical: field is already physical");
    const Grid& g = f.grid();
    const auto c = f.coeffs();
    const double defect = hermitian_defect(c, g, g.nz());
    if (defect > kHermitianTol * kernels::max_abs(c))
        throw InvalidFieldError("to_physical: coefficients are not Hermitian symmetric (defect " +
                                std::to_string(defect) + ")");
    auto out = ScalarField::zeros(g, f.parity(), Repr::Physical);
    transform::inverse(g, f.parity(), c, out.values());
    return out;
}

PlanarField to_spectral(const PlanarField& f) {
    if (f.repr() != Repr::Physical) throw RepresentationError("to_spectral: planar field is already spectral");
    auto out = PlanarField::zeros(f.grid(), Repr::Spectral);
    transform::forward_2d(f.grid(), f.values(), out.coeffs());
    return out;
}

PlanarField to_physical(const PlanarField& f) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("to_physical: planar field is already physical");
    const auto c = f.coeffs();
    if (hermitian_defect(c, f.grid(), 1) > kHermitianTol * kernels::max_abs(c))
        throw InvalidFieldError("to_physical: planar coefficients are not Hermitian symmetric");
    auto out = PlanarField::zeros(f.grid(), Repr::Physical);
    transform::inverse_2d(f.grid(), c, out.values());
    return out;
}

int dealias_mz(const Grid& grid) noexcept { return (2 * grid.nmodes_z()) / 3; }

void dealias_in_place(ScalarField& f) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("dealias: field must be spectral");
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny(), nz = g.nz(), mmax = dealias_mz(g);
    auto c = f.coeffs();
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < nx; ++ix) {
        const bool cut_x = 3 * std::abs(g.kx(ix)) > nx;
        for (int iy = 0; iy < ny; ++iy) {
            Complex* col = c.data() + g.index(ix, iy, 0);
            if (cut_x || 3 * std::abs(g.ky(iy)) > ny) {
                std::fill(col, col + nz, Complex(0.0));
                continue;
            }
            std::fill(col + mmax + 1, col + nz, Complex(0.0));
        }
    }
}

ScalarField dealias(const ScalarField& f) {
    ScalarField out = f;
    dealias_in_place(out);
    return out;
}

ScalarField resample(const ScalarField& f, const Grid& target) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("resample: field must be spectral");
    const Grid& src = f.grid();
    if (src == target) return f;
    auto out = ScalarField::zeros(target, f.parity(), Repr::Spectral);
    auto dst = out.coeffs();
    const auto in = f.coeffs();
    // keep |k| strictly below both Nyquist limits and m strictly below both N
    const int kxmax = std::min(src.nx(), target.nx()) / 2 - 1;
    const int kymax = std::min(src.ny(), target.ny()) / 2 - 1;
    const int mlim = std::min(src.nmodes_z(), target.nmodes_z());
    const int mmax = src.nmodes_z() == target.nmodes_z() ? mlim : mlim - 1;
    for (int kx = -kxmax; kx <= kxmax; ++kx)
        for (int ky = -kymax; ky <= kymax; ++ky) {
            const auto s = src.index(Grid::slot(kx, src.nx()), Grid::slot(ky, src.ny()), 0);
            const auto d = target.index(Grid::slot(kx, target.nx()), Grid::slot(ky, target.ny()), 0);
            for (int m = 0; m <= mmax; ++m) dst[d + m] = in[s + m];
        }
    if (f.parity() == Parity::OddZ) {
        const int N = target.nmodes_z();
        for (std::size_t c = 0; c < target.planar_size(); ++c) {
            dst[c * target.nz()] = 0.0;
            dst[c * target.nz() + N] = 0.0;
        }
    }
    return out;
}

} // namespace chanreg
