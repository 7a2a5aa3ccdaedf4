#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "chanreg/grid.hpp"

namespace chanreg {

using Complex = std::complex<double>;

/// Vertical symmetry of a field under the reflection z -> -z.
/// EvenZ fields expand in cos(m pi z), OddZ fields in sin(m pi z).
enum class Parity : std::uint8_t { EvenZ, OddZ };

enum class Repr : std::uint8_t { Physical, Spectral };

/// Parity of a pointwise product.
constexpr Parity product_parity(Parity a, Parity b) noexcept {
    return a == b ? Parity::EvenZ : Parity::OddZ;
}
/// Parity of the z-derivative.
constexpr Parity flip(Parity p) noexcept {
    return p == Parity::EvenZ ? Parity::OddZ : Parity::EvenZ;
}

std::string_view to_string(Parity p) noexcept;
std::string_view to_string(Repr r) noexcept;

/// Discrete L2 weight of vertical mode m, i.e. the trapezoid value of
/// the integral of phi_m^2 over (0,1) on the Lobatto nodes. Equal to the
/// continuous value except for the even Nyquist mode cos(N pi z), whose
/// discrete weight is 1.
double vertical_weight(Parity p, int m, int nmodes_z) noexcept;

/// A real scalar on the channel.
///
/// Spectral convention:
///   f(x,y,z) = sum_{kx,ky} sum_m c(kx,ky,m) exp(2 pi i (kx x + ky y)) phi_m(z)
/// with phi_m = cos(m pi z) for EvenZ and sin(m pi z) for OddZ. Coefficients
/// are stored at (ix, iy, m) with m fastest; kx = Grid::wavenumber(ix, nx).
/// OddZ fields keep the m = 0 and m = N slots at exactly zero.
///
/// Physical samples are stored at (ix, iy, iz) with iz fastest.
class ScalarField {
public:
    static ScalarField zeros(const Grid& grid, Parity parity, Repr repr);
    static ScalarField physical(const Grid& grid, Parity parity, std::vector<double> values);
    static ScalarField spectral(const Grid& grid, Parity parity, std::vector<Complex> coeffs);

    /// Samples fn(x, y, z) on the collocation nodes.
    template <class Fn>
    static ScalarField sample(const Grid& grid, Parity parity, Fn&& fn) {
        std::vector<double> v(grid.size());
        for (int ix = 0; ix < grid.nx(); ++ix)
            for (int iy = 0; iy < grid.ny(); ++iy)
                for (int iz = 0; iz < grid.nz(); ++iz)
                    v[grid.index(ix, iy, iz)] = fn(grid.x(ix), grid.y(iy), grid.z(iz));
        return physical(grid, parity, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    Parity parity() const noexcept { return parity_; }
    Repr repr() const noexcept { return repr_; }
    bool is_spectral() const noexcept { return repr_ == Repr::Spectral; }

    std::span<const double> values() const;
    std::span<double> values();
    std::span<const Complex> coeffs() const;
    std::span<Complex> coeffs();

    double value(int ix, int iy, int iz) const { return values()[grid_.index(ix, iy, iz)]; }
    /// Coefficient of signed wavenumber (kx, ky) and vertical mode m.
    Complex coeff(int kx, int ky, int m) const;
    /// Sets (kx,ky,m) to c and (-kx,-ky,m) to conj(c).
    void set_mode(int kx, int ky, int m, Complex c);

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double a);
    /// this += a * o
    ScalarField& axpy(double a, const ScalarField& o);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

    /// Same grid, parity and representation.
    bool congruent(const ScalarField& o) const noexcept {
        return grid_ == o.grid_ && parity_ == o.parity_ && repr_ == o.repr_;
    }

private:
    ScalarField(const Grid& g, Parity p, Repr r) : grid_(g), parity_(p), repr_(r) {}
    void require_congruent(const ScalarField& o, const char* op) const;

    Grid grid_;
    Parity parity_;
    Repr repr_;
    std::vector<double> phys_;
    std::vector<Complex> spec_;
};

/// A real function on the horizontal cross-section M = (0,1)^2.
/// Uses the horizontal part of a Grid; nz is carried but ignored.
class PlanarField {
public:
    static PlanarField zeros(const Grid& grid, Repr repr);
    static PlanarField physical(const Grid& grid, std::vector<double> values);
    static PlanarField spectral(const Grid& grid, std::vector<Complex> coeffs);

    template <class Fn>
    static PlanarField sample(const Grid& grid, Fn&& fn) {
        std::vector<double> v(grid.planar_size());
        for (int ix = 0; ix < grid.nx(); ++ix)
            for (int iy = 0; iy < grid.ny(); ++iy)
                v[static_cast<std::size_t>(ix) * grid.ny() + iy] = fn(grid.x(ix), grid.y(iy));
        return physical(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    Repr repr() const noexcept { return repr_; }

    std::span<const double> values() const;
    std::span<double> values();
    std::span<const Complex> coeffs() const;
    std::span<Complex> coeffs();

    Complex coeff(int kx, int ky) const;
    void set_mode(int kx, int ky, Complex c);

    PlanarField& operator*=(double a);
    friend PlanarField operator*(double s, PlanarField a) { return a *= s; }

private:
    PlanarField(const Grid& g, Repr r) : grid_(g), repr_(r) {}

    Grid grid_;
    Repr repr_;
    std::vector<double> phys_;
    std::vector<Complex> spec_;
};

/// Forward transform in the parity-consistent basis. An OddZ field must
/// vanish on both walls.
ScalarField to_spectral(const ScalarField& f);
/// Inverse transform. Coefficients must be Hermitian in (kx, ky).
ScalarField to_physical(const ScalarField& f);
PlanarField to_spectral(const PlanarField& f);
PlanarField to_physical(const PlanarField& f);

/// 2/3-rule truncation: zeroes |kx| > nx/3, |ky| > ny/3 and m > dealias_mz(grid).
ScalarField dealias(const ScalarField& f);
void dealias_in_place(ScalarField& f);
/// Highest vertical mode kept by dealias: floor(2(nz-1)/3).
int dealias_mz(const Grid& grid) noexcept;

/// Spectral resampling onto another grid: shared modes are copied, the
/// rest are zero. Nyquist modes (horizontal n/2, vertical N) of the
/// source are dropped whenever the target grid differs.
ScalarField resample(const ScalarField& f, const Grid& target);

/// Largest Hermitian-symmetry defect max |c(-k) - conj(c(k))|.
double hermitian_defect(std::span<const Complex> coeffs, const Grid& grid, int nz_stride);

} // namespace chanreg
