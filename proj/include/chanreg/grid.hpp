#pragma once

#include <cstddef>
#include <vector>

namespace chanreg {

/// Collocation grid on the unit channel (0,1)^3.
///
/// Horizontal nodes are uniform on [0,1): x_i = i/nx, y_j = j/ny.
/// Vertical nodes are Gauss-Lobatto for the cosine/sine pair:
/// z_k = k/(nz-1), k = 0..nz-1, both walls included. With N = nz-1,
/// even fields expand in cos(m pi z), m = 0..N, and odd fields in
/// sin(m pi z), m = 1..N-1 (sin(N pi z) vanishes on every node).
class Grid {
public:
    Grid(int nx, int ny, int nz);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    int nz() const noexcept { return nz_; }
    /// Index of the highest vertical mode, N = nz - 1.
    int nmodes_z() const noexcept { return nz_ - 1; }

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(nx_) * ny_ * nz_;
    }
    std::size_t planar_size() const noexcept {
        return static_cast<std::size_t>(nx_) * ny_;
    }
    std::size_t index(int ix, int iy, int iz) const noexcept {
        return (static_cast<std::size_t>(ix) * ny_ + iy) * nz_ + iz;
    }

    double x(int ix) const noexcept { return static_cast<double>(ix) / nx_; }
    double y(int iy) const noexcept { return static_cast<double>(iy) / ny_; }
    double z(int iz) const noexcept { return static_cast<double>(iz) / (nz_ - 1); }

    /// Signed wavenumber stored at index i of an n-point axis; the
    /// Nyquist index n/2 maps to -n/2.
    static int wavenumber(int i, int n) noexcept { return i < n / 2 ? i : i - n; }
    int kx(int ix) const noexcept { return wavenumber(ix, nx_); }
    int ky(int iy) const noexcept { return wavenumber(iy, ny_); }
    /// Storage index of signed wavenumber k on an n-point axis.
    static int slot(int k, int n) noexcept { return ((k % n) + n) % n; }

    /// Trapezoid weights on the vertical nodes (sum to 1).
    std::vector<double> z_weights() const;

    /// Same horizontal layout, different vertical resolution.
    Grid with_nz(int nz) const { return Grid(nx_, ny_, nz); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int nx_;
    int ny_;
    int nz_;
};

} // namespace chanreg
