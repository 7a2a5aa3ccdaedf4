#include "chanreg/grid.hpp"

#include <string>

#include "chanreg/errors.hpp"

namespace chanreg {

Grid::Grid(int nx, int ny, int nz) : nx_(nx), ny_(ny), nz_(nz) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
        throw InvalidFieldError("grid: nx and ny must be even and >= 8 (got " + std::to_string(nx) +
                                ", " + std::to_string(ny) + ")");
    if (nz < 5) throw InvalidFieldError("grid: nz must be >= 5 (got " + std::to_string(nz) + ")");
}

std::vector<double> Grid::z_weights() const {
    const int n = nz_ - 1;
    std::vector<double> w(static_cast<std::size_t>(nz_), 1.0 / n);
    w.front() = 0.5 / n;
    w.back() = 0.5 / n;
    return w;
}

} // namespace chanreg
