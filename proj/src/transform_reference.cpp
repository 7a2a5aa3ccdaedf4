#include <cmath>
#include <numbers>
#include <vector>

#include "chanreg/errors.hpp"
#include "chanreg/transform.hpp"

namespace chanreg::transform::reference {

namespace {

using std::numbers::pi;

// e^{sign 2 pi i j k / n}, reduced mod n before evaluating
std::vector<Complex> twiddles(int n, double sign) {
    std::vector<Complex> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) t[j] = std::polar(1.0, sign * 2.0 * pi * j / n);
    return t;
}

// cos(pi j m / N) and sin(pi j m / N) indexed by (j*m) mod 2N
std::vector<double> half_turn_cos(int N) {
    std::vector<double> t(2 * static_cast<std::size_t>(N));
    for (int j = 0; j < 2 * N; ++j) t[j] = std::cos(pi * j / N);
    return t;
}
std::vector<double> half_turn_sin(int N) {
    std::vector<double> t(2 * static_cast<std::size_t>(N));
    for (int j = 0; j < 2 * N; ++j) t[j] = std::sin(pi * j / N);
    return t;
}

// Horizontal DFT along x and y of every vertical slot, in place.
void horizontal(const Grid& g, std::vector<Complex>& a, double sign) {
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    const auto tx = twiddles(nx, sign);
    const auto ty = twiddles(ny, sign);
    std::vector<Complex> tmp(a.size());
    for (int ix = 0; ix < nx; ++ix)
        for (int ky = 0; ky < ny; ++ky)
            for (int k = 0; k < nz; ++k) {
                Complex s = 0.0;
                for (int iy = 0; iy < ny; ++iy) s += a[g.index(ix, iy, k)] * ty[(iy * ky) % ny];
                tmp[g.index(ix, ky, k)] = s;
            }
    for (int kx = 0; kx < nx; ++kx)
        for (int ky = 0; ky < ny; ++ky)
            for (int k = 0; k < nz; ++k) {
                Complex s = 0.0;
                for (int ix = 0; ix < nx; ++ix) s += tmp[g.index(ix, ky, k)] * tx[(ix * kx) % nx];
                a[g.index(kx, ky, k)] = s;
            }
}

} // namespace

void forward(const Grid& g, Parity parity, std::span<const double> phys, std::span<Complex> spec) {
    if (phys.size() != g.size() || spec.size() != g.size())
        throw InvalidFieldError("reference transform: buffer size does not match grid");
    const int nz = g.nz(), N = nz - 1;
    const auto ct = half_turn_cos(N);
    const auto st = half_turn_sin(N);
    std::vector<Complex> a(g.size());
    for (std::size_t c = 0; c < g.planar_size(); ++c) {
        const double* f = phys.data() + c * nz;
        Complex* out = a.data() + c * nz;
        for (int m = 0; m <= N; ++m) {
            double s = 0.0;
            if (parity == Parity::EvenZ) {
                s = 0.5 * (f[0] + ((m % 2 == 0) ? f[N] : -f[N]));
                for (int j = 1; j < N; ++j) s += f[j] * ct[(j * m) % (2 * N)];
                s *= (m == 0 || m == N) ? 1.0 / N : 2.0 / N;
            } else if (m > 0 && m < N) {
                for (int j = 1; j < N; ++j) s += f[j] * st[(j * m) % (2 * N)];
                s *= 2.0 / N;
            }
            out[m] = s;
        }
    }
    horizontal(g, a, -1.0);
    const double h = 1.0 / static_cast<double>(g.planar_size());
    for (std::size_t i = 0; i < a.size(); ++i) spec[i] = a[i] * h;
}

void inverse(const Grid& g, Parity parity, std::span<const Complex> spec, std::span<double> phys) {
    if (phys.size() != g.size() || spec.size() != g.size())
        throw InvalidFieldError("reference transform: buffer size does not match grid");
    const int nz = g.nz(), N = nz - 1;
    const auto ct = half_turn_cos(N);
    const auto st = half_turn_sin(N);
    std::vector<Complex> a(g.size());
    for (std::size_t c = 0; c < g.planar_size(); ++c) {
        const Complex* in = spec.data() + c * nz;
        Complex* out = a.data() + c * nz;
        for (int j = 0; j <= N; ++j) {
            Complex s = 0.0;
            if (parity == Parity::EvenZ) {
                for (int m = 0; m <= N; ++m) s += in[m] * ct[(j * m) % (2 * N)];
            } else if (j > 0 && j < N) {
                for (int m = 1; m < N; ++m) s += in[m] * st[(j * m) % (2 * N)];
            }
            out[j] = s;
        }
    }
    horizontal(g, a, +1.0);
    for (std::size_t i = 0; i < a.size(); ++i) phys[i] = a[i].real();
}

} // namespace chanreg::transform::reference
