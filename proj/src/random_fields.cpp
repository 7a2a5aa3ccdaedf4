#include "chanreg/random_fields.hpp"

#include <random>

#include "chanreg/errors.hpp"
#include "chanreg/norms.hpp"
#include "chanreg/solver.hpp"

namespace chanreg {

namespace {

// splitmix64 step; decorrelates derived seeds
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_band(const Grid& g, int kmax) {
    if (kmax < 0 || 2 * kmax >= g.nx() || 2 * kmax >= g.ny())
        throw DomainError("random field: horizontal band exceeds grid");
}

} // namespace

ScalarField random_field(const Grid& grid, Parity parity, std::uint64_t seed, int kmax, int mmax) {
    check_band(grid, kmax);
    if (mmax < 0 || mmax >= grid.nmodes_z()) throw DomainError("random field: vertical band exceeds grid");
    std::mt19937_64 rng(mix(seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    auto f = ScalarField::zeros(grid, parity, Repr::Spectral);
    const int m0 = parity == Parity::EvenZ ? 0 : 1;
    for (int kx = 0; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky) {
            if (kx == 0 && ky < 0) continue;
            for (int m = m0; m <= mmax; ++m) {
                const double re = normal(rng);
                const double im = (kx == 0 && ky == 0) ? 0.0 : normal(rng);
                f.set_mode(kx, ky, m, Complex(re, im));
            }
        }
    const double n = l2_norm(f);
    if (n > 0.0) f *= 1.0 / n;
    return f;
}

PlanarField random_planar(const Grid& grid, std::uint64_t seed, int kmax) {
    check_band(grid, kmax);
    std::mt19937_64 rng(mix(seed));
    std::normal_distribution<double> normal(0.0, 1.0);
    auto f = PlanarField::zeros(grid, Repr::Spectral);
    for (int kx = 0; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky) {
            if (kx == 0 && ky < 0) continue;
            const double re = normal(rng);
            const double im = (kx == 0 && ky == 0) ? 0.0 : normal(rng);
            f.set_mode(kx, ky, Complex(re, im));
        }
    const double n = l2_norm(f);
    if (n > 0.0) f *= 1.0 / n;
    return f;
}

VelocityState random_state(const Grid& grid, std::uint64_t seed, int kmax, double amplitude) {
    const std::uint64_t s = mix(seed);
    VelocityState st{random_field(grid, Parity::EvenZ, s + 1, kmax, kmax),
                     random_field(grid, Parity::EvenZ, s + 2, kmax, kmax),
                     random_field(grid, Parity::OddZ, s + 3, kmax, kmax), 0.0};
    st.v1.set_mode(0, 0, 0, 0.0);
    st.v2.set_mode(0, 0, 0, 0.0);
    project(st);
    dealias_in_place(st.v1);
    dealias_in_place(st.v2);
    dealias_in_place(st.w);
    const double e = std::sqrt(std::pow(l2_norm(st.v1), 2) + std::pow(l2_norm(st.v2), 2) +
                               std::pow(l2_norm(st.w), 2));
    if (e > 0.0) {
        st.v1 *= amplitude / e;
        st.v2 *= amplitude / e;
        st.w *= amplitude / e;
    }
    return st;
}

ForcingSpec random_forcing(const Grid& grid, std::uint64_t seed, int kmax, double amplitude) {
    const std::uint64_t s = mix(seed ^ 0x5f0f0f0fULL);
    ForcingSpec f{random_field(grid, Parity::EvenZ, s + 1, kmax, kmax),
                  random_field(grid, Parity::EvenZ, s + 2, kmax, kmax),
                  random_field(grid, Parity::OddZ, s + 3, kmax, kmax)};
    f.f1.set_mode(0, 0, 0, 0.0);
    f.f2.set_mode(0, 0, 0, 0.0);
    const double n = std::sqrt(std::pow(l2_norm(f.f1), 2) + std::pow(l2_norm(f.f2), 2) +
                               std::pow(l2_norm(f.g), 2));
    if (n > 0.0) {
        f.f1 *= amplitude / n;
        f.f2 *= amplitude / n;
        f.g *= amplitude / n;
    }
    return f;
}

} // namespace chanreg
