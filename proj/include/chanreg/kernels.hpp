#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the field operations. Each kernel
// is an OpenMP loop over independent entries; reductions combine
// per-thread partial sums.
namespace chanreg::kernels {

template <class T>
void axpy(double a, std::span<const T> x, std::span<T> y) {
    const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <class T>
void scale(double a, std::span<T> y) {
    const auto n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= a;
}

inline void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

/// out += a * b
inline void multiply_add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

/// sum over columns of wz[iz] * |f|^q, with columns of length wz.size().
double weighted_abs_pow_sum(std::span<const double> f, std::span<const double> wz, double q);

/// sum over columns of wz[iz] * (a^2 + b^2)^(q/2).
double weighted_magnitude_pow_sum(std::span<const double> a, std::span<const double> b,
                                  std::span<const double> wz, double q);

/// sum of w[m] * |c|^2 over rows of length w.size().
double weighted_norm2(std::span<const std::complex<double>> c, std::span<const double> w);

/// Re sum of w[m] * a * conj(b) over rows of length w.size().
double weighted_inner(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                      std::span<const double> w);

/// max |x_i|
double max_abs(std::span<const std::complex<double>> x);
double max_abs(std::span<const double> x);

} // namespace chanreg::kernels

namespace chanreg::kernels {

bool all_finite(std::span<const std::complex<double>> x);

} // namespace chanreg::kernels
