#include "chanreg/kernels.hpp"

#include <algorithm>

namespace chanreg::kernels {

namespace {

inline double abs_pow(double v, double q) {
    const double a = std::abs(v);
    if (q == 2.0) return a * a;
    if (q == 1.0) return a;
    if (q == 4.0) return (a * a) * (a * a);
    return std::pow(a, q);
}

} // namespace

double weighted_abs_pow_sum(std::span<const double> f, std::span<const double> wz, double q) {
    const auto nz = static_cast<std::ptrdiff_t>(wz.size());
    const auto ncol = static_cast<std::ptrdiff_t>(f.size()) / nz;
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t c = 0; c < ncol; ++c) {
        const double* col = f.data() + c * nz;
        double part = 0.0;
        for (std::ptrdiff_t k = 0; k < nz; ++k) part += wz[k] * abs_pow(col[k], q);
        s += part;
    }
    return s;
}

double weighted_magnitude_pow_sum(std::span<const double> a, std::span<const double> b,
                                  std::span<const double> wz, double q) {
    const auto nz = static_cast<std::ptrdiff_t>(wz.size());
    const auto ncol = static_cast<std::ptrdiff_t>(a.size()) / nz;
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t c = 0; c < ncol; ++c) {
        double part = 0.0;
        for (std::ptrdiff_t k = 0; k < nz; ++k) {
            const std::ptrdiff_t i = c * nz + k;
            const double mag = std::sqrt(a[i] * a[i] + b[i] * b[i]);
            part += wz[k] * abs_pow(mag, q);
        }
        s += part;
    }
    return s;
}

double weighted_norm2(std::span<const std::complex<double>> c, std::span<const double> w) {
    const auto nz = static_cast<std::ptrdiff_t>(w.size());
    const auto nrow = static_cast<std::ptrdiff_t>(c.size()) / nz;
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t r = 0; r < nrow; ++r) {
        double part = 0.0;
        for (std::ptrdiff_t m = 0; m < nz; ++m) part += w[m] * std::norm(c[r * nz + m]);
        s += part;
    }
    return s;
}

double weighted_inner(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                      std::span<const double> w) {
    const auto nz = static_cast<std::ptrdiff_t>(w.size());
    const auto nrow = static_cast<std::ptrdiff_t>(a.size()) / nz;
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t r = 0; r < nrow; ++r) {
        double part = 0.0;
        for (std::ptrdiff_t m = 0; m < nz; ++m) {
            const auto i = r * nz + m;
            part += w[m] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
        }
        s += part;
    }
    return s;
}

double max_abs(std::span<const std::complex<double>> x) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double max_abs(std::span<const double> x) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

} // namespace chanreg::kernels

namespace chanreg::kernels {

bool all_finite(std::span<const std::complex<double>> x) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    int bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) ++bad;
    return bad == 0;
}

} // namespace chanreg::kernels
