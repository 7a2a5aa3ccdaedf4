#include "chanreg/norms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "chanreg/calculus.hpp"
#include "chanreg/errors.hpp"
#include "chanreg/kernels.hpp"

namespace chanreg {

namespace {

using std::numbers::pi;

void require_q(double q) {
    if (!(q >= 1.0)) throw DomainError("lq_norm: q must be >= 1");
}

std::vector<double> mode_weights(Parity p, const Grid& g) {
    std::vector<double> w(static_cast<std::size_t>(g.nz()));
    for (int m = 0; m < g.nz(); ++m) w[m] = vertical_weight(p, m, g.nmodes_z());
    return w;
}

// weight of (m pi)^2 |c_m|^2 in ||f_z||^2: the derivative basis function
// is sin or cos of the same index, with norm 1/2 for 0 < m < N
std::vector<double> dz_weights(const Grid& g) {
    std::vector<double> w(static_cast<std::size_t>(g.nz()), 0.0);
    for (int m = 1; m < g.nmodes_z(); ++m) w[m] = 0.5 * (m * pi) * (m * pi);
    return w;
}

const ScalarField& physical_view(const ScalarField& f, ScalarField& storage) {
    if (!f.is_spectral()) return f;
    storage = to_physical(f);
    return storage;
}

} // namespace

TimeSeries::TimeSeries(std::vector<Sample> samples) {
    for (const auto& s : samples) push_back(s.t, s.value);
}

void TimeSeries::push_back(double t, double value) {
    if (!samples_.empty() && !(t > samples_.back().t))
        throw DomainError("TimeSeries: sample times must be strictly increasing");
    if (!std::isfinite(value)) blow_up_ = true;
    samples_.push_back({t, value});
}

double lq_norm(const ScalarField& f, double q) {
    require_q(q);
    ScalarField storage = f;
    const ScalarField& p = physical_view(f, storage);
    const auto wz = p.grid().z_weights();
    const double s = kernels::weighted_abs_pow_sum(p.values(), wz, q) / p.grid().planar_size();
    return std::pow(s, 1.0 / q);
}

double lq_norm(const ScalarField& a, const ScalarField& b, double q) {
    require_q(q);
    ScalarField sa = a, sb = b;
    const ScalarField& pa = physical_view(a, sa);
    const ScalarField& pb = physical_view(b, sb);
    if (!(pa.grid() == pb.grid())) throw InvalidFieldError("lq_norm: grid mismatch");
    const auto wz = pa.grid().z_weights();
    const double s = kernels::weighted_magnitude_pow_sum(pa.values(), pb.values(), wz, q) /
                     pa.grid().planar_size();
    return std::pow(s, 1.0 / q);
}

double lq_norm_2d(const PlanarField& f, double q) {
    require_q(q);
    const PlanarField p = f.repr() == Repr::Spectral ? to_physical(f) : f;
    const std::vector<double> w{1.0};
    const double s = kernels::weighted_abs_pow_sum(p.values(), w, q) / p.grid().planar_size();
    return std::pow(s, 1.0 / q);
}

double l2_norm(const ScalarField& f) {
    if (!f.is_spectral()) return lq_norm(f, 2.0);
    return std::sqrt(kernels::weighted_norm2(f.coeffs(), mode_weights(f.parity(), f.grid())));
}

double l2_norm(const PlanarField& f) {
    if (f.repr() != Repr::Spectral) return lq_norm_2d(f, 2.0);
    const std::vector<double> w{1.0};
    return std::sqrt(kernels::weighted_norm2(f.coeffs(), w));
}

double inner_product(const ScalarField& a, const ScalarField& b) {
    if (!a.congruent(b) || !a.is_spectral())
        throw InvalidFieldError("inner_product: needs congruent spectral fields");
    return kernels::weighted_inner(a.coeffs(), b.coeffs(), mode_weights(a.parity(), a.grid()));
}

double grad_h_norm(const ScalarField& f) {
    if (!f.is_spectral()) throw RepresentationError("grad_h_norm: field must be spectral");
    const Grid& g = f.grid();
    const auto w = mode_weights(f.parity(), g);
    const auto c = f.coeffs();
    const int nx = g.nx(), ny = g.ny(), nz = g.nz();
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (int ix = 0; ix < nx; ++ix) {
        const double kx = derivative_wavenumber(ix, nx);
        for (int iy = 0; iy < ny; ++iy) {
            const double ky = derivative_wavenumber(iy, ny);
            const double k2 = kx * kx + ky * ky;
            if (k2 == 0.0) continue;
            const auto base = g.index(ix, iy, 0);
            double part = 0.0;
            for (int m = 0; m < nz; ++m) part += w[m] * std::norm(c[base + m]);
            s += k2 * part;
        }
    }
    return std::sqrt(s);
}

double dz_norm(const ScalarField& f) {
    if (!f.is_spectral()) throw RepresentationError("dz_norm: field must be spectral");
    return std::sqrt(kernels::weighted_norm2(f.coeffs(), dz_weights(f.grid())));
}

double h1_norm(const ScalarField& f) {
    const double a = l2_norm(f), b = grad_h_norm(f), c = dz_norm(f);
    return std::sqrt(a * a + b * b + c * c);
}

double grad_h_norm(const PlanarField& f) {
    if (f.repr() != Repr::Spectral) throw RepresentationError("grad_h_norm: planar field must be spectral");
    const Grid& g = f.grid();
    const auto c = f.coeffs();
    double s = 0.0;
    for (int ix = 0; ix < g.nx(); ++ix) {
        const double kx = derivative_wavenumber(ix, g.nx());
        for (int iy = 0; iy < g.ny(); ++iy) {
            const double ky = derivative_wavenumber(iy, g.ny());
            s += (kx * kx + ky * ky) * std::norm(c[static_cast<std::size_t>(ix) * g.ny() + iy]);
        }
    }
    return std::sqrt(s);
}

double h1_norm(const PlanarField& f) {
    const double a = l2_norm(f), b = grad_h_norm(f);
    return std::sqrt(a * a + b * b);
}

double time_integral_pow(const TimeSeries& series, double alpha) {
    if (!(alpha >= 1.0)) throw DomainError("time_lalpha: alpha must be >= 1");
    if (series.blow_up()) return std::numeric_limits<double>::infinity();
    const auto& s = series.samples();
    double total = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
        total += 0.5 * (s[i].t - s[i - 1].t) *
                 (std::pow(std::abs(s[i].value), alpha) + std::pow(std::abs(s[i - 1].value), alpha));
    return total;
}

double time_lalpha(const TimeSeries& series, double alpha) {
    if (!(alpha >= 1.0)) throw DomainError("time_lalpha: alpha must be >= 1");
    if (series.size() < 2) throw DomainError("time_lalpha: needs at least two samples");
    return std::pow(time_integral_pow(series, alpha), 1.0 / alpha);
}

} // namespace chanreg
