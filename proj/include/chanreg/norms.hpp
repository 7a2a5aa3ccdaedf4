#pragma once

#include <vector>

#include "chanreg/field.hpp"

namespace chanreg {

/// (t, value) samples with strictly increasing t.
class TimeSeries {
public:
    struct Sample {
        double t;
        double value;
    };

    TimeSeries() = default;
    explicit TimeSeries(std::vector<Sample> samples);

    /// Appends a sample; t must exceed the last time.
    void push_back(double t, double value);

    const std::vector<Sample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    /// Set when any value is non-finite.
    bool blow_up() const noexcept { return blow_up_; }

private:
    std::vector<Sample> samples_;
    bool blow_up_ = false;
};

/// (integral over Omega of |f|^q)^(1/q) by quadrature on the collocation
/// nodes (uniform horizontally, trapezoid vertically). Spectral input is
/// transformed first.
double lq_norm(const ScalarField& f, double q);
/// L^q norm of the magnitude sqrt(a^2 + b^2) of a two-component field.
double lq_norm(const ScalarField& a, const ScalarField& b, double q);
double lq_norm_2d(const PlanarField& f, double q);

/// L2 norms from coefficients (Parseval with vertical_weight).
double l2_norm(const ScalarField& f);
double l2_norm(const PlanarField& f);
/// L2 inner product of two spectral fields of the same parity.
double inner_product(const ScalarField& a, const ScalarField& b);

/// ||grad_h f||_2, ||f_z||_2 and the full H^1 norm, from multipliers.
double grad_h_norm(const ScalarField& f);
double dz_norm(const ScalarField& f);
double h1_norm(const ScalarField& f);
double grad_h_norm(const PlanarField& f);
double h1_norm(const PlanarField& f);

/// Trapezoid value of the integral of value(t)^alpha over the sample span.
/// +inf when the series carries a non-finite sample.
double time_integral_pow(const TimeSeries& series, double alpha);
/// (integral of value(t)^alpha dt)^(1/alpha); needs at least two samples.
double time_lalpha(const TimeSeries& series, double alpha);

} // namespace chanreg
