#include "chanreg/monitor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "chanreg/calculus.hpp"
#include "chanreg/errors.hpp"
#include "chanreg/norms.hpp"

namespace chanreg {

namespace {

double sq(double x) { return x * x; }

double forcing_work(const VelocityState& s, const ForcingSpec& f) {
    return inner_product(f.f1, s.v1) + inner_product(f.f2, s.v2) + inner_product(f.g, s.w);
}

// e^a * b with 0 * inf read as 0
double exp_times(double a, double b) {
    if (b == 0.0) return 0.0;
    return std::exp(a) * b;
}

// int_0^T of value^e over the records, trapezoid with linear interpolation
// of value inside the last partial interval. A resumed series starts later;
// base carries the integral up to its first record.
double integral_to(double T, const std::vector<DiagnosticsRecord>& rec, double e, double base) {
    if (T == 0.0 && (rec.empty() || rec.front().t == 0.0)) return 0.0;
    if (rec.empty()) throw CoverageError("no records");
    const double tol = 1e-12 * std::max(1.0, T);
    if (rec.front().t > T + tol) throw CoverageError("records start after the requested time");
    if (rec.back().t < T - tol) throw CoverageError("records end before the requested time");
    double s = base;
    for (std::size_t k = 1; k < rec.size(); ++k) {
        const double t0 = rec[k - 1].t, t1 = rec[k].t;
        const double a = std::pow(rec[k - 1].pz_l2q, e), b = std::pow(rec[k].pz_l2q, e);
        if (t1 <= T + tol) {
            s += 0.5 * (t1 - t0) * (a + b);
            if (t1 >= T - tol) break;
        } else {
            const double th = (T - t0) / (t1 - t0);
            const double pz = rec[k - 1].pz_l2q + th * (rec[k].pz_l2q - rec[k - 1].pz_l2q);
            s += 0.5 * (T - t0) * (a + std::pow(pz, e));
            break;
        }
    }
    return s;
}

Grid padded(const Grid& g) { return Grid(2 * g.nx(), 2 * g.ny(), 2 * g.nmodes_z() + 1); }

struct Term {
    const ScalarField* a;
    const ScalarField* b;
    double sign;
};

// sum of sign * a * b, evaluated pointwise on the (already padded) grid of a
ScalarField product_sum(std::initializer_list<Term> terms) {
    std::optional<ScalarField> acc;
    for (const auto& t : terms) {
        auto prod = multiply(to_physical(*t.a), to_physical(*t.b));
        prod *= t.sign;
        if (acc)
            *acc += prod;
        else
            acc = std::move(prod);
    }
    return to_spectral(*acc);
}

struct Split {
    ScalarField bar;    // z-constant extension of the average
    ScalarField tilde;  // fluctuation
};

Split split(const ScalarField& f) {
    return {extend_vertically(vertical_average(f), f.grid()), fluctuation(f)};
}

} // namespace

InitNorms InitNorms::compute(const VelocityState& v0, const ForcingSpec& f, double r) {
    InitNorms n;
    n.v0_sq = sq(l2_norm(v0.v1)) + sq(l2_norm(v0.v2));
    n.w0_sq = sq(l2_norm(v0.w));
    n.v0_h1 = std::sqrt(sq(h1_norm(v0.v1)) + sq(h1_norm(v0.v2)));
    n.w0_h1 = h1_norm(v0.w);
    n.f_sq = sq(l2_norm(f.f1)) + sq(l2_norm(f.f2));
    n.g_sq = sq(l2_norm(f.g));
    n.f_r_pow = std::pow(lq_norm(f.f1, f.f2, r), r);
    return n;
}

DiagnosticsRecord record(const VelocityState& s, const PressureField& p, const ForcingSpec& forcing,
                         const SolverConfig& cfg, const DiagnosticsRecord* prev) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.energy = sq(l2_norm(s.v1)) + sq(l2_norm(s.v2)) + sq(l2_norm(s.w));
    r.gradh_v = sq(grad_h_norm(s.v1)) + sq(grad_h_norm(s.v2));
    r.gradh_w = sq(grad_h_norm(s.w));
    r.vz = sq(dz_norm(s.v1)) + sq(dz_norm(s.v2));
    r.wz = sq(dz_norm(s.w));
    r.pz_l2q = lq_norm(ddz(p.p), 2.0 * cfg.q);
    r.vtilde_r = lq_norm(fluctuation(s.v1), fluctuation(s.v2), cfg.r);
    r.h1_v = std::sqrt(sq(h1_norm(s.v1)) + sq(h1_norm(s.v2)));
    r.h1_w = h1_norm(s.w);
    if (prev) {
        const double h = r.t - prev->t;
        r.criterion_accum =
            prev->criterion_accum + 0.5 * h * (std::pow(prev->pz_l2q, cfg.alpha) + std::pow(r.pz_l2q, cfg.alpha));
        r.pz_r_accum = prev->pz_r_accum + 0.5 * h * (std::pow(prev->pz_l2q, cfg.r) + std::pow(r.pz_l2q, cfg.r));
    }
    r.forcing_work = forcing_work(s, forcing);
    r.divergence = divergence_max(s);
    try {
        r.reconstruction_error = l2_norm(s.w - vertical_velocity(s.v1, s.v2));
    } catch (const IncompatibleDivergenceError&) {
        r.reconstruction_error = std::numeric_limits<double>::infinity();
    }
    return r;
}

double k11(const SolverConfig& c, const InitNorms& n) {
    return (n.f_sq + n.g_sq) / (sq(c.nu) * sq(c.lambda1)) + n.v0_sq + n.w0_sq;
}

double k12(double t, const SolverConfig& c, const InitNorms& n) {
    return (n.f_sq + n.g_sq) * t / (c.nu * c.lambda1) + n.v0_sq + n.w0_sq;
}

double kr(double T, const SolverConfig& c, const std::vector<DiagnosticsRecord>& rec, const InitNorms& n) {
    const double K11 = k11(c, n), K12 = k12(T, c, n);
    const double expo = c.c_generic * T + K11 * K12 + std::pow(K11, 2.0 / (c.r - 2.0)) * K12;
    const double bracket = 1.0 + std::pow(n.v0_h1, 6) + integral_to(T, rec, c.r, rec.empty() ? 0.0 : rec.front().pz_r_accum) + n.f_r_pow * T;
    return exp_times(expo, bracket);
}

double k2(double T, const SolverConfig& c, const std::vector<DiagnosticsRecord>& rec, const InitNorms& n) {
    const double K11 = k11(c, n), K12 = k12(T, c, n);
    const double bracket = n.v0_h1 + n.w0_h1 + n.f_sq + n.g_sq;
    if (bracket == 0.0) return 0.0;
    const double K_R = kr(T, c, rec, n);
    const double expo = c.c_generic * T + K11 * (T + K12) + std::pow(K_R, 2.0 / (c.r - 3.0)) * T;
    return exp_times(expo, bracket);
}

std::vector<double> energy_residual(const std::vector<DiagnosticsRecord>& rec, const SolverConfig& c) {
    const std::size_t n = rec.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    std::vector<double> dE(n);
    if (n == 2) {
        dE[0] = dE[1] = (rec[1].energy - rec[0].energy) / (rec[1].t - rec[0].t);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            // stencil k0, k0+1, k0+2 containing k
            const std::size_t k0 = k == 0 ? 0 : (k == n - 1 ? n - 3 : k - 1);
            const double t0 = rec[k0].t, t1 = rec[k0 + 1].t, t2 = rec[k0 + 2].t;
            const double f0 = rec[k0].energy, f1 = rec[k0 + 1].energy, f2 = rec[k0 + 2].energy;
            const double t = rec[k].t;
            // derivative of the quadratic interpolant at t
            const double l0 = ((t - t1) + (t - t2)) / ((t0 - t1) * (t0 - t2));
            const double l1 = ((t - t0) + (t - t2)) / ((t1 - t0) * (t1 - t2));
            const double l2 = ((t - t0) + (t - t1)) / ((t2 - t0) * (t2 - t1));
            dE[k] = l0 * f0 + l1 * f1 + l2 * f2;
        }
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = 0.5 * dE[k] + c.nu * rec[k].dissipation() - rec[k].forcing_work;
    return out;
}

double check_identity_avg_nonlinear(const VelocityState& s) {
    const Grid pg = padded(s.grid());
    const auto v1 = resample(s.v1, pg), v2 = resample(s.v2, pg);
    const auto W = vertical_velocity(v1, v2);  // -int_0^z div_h v
    const auto [b1, t1] = split(v1);
    const auto [b2, t2] = split(v2);
    const auto divt = divergence_h(t1, t2);

    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        const ScalarField& v = i == 0 ? v1 : v2;
        const ScalarField& b = i == 0 ? b1 : b2;
        const ScalarField& t = i == 0 ? t1 : t2;
        const auto vx = ddx(v), vy = ddy(v), vz = ddz(v);
        const auto bx = ddx(b), by = ddy(b);
        const auto tx = ddx(t), ty = ddy(t);
        const auto lhs = vertical_average(product_sum({{&v1, &vx, 1.0}, {&v2, &vy, 1.0}, {&W, &vz, 1.0}}));
        const auto rhs = vertical_average(product_sum({{&b1, &bx, 1.0},
                                                       {&b2, &by, 1.0},
                                                       {&t1, &tx, 1.0},
                                                       {&t2, &ty, 1.0},
                                                       {&divt, &t, 1.0}}));
        auto d = lhs.coeffs();
        std::vector<Complex> diff(d.begin(), d.end());
        for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= rhs.coeffs()[k];
        total += sq(l2_norm(PlanarField::spectral(pg, std::move(diff))));
    }
    return std::sqrt(total);
}

double check_baroclinic_residual(const VelocityState& prev, const VelocityState& cur, const VelocityState& next,
                                 const PressureField& p, const ForcingSpec& forcing, double nu) {
    const Grid& g = cur.grid();
    const Grid pg = padded(g);
    const double span = next.t - prev.t;
    if (!(span > 0.0)) throw DomainError("baroclinic residual needs next.t > prev.t");
    const auto v1 = resample(cur.v1, pg), v2 = resample(cur.v2, pg);
    const auto [b1, t1] = split(v1);
    const auto [b2, t2] = split(v2);
    const auto Wt = vertical_velocity(t1, t2);  // -int_0^z div_h v~
    const auto divt = divergence_h(t1, t2);
    const auto pt = fluctuation(p.p);

    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        const ScalarField& b = i == 0 ? b1 : b2;
        const ScalarField& t = i == 0 ? t1 : t2;
        const auto tx = ddx(t), ty = ddy(t), tz = ddz(t);
        const auto bx = ddx(b), by = ddy(b);
        const auto adv = product_sum({{&t1, &tx, 1.0}, {&t2, &ty, 1.0}});
        const auto source = product_sum({{&t1, &tx, 1.0}, {&t2, &ty, 1.0}, {&divt, &t, 1.0}});
        auto nl = adv + product_sum({{&Wt, &tz, 1.0}, {&t1, &bx, 1.0}, {&t2, &by, 1.0}, {&b1, &tx, 1.0}, {&b2, &ty, 1.0}});
        nl -= extend_vertically(vertical_average(source), pg);
        // back to the solver grid with the solver's truncation
        auto r = dealias(resample(nl, g));

        const ScalarField& un = i == 0 ? next.v1 : next.v2;
        const ScalarField& up = i == 0 ? prev.v1 : prev.v2;
        const ScalarField& uc = i == 0 ? cur.v1 : cur.v2;
        const ScalarField& f = i == 0 ? forcing.f1 : forcing.f2;
        r.axpy(1.0 / span, fluctuation(un));
        r.axpy(-1.0 / span, fluctuation(up));
        const auto tc = fluctuation(uc);
        r.axpy(-nu, laplacian_h(tc));
        r.axpy(-nu, ddz(ddz(tc)));
        r += i == 0 ? ddx(pt) : ddy(pt);
        r -= fluctuation(f);
        total += sq(l2_norm(r));
    }
    return std::sqrt(total);
}

// ------------------------------------------------------------------ verdict

CriterionReport verdict(const std::vector<DiagnosticsRecord>& rec, const SolverConfig& c, const InitNorms& n,
                        bool blow_up, double last_valid_time) {
    CriterionReport r;
    r.samples = rec.size();
    r.blow_up = blow_up;
    r.last_valid_time = last_valid_time;
    r.K11 = k11(c, n);
    if (rec.empty()) {
        r.K12_T = k12(0.0, c, n);
        r.KR = kr(0.0, c, rec, n);
        r.K2 = k2(0.0, c, rec, n);
        return r;
    }
    r.T = rec.back().t;
    r.criterion_integral = rec.back().criterion_accum;
    r.criterion_finite = std::isfinite(r.criterion_integral);
    r.pz_r_integral = rec.back().pz_r_accum;
    r.K12_T = k12(r.T, c, n);
    r.KR = kr(r.T, c, rec, n);
    r.K2 = k2(r.T, c, rec, n);
    for (const auto& x : rec) {
        if (!(x.energy <= r.K11 * (1.0 + 1e-12))) r.energy_bound_held = false;
        if (!(std::pow(x.vtilde_r, c.r) <= kr(x.t, c, rec, n))) r.vtilde_bound_held = false;
        if (!(std::hypot(x.h1_v, x.h1_w) <= k2(x.t, c, rec, n))) r.h1_bound_held = false;
        r.max_energy_residual = std::max(r.max_energy_residual, std::abs(x.energy_residual));
    }
    return r;
}

namespace {

std::string num(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

std::string CriterionReport::to_text() const {
    std::ostringstream os;
    os << "criterion report at T = " << num(T) << " (" << samples << " samples)\n";
    os << "  int |p_z|_2q^alpha dt = " << num(criterion_integral) << (criterion_finite ? "  finite\n" : "  NOT finite\n");
    os << "  int |p_z|_2q^r dt     = " << num(pz_r_integral) << "\n";
    os << "  K11 = " << num(K11) << "   K12(T) = " << num(K12_T) << "\n";
    os << "  energy <= K11 at every sample: " << (energy_bound_held ? "yes" : "NO") << "\n";
    os << "  K_R = " << num(KR) << "   |v~|_r^r <= K_R: " << (vtilde_bound_held ? "yes" : "no")
       << " (informational, generic constant)\n";
    os << "  K2 = " << num(K2) << "   H1 <= K2: " << (h1_bound_held ? "yes" : "no")
       << " (informational, generic constant)\n";
    os << "  max |energy residual| = " << num(max_energy_residual) << "\n";
    if (blow_up)
        os << "  BLOW-UP detected; last valid time " << num(last_valid_time) << "\n";
    else
        os << "  no blow-up\n";
    return os.str();
}

std::string CriterionReport::to_key_values() const {
    std::ostringstream os;
    auto b = [](bool x) { return x ? "1" : "0"; };
    os << "T=" << num(T) << "\n"
       << "criterion_integral=" << num(criterion_integral) << "\n"
       << "criterion_finite=" << b(criterion_finite) << "\n"
       << "pz_r_integral=" << num(pz_r_integral) << "\n"
       << "K11=" << num(K11) << "\n"
       << "K12_T=" << num(K12_T) << "\n"
       << "KR=" << num(KR) << "\n"
       << "K2=" << num(K2) << "\n"
       << "energy_bound_held=" << b(energy_bound_held) << "\n"
       << "vtilde_bound_held=" << b(vtilde_bound_held) << "\n"
       << "h1_bound_held=" << b(h1_bound_held) << "\n"
       << "max_energy_residual=" << num(max_energy_residual) << "\n"
       << "blow_up=" << b(blow_up) << "\n"
       << "last_valid_time=" << num(last_valid_time) << "\n"
       << "samples=" << samples << "\n";
    return os.str();
}

CriterionReport CriterionReport::from_key_values(const std::string& text) {
    CriterionReport r;
    std::istringstream is(text);
    std::string line;
    auto real = [](const std::string& v) {
        double x = 0.0;
        auto res = std::from_chars(v.data(), v.data() + v.size(), x);
        if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
            if (v == "inf") return std::numeric_limits<double>::infinity();
            if (v == "nan") return std::numeric_limits<double>::quiet_NaN();
            throw ParseError("report: bad number '" + v + "'");
        }
        return x;
    };
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        if (k == "T") r.T = real(v);
        else if (k == "criterion_integral") r.criterion_integral = real(v);
        else if (k == "criterion_finite") r.criterion_finite = v == "1";
        else if (k == "pz_r_integral") r.pz_r_integral = real(v);
        else if (k == "K11") r.K11 = real(v);
        else if (k == "K12_T") r.K12_T = real(v);
        else if (k == "KR") r.KR = real(v);
        else if (k == "K2") r.K2 = real(v);
        else if (k == "energy_bound_held") r.energy_bound_held = v == "1";
        else if (k == "vtilde_bound_held") r.vtilde_bound_held = v == "1";
        else if (k == "h1_bound_held") r.h1_bound_held = v == "1";
        else if (k == "max_energy_residual") r.max_energy_residual = real(v);
        else if (k == "blow_up") r.blow_up = v == "1";
        else if (k == "last_valid_time") r.last_valid_time = real(v);
        else if (k == "samples") r.samples = static_cast<std::size_t>(real(v));
        else throw ParseError("report: unknown key '" + k + "'");
    }
    return r;
}

} // namespace chanreg
