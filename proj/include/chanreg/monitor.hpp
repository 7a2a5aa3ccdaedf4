#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "chanreg/solver.hpp"

namespace chanreg {

/// One diagnostic sample. Gradient entries are squared L2 norms; the H1
/// entries are norms. The fields after energy_residual are kept for the
/// bound and consistency checks and are not part of the CSV schema.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;   // ||v||^2 + ||w||^2
    double gradh_v = 0.0;  // ||grad_h v||^2
    double gradh_w = 0.0;
    double vz = 0.0;       // ||v_z||^2
    double wz = 0.0;
    double pz_l2q = 0.0;   // ||p_z||_{2q}
    double vtilde_r = 0.0; // ||v - vbar||_r
    double h1_v = 0.0;
    double h1_w = 0.0;
    double criterion_accum = 0.0;  // int_0^t ||p_z||_{2q}^alpha
    double energy_residual = 0.0;

    double pz_r_accum = 0.0;     // int_0^t ||p_z||_{2q}^r
    double forcing_work = 0.0;   // <(f, g), (v, w)>
    double divergence = 0.0;     // spectral max |div|
    double reconstruction_error = 0.0;  // ||w - vertical_velocity(v)||_2

    double dissipation() const noexcept { return gradh_v + gradh_w + vz + wz; }
};

/// Norms of the data entering the bound constants.
struct InitNorms {
    double v0_sq = 0.0;   // ||v0||_2^2
    double w0_sq = 0.0;
    double v0_h1 = 0.0;   // ||v0||_{H1}
    double w0_h1 = 0.0;
    double f_sq = 0.0;    // ||f||_2^2
    double g_sq = 0.0;
    double f_r_pow = 0.0; // ||f||_r^r

    static InitNorms compute(const VelocityState& v0, const ForcingSpec& forcing, double r);
    friend bool operator==(const InitNorms&, const InitNorms&) = default;
};

/// Computes a record for state/p. With prev the accumulators advance by the
/// trapezoid rule from prev; without, they start at zero.
DiagnosticsRecord record(const VelocityState& state, const PressureField& p, const ForcingSpec& forcing,
                         const SolverConfig& config, const DiagnosticsRecord* prev);

double k11(const SolverConfig& config, const InitNorms& init);
double k12(double t, const SolverConfig& config, const InitNorms& init);
/// Bound on ||v~||_r^r. records must cover [first record, T]; the first
/// record's pz_r_accum stands for the integral before it. Throws
/// CoverageError otherwise (T = 0 needs no records).
double kr(double T, const SolverConfig& config, const std::vector<DiagnosticsRecord>& records,
          const InitNorms& init);
/// Bound on the H1 norm of (v, w).
double k2(double T, const SolverConfig& config, const std::vector<DiagnosticsRecord>& records,
          const InitNorms& init);

/// d/dt(energy)/2 + nu * dissipation - forcing_work at every record. The
/// derivative is the three-point (nonuniform) centered difference inside
/// and the one-sided second-order difference at both ends.
std::vector<double> energy_residual(const std::vector<DiagnosticsRecord>& records, const SolverConfig& config);

/// L2(M) norm of the difference between the two sides of the averaged
/// nonlinearity identity, with products evaluated on a grid padded by two.
double check_identity_avg_nonlinear(const VelocityState& state);

/// L2 norm of the residual of the fluctuation equation at cur.t, with the
/// time derivative from the centered difference of prev and next.
double check_baroclinic_residual(const VelocityState& prev, const VelocityState& cur, const VelocityState& next,
                                 const PressureField& p, const ForcingSpec& forcing, double nu);

struct CriterionReport {
    double T = 0.0;
    double criterion_integral = 0.0;  // int ||p_z||_{2q}^alpha
    bool criterion_finite = true;
    double pz_r_integral = 0.0;       // int ||p_z||_{2q}^r
    double K11 = 0.0;
    double K12_T = 0.0;
    double KR = 0.0;
    double K2 = 0.0;
    bool energy_bound_held = true;    // energy <= K11 at every sample
    bool vtilde_bound_held = true;    // informational, C_generic dependent
    bool h1_bound_held = true;        // informational
    double max_energy_residual = 0.0;
    bool blow_up = false;
    double last_valid_time = 0.0;
    std::size_t samples = 0;

    std::string to_text() const;
    /// "key=value" lines; from_key_values inverts it.
    std::string to_key_values() const;
    static CriterionReport from_key_values(const std::string& text);
};

CriterionReport verdict(const std::vector<DiagnosticsRecord>& records, const SolverConfig& config,
                        const InitNorms& init, bool blow_up, double last_valid_time);

} // namespace chanreg
