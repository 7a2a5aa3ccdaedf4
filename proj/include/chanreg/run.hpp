#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chanreg/monitor.hpp"

namespace chanreg {

/// Everything needed to continue a run exactly where it stopped.
struct ResumePoint {
    VelocityState state;
    long step = 0;                       // steps taken so far
    std::optional<Nonlinear> previous{}; // advective terms one step back
    DiagnosticsRecord last_record{};     // carries the accumulators
    InitNorms init{};                    // data norms of the original run
};

struct RunResult {
    VelocityState final_state;
    DiagnosticsRecord initial{};
    std::vector<DiagnosticsRecord> series{};// one record per diagnostic step
    InitNorms init;
    bool blow_up = false;
    double last_valid_time = 0.0;
    std::string blow_up_reason{};
    long step = 0;                       // total steps at the end
    std::optional<Nonlinear> previous;   // for checkpoints
    double max_divergence = 0.0;         // over every step
    double max_reconstruction_error = 0.0;  // over every record

    /// initial followed by series.
    std::vector<DiagnosticsRecord> all_records() const;
    ResumePoint resume_point() const;
};

/// Integrates from the configured initial state (or from resume) to t_end.
/// Records are taken at every multiple of diag_every steps and at the last
/// step. Blow-up (non-finite coefficient, or energy above blowup_factor
/// times the initial energy) stops the run and is reported in the result.
RunResult run(const SolverConfig& config, const ForcingSpec& forcing, const VelocityState& initial);
RunResult run(const SolverConfig& config, const ForcingSpec& forcing, const ResumePoint& resume);

} // namespace chanreg
