#include "chanreg/run.hpp"

#include <cmath>

#include "chanreg/errors.hpp"
#include "chanreg/norms.hpp"

namespace chanreg {

std::vector<DiagnosticsRecord> RunResult::all_records() const {
    std::vector<DiagnosticsRecord> out;
    out.reserve(series.size() + 1);
    out.push_back(initial);
    out.insert(out.end(), series.begin(), series.end());
    return out;
}

ResumePoint RunResult::resume_point() const {
    return {final_state, step, previous, series.empty() ? initial : series.back(), init};
}

namespace {

double energy_of(const VelocityState& s) {
    const double a = l2_norm(s.v1), b = l2_norm(s.v2), c = l2_norm(s.w);
    return a * a + b * b + c * c;
}

RunResult integrate(const SolverConfig& cfg, const ForcingSpec& forcing, const ResumePoint& start) {
    cfg.validate();
    RunResult res{.final_state = start.state, .init = start.init, .step = start.step, .previous = start.previous};

    Nonlinear cur = nonlinear(start.state, cfg.dealias);
    const PressureField p0 = pressure_from_nonlinear(cur, forcing);
    res.initial = record(start.state, p0, forcing, cfg, start.step == 0 ? nullptr : &start.last_record);
    if (start.step != 0) {
        // the accumulators continue from the stored record
        res.initial.criterion_accum = start.last_record.criterion_accum;
        res.initial.pz_r_accum = start.last_record.pz_r_accum;
    }
    res.last_valid_time = start.state.t;
    res.max_divergence = res.initial.divergence;
    res.max_reconstruction_error = res.initial.reconstruction_error;

    const long nsteps = cfg.steps();
    const double e0 = res.init.v0_sq + res.init.w0_sq;
    const double threshold = e0 > 0.0 ? cfg.blowup_factor * e0 : std::numeric_limits<double>::infinity();
    const DiagnosticsRecord* last = &res.initial;

    for (long n = start.step + 1; n <= nsteps; ++n) {
        std::optional<StepResult> next;
        try {
            next = step(res.final_state, cfg, forcing, cur, res.previous ? &*res.previous : nullptr);
        } catch (const BlowUpSignal& b) {
            res.blow_up = true;
            res.blow_up_reason = b.what();
            res.last_valid_time = b.last_valid_time();
            break;
        }
        const double e = energy_of(next->state);
        if (!(e <= threshold)) {
            res.blow_up = true;
            res.blow_up_reason = "energy exceeded blowup_factor times the initial energy";
            res.last_valid_time = res.final_state.t;
            break;
        }
        res.previous = std::move(cur);
        cur = std::move(next->nonlinear);
        res.final_state = std::move(next->state);
        res.step = n;
        res.last_valid_time = res.final_state.t;
        res.max_divergence = std::max(res.max_divergence, divergence_max(res.final_state));
        if (n % cfg.diag_every == 0 || n == nsteps) {
            res.series.push_back(record(res.final_state, next->pressure, forcing, cfg, last));
            last = &res.series.back();
            res.max_reconstruction_error = std::max(res.max_reconstruction_error, last->reconstruction_error);
        }
    }
    // partial output ends with the last valid state
    if (res.blow_up && res.step > start.step && (res.series.empty() || res.series.back().t != res.final_state.t)) {
        const PressureField p = pressure_from_nonlinear(cur, forcing);
        res.series.push_back(record(res.final_state, p, forcing, cfg, last));
    }

    auto all = res.all_records();
    const auto resid = energy_residual(all, cfg);
    res.initial.energy_residual = resid[0];
    for (std::size_t k = 0; k < res.series.size(); ++k) res.series[k].energy_residual = resid[k + 1];
    return res;
}

} // namespace

RunResult run(const SolverConfig& cfg, const ForcingSpec& forcing, const VelocityState& initial) {
    ResumePoint start{initial, 0, std::nullopt, {}, InitNorms::compute(initial, forcing, cfg.r)};
    return integrate(cfg, forcing, start);
}

RunResult run(const SolverConfig& cfg, const ForcingSpec& forcing, const ResumePoint& resume) {
    return integrate(cfg, forcing, resume);
}

} // namespace chanreg
