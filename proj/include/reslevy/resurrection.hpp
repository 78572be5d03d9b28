#pragma once

#include <cstddef>
#include <vector>

#include "reslevy/levy_model.hpp"
#include "reslevy/path_engine.hpp"
#include "reslevy/rng.hpp"

namespace reslevy {

enum class TraceStatus {
    AbsorbedNumerically,  // the absorption policy fired (zeta is an estimate)
    SurvivedHorizon,
    BudgetExhausted,      // resurrection or event cap hit; nothing is claimed
    CreptToZero,          // the continuous part reached 0 (zeta exact up to grid bias)
};
const char* trace_status_name(TraceStatus s);

// Termination rule for cascades of resurrections. Absorption in finite time
// can only be witnessed numerically as geometric collapse, so two tests must
// agree: the position is a negligible fraction of the start AND the recent
// resurrection gaps are a negligible fraction of elapsed time.
struct AbsorptionPolicy {
    double eps_abs_rel = 1e-6;
    double eps_time_rel = 1e-8;
    std::size_t gap_window = 10;
    std::size_t n_max = 100000;           // max resurrections per trace
    std::size_t max_events = 2000000;     // deterministic work cap per trace
};

struct ResurrectionTrace {
    SimPath path;                    // skeleton of the resurrected process Z
    std::vector<double> tau_seq;     // resurrection times, strictly increasing
    std::vector<double> pos_seq;     // Z at each resurrection = pre-jump position
    std::vector<JumpRecord> removed; // the crossing jumps that were deleted
    TraceStatus status = TraceStatus::SurvivedHorizon;
    double zeta = 0.0;               // set for AbsorbedNumerically / CreptToZero
    std::size_t ambiguous_crossings = 0;  // crossings launched from within creep tolerance
};

// Runs the driving process from params.x0, deleting every jump that would
// take it below 0 and continuing from the pre-jump position, until the
// horizon, a continuous hit of 0, the absorption policy, or a budget stops
// it. The skeleton satisfies the same replay identity as SimPath, with the
// deleted jumps recorded in `removed` at their node indices, so adding them
// back reconstructs the driving path bit for bit.
//
// A continuous hit is CreptToZero for families that genuinely creep;
// for the others the event can only be discretization reaching the
// accumulation point, so it is reported as AbsorbedNumerically.
ResurrectionTrace resurrect_path(const LevyModel& model, const SimParams& params,
                                 const AbsorptionPolicy& policy, Rng& rng);

struct KernelStep {
    double next = 0.0;      // position after one resurrection, 0 if crept
    double tau_inc = 0.0;   // elapsed time of the step
    bool crept = false;
    bool censored = false;  // budget ran out before any crossing
    bool ambiguous = false;
};

struct KernelStepParams {
    double budget = 1e4;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    double creep_tol_factor = 10.0;
};

// One transition of the resurrection chain: run the driving process from x
// to its first passage below 0 and report (pre-jump position, elapsed time).
KernelStep kernel_step_pathwise(const LevyModel& model, double x, const KernelStepParams& params,
                                Rng& rng);

// Density of the resurrection kernel at y in (0, x) for the subordinator
// families: (renewal density at x - y) * (negative tail at y). Integrates
// to 1 over (0, x).
double kernel_density_subordinator(const LevyModel& model, double x, double y);

enum class LifetimeMode {
    Pathwise,         // chain the pathwise kernel steps
    StableDecoupled,  // stable subordinators: exact Beta position chain plus
                      // exact passage-time draws (no truncation bias at all)
};

struct LifetimeParams {
    double start = 1.0;
    LifetimeMode mode = LifetimeMode::Pathwise;
    double step_budget = 1e4;         // per kernel step (pathwise mode)
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
};

struct LifetimeEstimate {
    double zeta = 0.0;                  // total time; a lower bound when censored
    bool censored = false;
    std::size_t n_resurrections = 0;
};

// Accumulates kernel-step durations until the absorption policy fires, the
// path creeps to 0, or a budget censors the run. In StableDecoupled mode the
// positions use the exact Beta(1-alpha, alpha) undershoot-ratio law and the
// step durations use the exact first-passage law x^alpha * (scale * S)^-alpha
// with S a standard positive stable variable; the total accumulated time has
// the same law as the pathwise sum.
LifetimeEstimate simulate_lifetime(const LevyModel& model, const LifetimeParams& params,
                                   const AbsorptionPolicy& policy, Rng& rng);

}  // namespace reslevy
