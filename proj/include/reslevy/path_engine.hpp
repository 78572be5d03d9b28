#pragma once

#include <cstddef>
#include <vector>

#include "reslevy/levy_model.hpp"
#include "reslevy/rng.hpp"

namespace reslevy {

// Discretization of a model into simulatable pieces: jumps at least delta in
// magnitude arrive as a marked Poisson process, everything smaller is folded
// into drift_eff (and, where the small jumps have a divergent sum, into
// sigma_eff as a matching-variance Gaussian slab).
//
// Finite-activity families are represented exactly: every jump is sampled at
// its true height and delta is ignored.
struct Scheme {
    double sigma_eff = 0.0;
    double drift_eff = 0.0;
    double rate_pos = 0.0;   // arrival rate of retained upward jumps
    double rate_neg = 0.0;   // arrival rate of retained downward jumps
    double delta = 0.0;      // 0 means the representation is exact
};

Scheme make_scheme(const LevyModel& model, double truncation_delta);

// Magnitude of one retained jump (conditioned on being >= delta where the
// family has infinite activity). Both return positive numbers.
double sample_jump_pos_trunc(const LevyModel& model, double delta, Rng& rng);
double sample_jump_neg_trunc(const LevyModel& model, double delta, Rng& rng);

// One signed retained jump under the scheme's sign split. Draw order (sign
// only when both sides are active, then magnitude) is part of the replay
// contract shared by every consumer of a Scheme.
double sample_scheme_jump(const LevyModel& model, const Scheme& sc, Rng& rng);

struct JumpRecord {
    double t = 0.0;
    double size = 0.0;        // signed
    std::size_t index = 0;    // position in times/values where the jump lands
};

// A sampled skeleton. The array layout is an audit contract:
//   values[0] == x0, cont_inc[0] == 0, and for i >= 1
//   values[i] == values[i-1] + cont_inc[i] + (sum of jump sizes at index i)
// holds bit for bit, so any consumer can replay the path from the parts.
struct SimPath {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> cont_inc;
    std::vector<JumpRecord> jumps;
    double horizon = 0.0;
    double truncation_delta = 0.0;
    double grid_dt = 0.0;
};

struct SimParams {
    double x0 = 0.0;
    double horizon = 1.0;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
};

// Draw order is fixed: first the jump skeleton (inter-arrival, sign, size per
// jump, in time order), then one normal per inter-event interval when
// sigma_eff > 0. Identical (params, rng state) gives identical arrays.
SimPath sample_path(const LevyModel& model, const SimParams& params, Rng& rng);

struct PassageParams {
    double x0 = 1.0;
    double budget = 1e4;             // give up after this much process time
    double grid_dt = 1e-2;           // used only when sigma_eff > 0
    double truncation_delta = 1e-4;
    double creep_tol_factor = 10.0;  // pre <= factor*delta flags the crossing ambiguous
    bool want_rate_integral = false;
};

struct FirstPassage {
    bool hit = false;
    bool crept = false;       // reached 0 through the continuous part
    bool ambiguous = false;   // jump crossing launched from within creep tolerance
    double tau = 0.0;         // crossing time; +infinity when the budget ran out
    double pre = 0.0;         // position just before the crossing, 0 when crept
    double post = 0.0;        // signed position just after: post <= 0 <= pre, 0 when crept
    double final_time = 0.0;
    double final_value = 0.0;
    // int_0^tau of the downward tail evaluated along the path; exact by
    // closed-form segment integrals when sigma_eff == 0, trapezoid otherwise.
    double rate_integral = 0.0;
};

// First time x0 + (process) goes below 0. With sigma_eff == 0 the path is
// piecewise linear between retained jumps and crossings are found by exact
// root detection with no grid at all.
FirstPassage first_passage_below(const LevyModel& model, const PassageParams& params, Rng& rng);

}  // namespace reslevy
