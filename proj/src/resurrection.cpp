#include "reslevy/resurrection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "reslevy/analytics.hpp"
#include "reslevy/special_functions.hpp"

namespace reslevy {

const char* trace_status_name(TraceStatus s) {
    switch (s) {
        case TraceStatus::AbsorbedNumerically: return "absorbed-numerically";
        case TraceStatus::SurvivedHorizon: return "survived-horizon";
        case TraceStatus::BudgetExhausted: return "budget-exhausted";
        case TraceStatus::CreptToZero: return "crept-to-zero";
    }
    return "unknown";
}

namespace {

// Appends nodes to the trace skeleton. Every value is computed here as
// ((prev + cont) + jump), so the audit identity holds by construction and
// the callers' running position is read back from the arrays rather than
// tracked separately.
struct TraceWriter {
    ResurrectionTrace& tr;
    std::size_t cap;

    TraceWriter(ResurrectionTrace& t, std::size_t max_events) : tr(t), cap(max_events) {}

    bool full() const { return tr.path.times.size() >= cap; }
    double t() const { return tr.path.times.back(); }
    double v() const { return tr.path.values.back(); }
    std::size_t last_index() const { return tr.path.times.size() - 1; }

    void start(double x0) {
        tr.path.times.push_back(0.0);
        tr.path.values.push_back(x0);
        tr.path.cont_inc.push_back(0.0);
    }

    // Node times must be strictly increasing even when a segment is shorter
    // than one ulp of the clock; nudge rather than collapse the node.
    void push(double time, double inc, double jump) {
        if (time <= tr.path.times.back()) {
            time = std::nextafter(tr.path.times.back(), std::numeric_limits<double>::infinity());
        }
        tr.path.times.push_back(time);
        tr.path.cont_inc.push_back(inc);
        tr.path.values.push_back((tr.path.values.back() + inc) + jump);
    }

    void keep_jump(double size) {
        tr.path.jumps.push_back({t(), size, last_index()});
    }

    // The crossing jump is deleted from the path; the node at its time holds
    // the pre-jump value and the jump itself goes to the removal record, so
    // adding it back at this index recovers the driving skeleton.
    void remove_jump(double size) {
        tr.removed.push_back({t(), size, last_index()});
        tr.tau_seq.push_back(t());
        tr.pos_seq.push_back(v());
    }
};

// Both tests must pass: the level has collapsed relative to the start and
// the recent resurrections are packed into a vanishing slice of elapsed
// time. Either alone can be produced by a slow survivor.
bool absorption_policy_fires(const ResurrectionTrace& tr, double start,
                             const AbsorptionPolicy& policy) {
    if (tr.pos_seq.empty()) return false;
    if (!(tr.pos_seq.back() < policy.eps_abs_rel * start)) return false;
    if (tr.tau_seq.size() <= policy.gap_window) return false;
    const double now = tr.tau_seq.back();
    const double window = now - tr.tau_seq[tr.tau_seq.size() - 1 - policy.gap_window];
    return window < policy.eps_time_rel * now;
}

void finish_continuous(const LevyModel& model, ResurrectionTrace& tr) {
    // A genuine creeper can reach 0 through its continuous part; for any
    // other family the event is the discretization arriving at the
    // accumulation point, which is a numerical absorption witness.
    tr.status = model.flags().creeps_down ? TraceStatus::CreptToZero
                                          : TraceStatus::AbsorbedNumerically;
    tr.zeta = tr.path.times.back();
}

// Piecewise-linear route (sigma_eff == 0): nodes only at retained jumps,
// continuous crossings found by an exact linear root.
void resurrect_exact(const LevyModel& model, const Scheme& sc, const SimParams& params,
                     const AbsorptionPolicy& policy, Rng& rng, ResurrectionTrace& tr) {
    TraceWriter w(tr, policy.max_events);
    w.start(params.x0);
    const double lam = sc.rate_pos + sc.rate_neg;
    std::exponential_distribution<double> inter(lam > 0.0 ? lam : 1.0);

    double t = 0.0;
    for (;;) {
        if (w.full() || tr.tau_seq.size() >= policy.n_max) {
            tr.status = TraceStatus::BudgetExhausted;
            return;
        }
        double seg = lam > 0.0 ? inter(rng) : params.horizon - t;
        seg = std::max(seg, 1e-300);
        const bool jump_next = lam > 0.0 && t + seg < params.horizon;
        const double len = jump_next ? seg : params.horizon - t;
        const double v = w.v();

        if (sc.drift_eff < 0.0) {
            const double to_zero = v / -sc.drift_eff;
            if (to_zero <= len) {
                w.push(t + to_zero, -v, 0.0);
                finish_continuous(model, tr);
                return;
            }
        }
        if (!jump_next) {
            w.push(params.horizon, sc.drift_eff * len, 0.0);
            tr.status = TraceStatus::SurvivedHorizon;
            return;
        }

        t += seg;
        const double inc = sc.drift_eff * seg;
        const double jump = sample_scheme_jump(model, sc, rng);
        const double v_pre = v + inc;
        if (v_pre + jump <= 0.0) {
            w.push(t, inc, 0.0);
            w.remove_jump(jump);
            if (sc.delta > 0.0 && v_pre <= 10.0 * sc.delta) ++tr.ambiguous_crossings;
            if (absorption_policy_fires(tr, params.x0, policy)) {
                tr.status = TraceStatus::AbsorbedNumerically;
                tr.zeta = tr.tau_seq.back();
                return;
            }
        } else {
            w.push(t, inc, jump);
            w.keep_jump(jump);
        }
        t = w.t();
    }
}

// Grid route (sigma_eff > 0): one normal per interval, Brownian-bridge
// crossing test between positive endpoints, crossings placed by linear
// interpolation as exact-zero nodes.
void resurrect_grid(const LevyModel& model, const Scheme& sc, const SimParams& params,
                    const AbsorptionPolicy& policy, Rng& rng, ResurrectionTrace& tr) {
    TraceWriter w(tr, policy.max_events);
    w.start(params.x0);
    const double lam = sc.rate_pos + sc.rate_neg;
    std::exponential_distribution<double> inter(lam > 0.0 ? lam : 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double s2 = sc.sigma_eff * sc.sigma_eff;

    double t = 0.0;
    double next_jump =
        lam > 0.0 ? inter(rng) : std::numeric_limits<double>::infinity();
    std::uint64_t grid_k = 1;
    for (;;) {
        if (w.full() || tr.tau_seq.size() >= policy.n_max) {
            tr.status = TraceStatus::BudgetExhausted;
            return;
        }
        const double next_grid = static_cast<double>(grid_k) * params.grid_dt;
        const double t_next = std::min(next_grid, std::min(next_jump, params.horizon));
        const bool at_jump = t_next == next_jump;
        const double dt = t_next - t;
        const double v = w.v();

        double inc = 0.0;
        if (dt > 0.0) {
            inc = sc.drift_eff * dt + sc.sigma_eff * std::sqrt(dt) * normal(rng);
            const double v_end = v + inc;
            if (v_end <= 0.0) {
                const double theta = v / (v - v_end);
                w.push(t + theta * dt, -v, 0.0);
                finish_continuous(model, tr);
                return;
            }
            const double p_cross = std::exp(-2.0 * v * v_end / (s2 * dt));
            if (u01(rng) < p_cross) {
                const double theta = v / (v + v_end);
                w.push(t + theta * dt, -v, 0.0);
                finish_continuous(model, tr);
                return;
            }
        }

        if (at_jump) {
            const double jump = sample_scheme_jump(model, sc, rng);
            const double v_pre = v + inc;
            if (v_pre + jump <= 0.0) {
                w.push(t_next, inc, 0.0);
                w.remove_jump(jump);
                if (sc.delta > 0.0 && v_pre <= 10.0 * sc.delta) ++tr.ambiguous_crossings;
                if (absorption_policy_fires(tr, params.x0, policy)) {
                    tr.status = TraceStatus::AbsorbedNumerically;
                    tr.zeta = tr.tau_seq.back();
                    return;
                }
            } else {
                w.push(t_next, inc, jump);
                w.keep_jump(jump);
            }
            next_jump = t_next + inter(rng);
        } else {
            w.push(t_next, inc, 0.0);
        }
        if (t_next == next_grid) ++grid_k;
        t = w.t();
        if (t >= params.horizon) {
            tr.status = TraceStatus::SurvivedHorizon;
            return;
        }
    }
}

}  // namespace

ResurrectionTrace resurrect_path(const LevyModel& model, const SimParams& params,
                                 const AbsorptionPolicy& policy, Rng& rng) {
    if (!(params.x0 > 0.0)) throw std::invalid_argument("resurrect_path: x0 must be > 0");
    if (!(params.horizon > 0.0)) throw std::invalid_argument("resurrect_path: horizon must be > 0");
    const Scheme sc = make_scheme(model, params.truncation_delta);

    ResurrectionTrace tr;
    tr.path.horizon = params.horizon;
    tr.path.truncation_delta = sc.delta;
    tr.path.grid_dt = params.grid_dt;
    if (sc.sigma_eff == 0.0) {
        resurrect_exact(model, sc, params, policy, rng, tr);
    } else {
        if (!(params.grid_dt > 0.0)) {
            throw std::invalid_argument("resurrect_path: grid_dt must be > 0");
        }
        resurrect_grid(model, sc, params, policy, rng, tr);
    }
    return tr;
}

KernelStep kernel_step_pathwise(const LevyModel& model, double x, const KernelStepParams& params,
                                Rng& rng) {
    if (!(x > 0.0)) throw std::invalid_argument("kernel_step_pathwise: x must be > 0");
    PassageParams pp;
    pp.x0 = x;
    pp.budget = params.budget;
    pp.grid_dt = params.grid_dt;
    pp.truncation_delta = params.truncation_delta;
    pp.creep_tol_factor = params.creep_tol_factor;
    const FirstPassage fp = first_passage_below(model, pp, rng);

    KernelStep step;
    if (!fp.hit) {
        step.censored = true;
        step.tau_inc = fp.final_time;
        step.next = fp.final_value;
        return step;
    }
    step.tau_inc = fp.tau;
    step.crept = fp.crept;
    step.ambiguous = fp.ambiguous;
    step.next = fp.crept ? 0.0 : fp.pre;
    return step;
}

double kernel_density_subordinator(const LevyModel& model, double x, double y) {
    if (!(x > 0.0)) throw std::domain_error("kernel_density_subordinator: x must be > 0");
    if (!(y > 0.0 && y < x)) {
        throw std::domain_error("kernel_density_subordinator: y must lie in (0, x)");
    }
    if (const auto sv = stable_subordinator_view(model)) {
        // Renewal density z^(a-1)/(c^a Gamma(a)) against tail c^a y^-a /
        // Gamma(1-a): the scale cancels and the density is self-similar.
        const double alpha = sv->first;
        return std::pow(x - y, alpha - 1.0) * std::pow(y, -alpha) /
               (std::tgamma(alpha) * std::tgamma(1.0 - alpha));
    }
    return renewal_density(model, x - y) * model.tail_neg(y);
}

namespace {

// Rolling record of the last gap_window resurrection times, enough to apply
// the same absorption policy without storing the whole sequence.
struct GapWindow {
    std::vector<double> ring;
    std::size_t count = 0;

    explicit GapWindow(std::size_t k) : ring(std::max<std::size_t>(k, 1), 0.0) {}

    // True when the last ring.size() gaps fit inside eps_rel * now.
    bool packed(double now, double eps_rel) const {
        if (count < ring.size()) return false;
        const double oldest = ring[count % ring.size()];
        return now - oldest < eps_rel * now;
    }

    void record(double now) {
        ring[count % ring.size()] = now;
        ++count;
    }
};

}  // namespace

LifetimeEstimate simulate_lifetime(const LevyModel& model, const LifetimeParams& params,
                                   const AbsorptionPolicy& policy, Rng& rng) {
    if (!(params.start > 0.0)) {
        throw std::invalid_argument("simulate_lifetime: start must be > 0");
    }

    LifetimeEstimate est;
    GapWindow gaps(policy.gap_window);
    double x = params.start;
    double t = 0.0;

    if (params.mode == LifetimeMode::StableDecoupled) {
        const auto sv = stable_subordinator_view(model);
        if (!sv) {
            throw std::logic_error(
                "simulate_lifetime: StableDecoupled applies to stable negative subordinators only");
        }
        const double alpha = sv->first;
        const double scale = sv->second;
        std::gamma_distribution<double> g_top(1.0 - alpha, 1.0);
        std::gamma_distribution<double> g_bot(alpha, 1.0);
        for (;;) {
            if (est.n_resurrections >= policy.n_max) {
                est.censored = true;
                break;
            }
            // Level-x passage time of the driving subordinator in closed
            // form: (x / (scale * S))^alpha with S standard positive stable.
            const double s = sample_stable_standard(alpha, 0.0, rng);
            t += std::pow(x / (scale * s), alpha);
            // Undershoot ratio has the Beta(1 - alpha, alpha) law.
            const double a = g_top(rng);
            const double b = g_bot(rng);
            x *= a / (a + b);
            ++est.n_resurrections;
            const bool collapsed = x < policy.eps_abs_rel * params.start;
            if (collapsed && gaps.packed(t, policy.eps_time_rel)) break;
            gaps.record(t);
        }
        est.zeta = t;
        return est;
    }

    KernelStepParams kp;
    kp.budget = params.step_budget;
    kp.grid_dt = params.grid_dt;
    kp.truncation_delta = params.truncation_delta;
    for (;;) {
        if (est.n_resurrections >= policy.n_max) {
            est.censored = true;
            break;
        }
        const KernelStep step = kernel_step_pathwise(model, x, kp, rng);
        t += step.tau_inc;
        if (step.censored) {
            est.censored = true;
            break;
        }
        if (step.crept) break;  // the lifetime ends at a continuous hit
        x = step.next;
        ++est.n_resurrections;
        const bool collapsed = x < policy.eps_abs_rel * params.start;
        if (collapsed && gaps.packed(t, policy.eps_time_rel)) break;
        gaps.record(t);
    }
    est.zeta = t;
    return est;
}

}  // namespace reslevy
