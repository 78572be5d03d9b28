#include "reslevy/path_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "reslevy/special_functions.hpp"

namespace reslevy {

// One retained-jump event: inter-arrival already consumed by the caller.
// Draw order inside an event is sign (only if both sides are active), then
// magnitude; keeping the order fixed makes every path replayable from the
// seed alone.
double sample_scheme_jump(const LevyModel& model, const Scheme& sc, Rng& rng) {
    bool up;
    if (sc.rate_pos > 0.0 && sc.rate_neg > 0.0) {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        up = u01(rng) * (sc.rate_pos + sc.rate_neg) < sc.rate_pos;
    } else {
        up = sc.rate_pos > 0.0;
    }
    const double mag = up ? sample_jump_pos_trunc(model, sc.delta, rng)
                          : sample_jump_neg_trunc(model, sc.delta, rng);
    return up ? mag : -mag;
}

Scheme make_scheme(const LevyModel& model, double truncation_delta) {
    Scheme sc;
    switch (model.family()) {
        case Family::CompoundPoissonDrift: {
            const auto& p = model.params_as<CompoundPoissonDriftParams>();
            sc.drift_eff = p.drift;
            sc.rate_pos = p.rate_up;
            sc.rate_neg = p.rate_down;
            return sc;
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = model.params_as<BrownianCompoundPoissonParams>();
            sc.sigma_eff = p.sigma;
            sc.drift_eff = p.drift;
            sc.rate_pos = p.rate_up;
            sc.rate_neg = p.rate_down;
            return sc;
        }
        case Family::Stable: {
            const auto& p = model.params_as<StableParams>();
            if (p.alpha == 2.0) {
                sc.sigma_eff = model.gaussian_sigma();
                return sc;
            }
            if (!(truncation_delta > 0.0)) {
                throw std::invalid_argument("make_scheme: truncation_delta must be > 0");
            }
            sc.delta = truncation_delta;
            sc.rate_pos = model.tail_pos(truncation_delta);
            sc.rate_neg = model.tail_neg(truncation_delta);
            if (p.alpha < 1.0) {
                // Small jumps are absolutely summable: put back their mean.
                sc.drift_eff = model.small_jump_mean(truncation_delta);
            } else if (p.alpha > 1.0) {
                // Total mean is 0, so the compensator of the retained jumps
                // is minus their mean; small jumps become a matching-variance
                // Gaussian slab.
                sc.drift_eff = -model.big_jump_mean(truncation_delta);
                sc.sigma_eff = std::sqrt(model.small_jump_second_moment(truncation_delta));
            }
            // alpha == 1 is symmetric here: dropped small jumps have zero
            // mean and O(delta) variance per unit time.
            return sc;
        }
        case Family::StableSubordinatorNeg:
        case Family::GammaSubordinatorNeg: {
            if (!(truncation_delta > 0.0)) {
                throw std::invalid_argument("make_scheme: truncation_delta must be > 0");
            }
            sc.delta = truncation_delta;
            sc.rate_neg = model.tail_neg(truncation_delta);
            sc.drift_eff = model.small_jump_mean(truncation_delta);
            return sc;
        }
    }
    throw std::logic_error("make_scheme: unhandled family");
}

double sample_jump_pos_trunc(const LevyModel& model, double delta, Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    switch (model.family()) {
        case Family::CompoundPoissonDrift: {
            const auto& p = model.params_as<CompoundPoissonDriftParams>();
            return std::exponential_distribution<double>(1.0 / p.mean_up)(rng);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = model.params_as<BrownianCompoundPoissonParams>();
            return std::exponential_distribution<double>(1.0 / p.mean_up)(rng);
        }
        case Family::Stable: {
            const auto& p = model.params_as<StableParams>();
            // Conditional tail above delta is (x/delta)^-alpha.
            const double q = 1.0 - u01(rng);  // in (0, 1]
            return delta * std::pow(q, -1.0 / p.alpha);
        }
        default:
            throw std::logic_error("sample_jump_pos_trunc: family has no upward jumps");
    }
}

double sample_jump_neg_trunc(const LevyModel& model, double delta, Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    switch (model.family()) {
        case Family::CompoundPoissonDrift: {
            const auto& p = model.params_as<CompoundPoissonDriftParams>();
            return std::exponential_distribution<double>(1.0 / p.mean_down)(rng);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = model.params_as<BrownianCompoundPoissonParams>();
            return std::exponential_distribution<double>(1.0 / p.mean_down)(rng);
        }
        case Family::Stable: {
            const auto& p = model.params_as<StableParams>();
            const double q = 1.0 - u01(rng);
            return delta * std::pow(q, -1.0 / p.alpha);
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = model.params_as<StableSubordinatorNegParams>();
            const double q = 1.0 - u01(rng);
            return delta * std::pow(q, -1.0 / p.alpha);
        }
        case Family::GammaSubordinatorNeg: {
            // Tail above delta is E1(rate x)/E1(rate delta); invert it.
            const auto& p = model.params_as<GammaSubordinatorNegParams>();
            const double q = 1.0 - u01(rng);
            const double target = q * expint_e1(p.rate * delta);
            return expint_e1_inverse(target) / p.rate;
        }
    }
    throw std::logic_error("sample_jump_neg_trunc: unhandled family");
}

SimPath sample_path(const LevyModel& model, const SimParams& params, Rng& rng) {
    if (!(params.horizon > 0.0)) throw std::invalid_argument("sample_path: horizon must be > 0");
    if (!(params.grid_dt > 0.0)) throw std::invalid_argument("sample_path: grid_dt must be > 0");
    const Scheme sc = make_scheme(model, params.truncation_delta);

    SimPath path;
    path.horizon = params.horizon;
    path.truncation_delta = sc.delta;
    path.grid_dt = params.grid_dt;

    // Jump skeleton first, in time order.
    std::vector<std::pair<double, double>> jump_events;  // (time, signed size)
    const double lam = sc.rate_pos + sc.rate_neg;
    if (lam > 0.0) {
        std::exponential_distribution<double> inter(lam);
        double t = 0.0;
        for (;;) {
            t += inter(rng);
            if (t >= params.horizon) break;
            jump_events.emplace_back(t, sample_scheme_jump(model, sc, rng));
        }
    }

    // Merge the jump times with the regular grid.
    std::vector<double> nodes;
    nodes.reserve(jump_events.size() +
                  static_cast<std::size_t>(params.horizon / params.grid_dt) + 2);
    nodes.push_back(0.0);
    std::size_t ji = 0;
    for (std::size_t k = 1;; ++k) {
        double tg = static_cast<double>(k) * params.grid_dt;
        if (tg > params.horizon) tg = params.horizon;
        while (ji < jump_events.size() && jump_events[ji].first < tg) {
            if (jump_events[ji].first > nodes.back()) nodes.push_back(jump_events[ji].first);
            ++ji;
        }
        if (tg > nodes.back()) nodes.push_back(tg);
        if (tg >= params.horizon) break;
    }

    path.times = std::move(nodes);
    const std::size_t n = path.times.size();
    path.values.resize(n);
    path.cont_inc.resize(n);
    path.values[0] = params.x0;
    path.cont_inc[0] = 0.0;

    // Index jumps by node. Jump times were inserted as nodes, so lookup by
    // scanning forward is exact.
    std::size_t jn = 0;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = path.times[i] - path.times[i - 1];
        double inc = sc.drift_eff * dt;
        if (sc.sigma_eff > 0.0) inc += sc.sigma_eff * std::sqrt(dt) * normal(rng);
        path.cont_inc[i] = inc;
        double jump = 0.0;
        while (jn < jump_events.size() && jump_events[jn].first == path.times[i]) {
            path.jumps.push_back({jump_events[jn].first, jump_events[jn].second, i});
            jump += jump_events[jn].second;
            ++jn;
        }
        path.values[i] = path.values[i - 1] + path.cont_inc[i] + jump;
    }
    return path;
}

namespace {

// int_0^len tail_neg(z0 + slope*s) ds for a segment that stays positive,
// via the closed-form antiderivative of the tail.
double segment_rate_integral(const LevyModel& model, double z0, double slope, double len) {
    if (len <= 0.0) return 0.0;
    if (slope == 0.0) return len * model.tail_neg(z0);
    // The caller's crossing test keeps segments nonnegative, but either
    // endpoint can round a few ulps below zero; clamp so the antiderivative
    // stays in domain.
    const double a = std::max(0.0, z0);
    const double b = std::max(0.0, z0 + slope * len);
    return (model.tail_neg_antiderivative(b) - model.tail_neg_antiderivative(a)) / slope;
}

FirstPassage passage_exact(const LevyModel& model, const Scheme& sc,
                           const PassageParams& params, Rng& rng) {
    FirstPassage out;
    const double lam = sc.rate_pos + sc.rate_neg;
    const double tol = params.creep_tol_factor * sc.delta;
    std::exponential_distribution<double> inter(lam > 0.0 ? lam : 1.0);

    double t = 0.0;
    double v = params.x0;
    for (;;) {
        const double seg = lam > 0.0 ? inter(rng) : params.budget - t;
        const double len = std::min(seg, params.budget - t);

        // Continuous crossing inside the segment happens only with a
        // negative effective drift.
        if (sc.drift_eff < 0.0) {
            const double to_zero = v / -sc.drift_eff;
            if (to_zero <= len) {
                if (params.want_rate_integral) {
                    out.rate_integral +=
                        segment_rate_integral(model, v, sc.drift_eff, to_zero);
                }
                out.hit = true;
                out.crept = true;
                out.tau = t + to_zero;
                out.final_time = out.tau;
                out.final_value = 0.0;
                return out;
            }
        }
        if (params.want_rate_integral) {
            out.rate_integral += segment_rate_integral(model, v, sc.drift_eff, len);
        }
        t += len;
        v += sc.drift_eff * len;
        if (len < seg || lam == 0.0) {
            // Budget exhausted before the next retained jump.
            out.final_time = t;
            out.final_value = v;
            out.tau = std::numeric_limits<double>::infinity();
            return out;
        }

        const double jump = sample_scheme_jump(model, sc, rng);
        const double v_post = v + jump;
        if (v_post <= 0.0) {
            out.hit = true;
            out.tau = t;
            out.pre = v;
            out.post = v_post;
            out.ambiguous = sc.delta > 0.0 && v <= tol;
            out.final_time = t;
            out.final_value = v_post;
            return out;
        }
        v = v_post;
    }
}

FirstPassage passage_grid(const LevyModel& model, const Scheme& sc,
                          const PassageParams& params, Rng& rng) {
    FirstPassage out;
    const double lam = sc.rate_pos + sc.rate_neg;
    const double tol = params.creep_tol_factor * sc.delta;
    std::exponential_distribution<double> inter(lam > 0.0 ? lam : 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    double t = 0.0;
    double v = params.x0;
    double next_jump = lam > 0.0 ? inter(rng) : std::numeric_limits<double>::infinity();
    std::uint64_t grid_k = 1;
    for (;;) {
        const double next_grid = static_cast<double>(grid_k) * params.grid_dt;
        double t_next = std::min(next_grid, std::min(next_jump, params.budget));
        const double dt = t_next - t;
        bool at_jump = t_next == next_jump;

        double v_end = v;
        if (dt > 0.0) {
            v_end = v + sc.drift_eff * dt + sc.sigma_eff * std::sqrt(dt) * normal(rng);
            if (v_end <= 0.0) {
                // The continuous part itself ended below 0; place the
                // crossing by linear interpolation.
                const double theta = v / (v - v_end);
                if (params.want_rate_integral) {
                    out.rate_integral += theta * dt * model.tail_neg(v);
                }
                out.hit = true;
                out.crept = true;
                out.tau = t + theta * dt;
                out.final_time = out.tau;
                out.final_value = 0.0;
                return out;
            }
            // Both endpoints positive: the bridge may still have dipped.
            const double p_cross = std::exp(-2.0 * v * v_end / (sc.sigma_eff * sc.sigma_eff * dt));
            if (u01(rng) < p_cross) {
                const double theta = v / (v + v_end);
                if (params.want_rate_integral) {
                    out.rate_integral += theta * dt * model.tail_neg(v);
                }
                out.hit = true;
                out.crept = true;
                out.tau = t + theta * dt;
                out.final_time = out.tau;
                out.final_value = 0.0;
                return out;
            }
            if (params.want_rate_integral) {
                out.rate_integral += 0.5 * dt * (model.tail_neg(v) + model.tail_neg(v_end));
            }
        }
        t = t_next;
        v = v_end;

        if (at_jump) {
            const double jump = sample_scheme_jump(model, sc, rng);
            const double v_post = v + jump;
            if (v_post <= 0.0) {
                out.hit = true;
                out.tau = t;
                out.pre = v;
                out.post = v_post;
                out.ambiguous = sc.delta > 0.0 && v <= tol;
                out.final_time = t;
                out.final_value = v_post;
                return out;
            }
            v = v_post;
            next_jump = t + inter(rng);
        }
        if (t_next == next_grid) ++grid_k;
        if (t >= params.budget) {
            out.final_time = t;
            out.final_value = v;
            out.tau = std::numeric_limits<double>::infinity();
            return out;
        }
    }
}

}  // namespace

FirstPassage first_passage_below(const LevyModel& model, const PassageParams& params, Rng& rng) {
    if (!(params.x0 > 0.0)) throw std::invalid_argument("first_passage_below: x0 must be > 0");
    if (!(params.budget > 0.0)) throw std::invalid_argument("first_passage_below: budget must be > 0");
    const Scheme sc = make_scheme(model, params.truncation_delta);
    if (sc.sigma_eff == 0.0) return passage_exact(model, sc, params, rng);
    if (!(params.grid_dt > 0.0)) throw std::invalid_argument("first_passage_below: grid_dt must be > 0");
    return passage_grid(model, sc, params, rng);
}

}  // namespace reslevy
