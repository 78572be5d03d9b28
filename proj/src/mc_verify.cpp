#include "reslevy/mc_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "reslevy/analytics.hpp"
#include "reslevy/parallel.hpp"
#include "reslevy/path_engine.hpp"
#include "reslevy/resurrection.hpp"
#include "reslevy/special_functions.hpp"

namespace reslevy {

bool EstimateWithCI::overlaps(const EstimateWithCI& other) const {
    return std::abs(mean - other.mean) <= half_width_95 + other.half_width_95;
}

EstimateWithCI estimate_from_samples(const std::vector<double>& xs, std::size_t n_censored) {
    const Summary s = summarize(xs);
    EstimateWithCI e;
    e.mean = s.mean;
    e.half_width_95 = s.half_width_95();
    e.n = s.n;
    const std::size_t total = s.n + n_censored;
    e.censored_fraction = total > 0 ? static_cast<double>(n_censored) / static_cast<double>(total)
                                    : 0.0;
    return e;
}

const char* test_function_name(TestFunction f) {
    switch (f) {
        case TestFunction::MinWithOne: return "min-with-one";
        case TestFunction::OneMinusExp: return "one-minus-exp";
        case TestFunction::CappedIdentity: return "capped-identity";
        case TestFunction::Zero: return "zero";
    }
    return "unknown";
}

double test_function_value(TestFunction f, double y) {
    switch (f) {
        case TestFunction::MinWithOne: return std::min(y, 1.0);
        case TestFunction::OneMinusExp: return -std::expm1(-y);
        case TestFunction::CappedIdentity: return y <= 10.0 ? y : 0.0;
        case TestFunction::Zero: return 0.0;
    }
    return 0.0;
}

namespace {

// Distinct random purposes inside one check get distinct stream families.
std::uint64_t salted(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ salt);
}

constexpr std::uint64_t kSaltDirect = 0x64697265637400ULL;
constexpr std::uint64_t kSaltStep = 0x73746570ULL;
constexpr std::uint64_t kSaltTable = 0x7461626c65ULL;

// Wilson score interval at 95% for a binomial proportion; behaves sensibly
// at the 0 and 1 endpoints, unlike the plain normal interval.
void wilson_interval(std::size_t hits, std::size_t n, double& lo, double& hi) {
    if (n == 0) {
        lo = 0.0;
        hi = 1.0;
        return;
    }
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(hits) / nn;
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double spread =
        z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    // At the endpoints the score interval touches 0 or 1 exactly; pin them
    // so rounding never leaves the observed frequency outside the interval.
    lo = hits == 0 ? 0.0 : std::max(0.0, center - spread);
    hi = hits == n ? 1.0 : std::min(1.0, center + spread);
}

// Kill time and accumulated downward-tail rate read off a sampled skeleton.
// The integral uses the trapezoid rule on the nodes, evaluating the left
// value and the pre-jump value of each interval so jumps never smear into
// the continuous part. Crossings between nodes are detected linearly; the
// diffusive bridge correction is deliberately not applied here, so the
// piecewise-linear families are exact and diffusive ones carry grid bias.
struct SkeletonKill {
    bool alive = true;
    double rate_integral = 0.0;
    double final_value = 0.0;
};

SkeletonKill kill_on_skeleton(const LevyModel& model, const SimPath& path) {
    SkeletonKill out;
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        const double prev = path.values[i - 1];
        const double pre = prev + path.cont_inc[i];
        if (pre <= 0.0) {
            out.alive = false;
            return out;
        }
        const double dt = path.times[i] - path.times[i - 1];
        out.rate_integral += 0.5 * dt * (model.tail_neg(prev) + model.tail_neg(pre));
        if (path.values[i] <= 0.0) {
            out.alive = false;
            return out;
        }
    }
    out.final_value = path.values.back();
    return out;
}

}  // namespace

FeynmanKacResult check_feynman_kac(const LevyModel& model, const FeynmanKacParams& params) {
    if (model.gaussian_sigma() > 0.0) {
        throw std::invalid_argument(
            "check_feynman_kac: the reweighted side kills on the skeleton with no diffusive "
            "bridge term; supported for pure-jump-plus-drift representations only");
    }
    if (!(params.x > 0.0)) throw std::invalid_argument("check_feynman_kac: x must be > 0");
    if (params.t < 0.0) throw std::invalid_argument("check_feynman_kac: t must be >= 0");
    if (params.n == 0) throw std::invalid_argument("check_feynman_kac: n must be > 0");

    FeynmanKacResult out;
    if (params.t == 0.0) {
        // Both sides collapse to the test function at the start.
        const double fx = test_function_value(params.f, params.x);
        out.lhs = {fx, 0.0, params.n, 0.0};
        out.rhs = {fx, 0.0, params.n, 0.0};
        out.compatible = true;
        out.max_weight = 1.0;
        return out;
    }

    const std::size_t n = params.n;
    std::vector<double> lhs_vals(n), rhs_vals(n), weights(n);
    std::vector<unsigned char> lhs_cens(n, 0), rhs_dead(n, 0), rhs_over(n, 0);

    SimParams sp;
    sp.x0 = params.x;
    sp.horizon = params.t;
    sp.grid_dt = params.grid_dt;
    sp.truncation_delta = params.truncation_delta;
    const AbsorptionPolicy policy;

    parallel_for(n, params.workers, [&](std::size_t i) {
        {
            Rng rng = substream(params.seed, i);
            const ResurrectionTrace tr = resurrect_path(model, sp, policy, rng);
            if (tr.status == TraceStatus::SurvivedHorizon) {
                lhs_vals[i] = test_function_value(params.f, tr.path.values.back());
            } else if (tr.status == TraceStatus::BudgetExhausted) {
                lhs_cens[i] = 1;
                lhs_vals[i] = 0.0;
            } else {
                lhs_vals[i] = 0.0;  // absorbed before the horizon
            }
        }
        {
            // Same substream: the jump skeleton is reused bit for bit, which
            // couples the two estimators for the pure-jump-plus-drift case.
            Rng rng = substream(params.seed, i);
            const SimPath path = sample_path(model, sp, rng);
            const SkeletonKill kill = kill_on_skeleton(model, path);
            if (!kill.alive) {
                rhs_dead[i] = 1;
                rhs_vals[i] = 0.0;
                weights[i] = 0.0;
                return;
            }
            if (kill.rate_integral < 0.0) {
                throw std::logic_error("check_feynman_kac: negative rate integral");
            }
            const double w = std::exp(kill.rate_integral);
            weights[i] = w;
            if (w < 1.0) {
                throw std::logic_error("check_feynman_kac: reweighting below 1");
            }
            if (w > params.weight_cap) {
                rhs_over[i] = 1;
                rhs_vals[i] = 0.0;
                return;
            }
            rhs_vals[i] = test_function_value(params.f, kill.final_value) * w;
        }
    });

    std::size_t n_lhs_cens = 0;
    for (unsigned char c : lhs_cens) n_lhs_cens += c;
    std::vector<double> rhs_kept;
    rhs_kept.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.max_weight = std::max(out.max_weight, weights[i]);
        if (rhs_over[i]) {
            ++out.n_overflow;
            continue;
        }
        rhs_kept.push_back(rhs_vals[i]);
    }
    out.lhs = estimate_from_samples(lhs_vals, 0);
    out.lhs.censored_fraction =
        static_cast<double>(n_lhs_cens) / static_cast<double>(n);
    out.rhs = estimate_from_samples(rhs_kept, out.n_overflow);
    out.unstable = out.n_overflow > 0;
    out.compatible = !out.unstable && out.lhs.overlaps(out.rhs);
    return out;
}

ExponentialLawResult check_exponential_law(const LevyModel& model,
                                           const ExponentialLawParams& params) {
    if (model.flags().creeps_down) {
        throw std::invalid_argument(
            "check_exponential_law: model creeps downward (creeps_down = true), the law fails");
    }
    if (model.flags().long_run == LongRun::DriftsPlus) {
        throw std::invalid_argument(
            "check_exponential_law: model drifts to +infinity (long_run = drifts-plus), "
            "passage below 0 is defective");
    }
    if (!model.flags().has_neg_jumps) {
        throw std::invalid_argument(
            "check_exponential_law: model has no downward jumps (has_neg_jumps = false)");
    }
    if (!(params.x > 0.0)) throw std::invalid_argument("check_exponential_law: x must be > 0");
    if (params.n == 0) throw std::invalid_argument("check_exponential_law: n must be > 0");

    const std::size_t n = params.n;
    std::vector<double> samples(n);
    std::vector<unsigned char> censored(n, 0);

    PassageParams pp;
    pp.x0 = params.x;
    pp.budget = params.budget;
    pp.grid_dt = params.grid_dt;
    pp.truncation_delta = params.truncation_delta;
    pp.want_rate_integral = true;

    parallel_for(n, params.workers, [&](std::size_t i) {
        Rng rng = substream(params.seed, i);
        const FirstPassage fp = first_passage_below(model, pp, rng);
        if (!fp.hit) {
            censored[i] = 1;
            samples[i] = fp.rate_integral;  // lower bound, excluded from the test
        } else {
            samples[i] = fp.rate_integral;
        }
    });

    std::vector<double> kept;
    kept.reserve(n);
    std::size_t n_cens = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (censored[i]) {
            ++n_cens;
        } else {
            kept.push_back(samples[i]);
        }
    }

    ExponentialLawResult out;
    out.censored_fraction = static_cast<double>(n_cens) / static_cast<double>(n);
    if (kept.empty()) {
        throw std::runtime_error("check_exponential_law: every replica was censored");
    }
    out.ks = ks_report_one_sample(kept, [](double z) { return -std::expm1(-z); });
    out.integral = summarize(kept);
    return out;
}

DominationResult check_stochastic_domination(const LevyModel& model,
                                             const DominationParams& params) {
    if (!model.flags().has_neg_jumps) {
        throw std::invalid_argument(
            "check_stochastic_domination: model has no downward jumps (has_neg_jumps = false)");
    }
    if (!model.flags().finite_neg_activity) {
        throw std::invalid_argument(
            "check_stochastic_domination: infinite downward activity "
            "(finite_neg_activity = false), the gap bound degenerates");
    }
    if (model.flags().creeps_down) {
        throw std::invalid_argument(
            "check_stochastic_domination: model creeps downward (creeps_down = true)");
    }
    if (params.n_res == 0 || params.n_paths == 0) {
        throw std::invalid_argument("check_stochastic_domination: counts must be > 0");
    }

    const std::size_t n = params.n_paths;
    std::vector<double> taus(n);            // +infinity when censored
    std::vector<double> elapsed(n);         // lower bound, always finite
    std::vector<unsigned char> absorbed(n, 0);

    KernelStepParams kp;
    kp.budget = params.step_budget;
    kp.grid_dt = params.grid_dt;
    const AbsorptionPolicy policy;

    parallel_for(n, params.workers, [&](std::size_t i) {
        Rng rng = substream(params.seed, i);
        double x = params.x;
        double t = 0.0;
        bool cens = false;
        std::vector<double> times;
        times.reserve(params.n_res);
        for (std::size_t k = 0; k < params.n_res; ++k) {
            const KernelStep step = kernel_step_pathwise(model, x, kp, rng);
            t += step.tau_inc;
            if (step.censored || step.crept) {
                // A crept step cannot happen under the preconditions; treat
                // both as "no k-th resurrection inside the budget".
                cens = true;
                break;
            }
            x = step.next;
            times.push_back(t);
            const std::size_t m = times.size();
            if (x < policy.eps_abs_rel * params.x && m > policy.gap_window &&
                t - times[m - 1 - policy.gap_window] < policy.eps_time_rel * t) {
                absorbed[i] = 1;
            }
        }
        elapsed[i] = t;
        taus[i] = cens ? std::numeric_limits<double>::infinity() : t;
    });

    DominationResult out;
    // Total downward intensity: the tail is finite here, and exp(-x) rounds
    // to 1 at the smallest normal double, so this evaluates the limit exactly
    // for the finite-activity families.
    out.rate = model.tail_neg(std::numeric_limits<double>::min());
    const double shape = static_cast<double>(params.n_res);
    out.mean_lower_bound = shape / out.rate;
    out.band = 2.0 / std::sqrt(static_cast<double>(n));

    // One-sided comparison against the Gamma CDF: censored replicas sit at
    // +infinity, so the empirical CDF below the budget is exact and the
    // statistic never benefits from censoring.
    std::vector<double> finite;
    finite.reserve(n);
    std::size_t n_cens = 0;
    for (double t : taus) {
        if (std::isfinite(t)) {
            finite.push_back(t);
        } else {
            ++n_cens;
        }
    }
    std::sort(finite.begin(), finite.end());
    double d = -1.0;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < finite.size(); ++i) {
        const double fhat = static_cast<double>(i + 1) / nn;
        d = std::max(d, fhat - gamma_cdf(shape, out.rate, finite[i]));
    }
    out.d_plus = d;
    out.dominated = d <= out.band;
    out.censored_fraction = static_cast<double>(n_cens) / nn;
    out.tau = estimate_from_samples(elapsed, 0);
    out.tau.censored_fraction = out.censored_fraction;
    for (unsigned char a : absorbed) out.n_absorbed += a;
    return out;
}

namespace {

// Piecewise-linear read of the tabulated inner estimate, clamped at the
// ends; the table is strictly increasing in z by construction.
double table_lookup(const std::vector<double>& zs, const std::vector<double>& fs, double z) {
    if (z <= zs.front()) return fs.front();
    if (z >= zs.back()) return fs.back();
    const auto it = std::upper_bound(zs.begin(), zs.end(), z);
    const std::size_t j = static_cast<std::size_t>(it - zs.begin());
    const double w = (z - zs[j - 1]) / (zs[j] - zs[j - 1]);
    return fs[j - 1] + w * (fs[j] - fs[j - 1]);
}

}  // namespace

std::vector<KernelInvarianceRow> check_kernel_invariance(const LevyModel& model,
                                                         const KernelInvarianceParams& params) {
    if (!model.flags().is_neg_subordinator) {
        throw std::invalid_argument(
            "check_kernel_invariance: needs a negative-subordinator model "
            "(is_neg_subordinator = false)");
    }
    if (classify(model).verdict != Verdict::AbsorbedAS) {
        throw std::invalid_argument(
            "check_kernel_invariance: the Laplace functional degenerates outside the "
            "absorbed regime");
    }
    if (params.xs.empty()) throw std::invalid_argument("check_kernel_invariance: empty xs");
    if (params.n == 0) throw std::invalid_argument("check_kernel_invariance: n must be > 0");
    if (params.lambda < 0.0) {
        throw std::invalid_argument("check_kernel_invariance: lambda must be >= 0");
    }

    LifetimeParams lp;
    lp.mode = LifetimeMode::Pathwise;
    lp.step_budget = params.step_budget;
    lp.grid_dt = params.grid_dt;
    lp.truncation_delta = params.truncation_delta;
    const AbsorptionPolicy policy;

    KernelStepParams kp;
    kp.budget = params.step_budget;
    kp.grid_dt = params.grid_dt;
    kp.truncation_delta = params.truncation_delta;

    const std::size_t n = params.n;
    const std::size_t n_inner = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n)))));

    std::vector<KernelInvarianceRow> rows;
    rows.reserve(params.xs.size());
    std::uint64_t x_ordinal = 0;
    for (const double x : params.xs) {
        if (!(x > 0.0)) throw std::invalid_argument("check_kernel_invariance: xs must be > 0");
        KernelInvarianceRow row;
        row.x = x;
        const std::uint64_t seed_x = salted(params.seed, 0xABCD0000ULL + x_ordinal);
        ++x_ordinal;

        // Direct side: the Laplace functional of the lifetime from x.
        std::vector<double> direct_vals(n);
        std::vector<unsigned char> direct_cens(n, 0);
        lp.start = x;
        parallel_for(n, params.workers, [&](std::size_t i) {
            Rng rng = substream(salted(seed_x, kSaltDirect), i);
            const LifetimeEstimate est = simulate_lifetime(model, lp, policy, rng);
            if (est.censored) direct_cens[i] = 1;
            direct_vals[i] = std::exp(-params.lambda * est.zeta);
        });
        std::vector<double> direct_kept;
        direct_kept.reserve(n);
        std::size_t direct_censored = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (direct_cens[i]) {
                ++direct_censored;
            } else {
                direct_kept.push_back(direct_vals[i]);
            }
        }
        row.direct = estimate_from_samples(direct_kept, direct_censored);

        // Stepped side: one kernel transition, then the inner functional.
        std::vector<double> tau1(n), z1(n);
        std::vector<unsigned char> step_cens(n, 0);
        parallel_for(n, params.workers, [&](std::size_t i) {
            Rng rng = substream(salted(seed_x, kSaltStep), i);
            const KernelStep step = kernel_step_pathwise(model, x, kp, rng);
            if (step.censored) {
                step_cens[i] = 1;
                return;
            }
            tau1[i] = step.tau_inc;
            z1[i] = step.crept ? 0.0 : step.next;
        });

        double z_lo = std::numeric_limits<double>::infinity();
        double z_hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (step_cens[i] || z1[i] <= 0.0) continue;
            z_lo = std::min(z_lo, z1[i]);
            z_hi = std::max(z_hi, z1[i]);
        }
        std::vector<double> table_z, table_f;
        double table_hw = 0.0;
        if (std::isfinite(z_lo) && z_hi > 0.0) {
            const std::size_t m = std::max<std::size_t>(2, params.table_size);
            table_z.resize(m);
            table_f.resize(m);
            const double lo = std::log(z_lo);
            const double hi = std::log(std::max(z_hi, z_lo * (1.0 + 1e-12)));
            for (std::size_t j = 0; j < m; ++j) {
                table_z[j] = std::exp(lo + (hi - lo) * static_cast<double>(j) /
                                               static_cast<double>(m - 1));
            }
            std::vector<double> node_mean(m), node_hw(m);
            parallel_for(m, params.workers, [&](std::size_t j) {
                LifetimeParams inner = lp;
                inner.start = table_z[j];
                std::vector<double> vals;
                vals.reserve(n_inner);
                for (std::size_t k = 0; k < n_inner; ++k) {
                    Rng rng = substream(salted(seed_x, kSaltTable), j * n_inner + k);
                    const LifetimeEstimate est = simulate_lifetime(model, inner, policy, rng);
                    vals.push_back(std::exp(-params.lambda * est.zeta));
                }
                const Summary s = summarize(vals);
                node_mean[j] = s.mean;
                node_hw[j] = s.half_width_95();
            });
            table_f = std::move(node_mean);
            for (double h : node_hw) table_hw = std::max(table_hw, h);
        }
        row.table_half_width = table_hw;

        std::vector<double> stepped_kept;
        stepped_kept.reserve(n);
        std::size_t step_censored = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (step_cens[i]) {
                ++step_censored;
                continue;
            }
            double inner_val = 1.0;  // landing at 0 ends the lifetime there
            if (z1[i] > 0.0) {
                if (table_z.empty()) continue;
                inner_val = table_lookup(table_z, table_f, z1[i]);
            }
            stepped_kept.push_back(std::exp(-params.lambda * tau1[i]) * inner_val);
        }
        row.stepped = estimate_from_samples(stepped_kept, step_censored);

        row.inconclusive =
            row.direct.censored_fraction > 0.05 || row.stepped.censored_fraction > 0.05;
        row.compatible = std::abs(row.direct.mean - row.stepped.mean) <=
                         row.direct.half_width_95 + row.stepped.half_width_95 + table_hw;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ZeroOneProbeRow> probe_zero_one_conjecture(const LevyModel& model,
                                                       const ZeroOneProbeParams& params) {
    if (model.flags().long_run == LongRun::DriftsPlus) {
        throw std::invalid_argument(
            "probe_zero_one_conjecture: model drifts to +infinity (long_run = drifts-plus)");
    }
    if (params.xs.empty()) throw std::invalid_argument("probe_zero_one_conjecture: empty xs");
    if (params.n == 0) throw std::invalid_argument("probe_zero_one_conjecture: n must be > 0");

    const AbsorptionPolicy policy;
    std::vector<ZeroOneProbeRow> rows;
    rows.reserve(params.xs.size());
    std::uint64_t x_ordinal = 0;
    for (const double x : params.xs) {
        if (!(x > 0.0)) throw std::invalid_argument("probe_zero_one_conjecture: xs must be > 0");
        ZeroOneProbeRow row;
        row.x = x;
        row.n = params.n;
        const std::uint64_t seed_x = salted(params.seed, 0x5A5A0000ULL + x_ordinal);
        ++x_ordinal;

        SimParams sp;
        sp.x0 = x;
        sp.horizon = params.horizon;
        sp.grid_dt = params.grid_dt;
        sp.truncation_delta = params.truncation_delta;

        std::vector<unsigned char> status(params.n, 0);
        parallel_for(params.n, params.workers, [&](std::size_t i) {
            Rng rng = substream(seed_x, i);
            const ResurrectionTrace tr = resurrect_path(model, sp, policy, rng);
            status[i] = static_cast<unsigned char>(tr.status);
        });
        for (unsigned char s : status) {
            switch (static_cast<TraceStatus>(s)) {
                case TraceStatus::AbsorbedNumerically: ++row.n_absorbed; break;
                case TraceStatus::CreptToZero: ++row.n_crept; break;
                case TraceStatus::SurvivedHorizon: ++row.n_survived; break;
                case TraceStatus::BudgetExhausted: ++row.n_budget; break;
            }
        }
        row.freq_absorbed =
            static_cast<double>(row.n_absorbed) / static_cast<double>(params.n);
        wilson_interval(row.n_absorbed, params.n, row.ci_low, row.ci_high);
        rows.push_back(row);
    }
    return rows;
}

ScalingResult check_scaling_stable(const LevyModel& model, const ScalingParams& params) {
    const auto sv = stable_subordinator_view(model);
    if (!sv) {
        throw std::invalid_argument(
            "check_scaling_stable: needs a stable negative-subordinator model");
    }
    if (classify(model).verdict != Verdict::AbsorbedAS) {
        throw std::invalid_argument(
            "check_scaling_stable: the lifetime law needs the absorbed regime");
    }
    if (params.xs.size() < 2) {
        throw std::invalid_argument("check_scaling_stable: needs at least two starts");
    }
    if (params.n == 0) throw std::invalid_argument("check_scaling_stable: n must be > 0");

    ScalingResult out;
    out.exponent = sv->first * params.exponent_factor;

    LifetimeParams lp;
    lp.mode = LifetimeMode::Pathwise;
    lp.step_budget = params.step_budget;
    lp.grid_dt = params.grid_dt;
    lp.truncation_delta = params.truncation_delta;
    const AbsorptionPolicy policy;

    std::vector<std::vector<double>> scaled(params.xs.size());
    std::size_t n_cens = 0;
    for (std::size_t xi = 0; xi < params.xs.size(); ++xi) {
        const double x = params.xs[xi];
        if (!(x > 0.0)) throw std::invalid_argument("check_scaling_stable: xs must be > 0");
        const std::uint64_t seed_x = salted(params.seed, 0x5CA1E000ULL + xi);
        lp.start = x;
        std::vector<double> zeta(params.n);
        std::vector<unsigned char> cens(params.n, 0);
        parallel_for(params.n, params.workers, [&](std::size_t i) {
            Rng rng = substream(seed_x, i);
            const LifetimeEstimate est = simulate_lifetime(model, lp, policy, rng);
            if (est.censored) cens[i] = 1;
            zeta[i] = est.zeta;
        });
        const double denom = std::pow(x, out.exponent);
        scaled[xi].reserve(params.n);
        for (std::size_t i = 0; i < params.n; ++i) {
            if (cens[i]) {
                ++n_cens;
            } else {
                scaled[xi].push_back(zeta[i] / denom);
            }
        }
    }
    out.censored_fraction = static_cast<double>(n_cens) /
                            static_cast<double>(params.n * params.xs.size());
    out.inconclusive = out.censored_fraction > 0.05;

    const std::size_t n_pairs = params.xs.size() * (params.xs.size() - 1) / 2;
    const double pair_level = params.level / static_cast<double>(n_pairs);
    for (std::size_t a = 0; a < params.xs.size(); ++a) {
        for (std::size_t b = a + 1; b < params.xs.size(); ++b) {
            ScalingPair pair;
            pair.x_a = params.xs[a];
            pair.x_b = params.xs[b];
            pair.ks = ks_report_two_sample(scaled[a], scaled[b], pair_level);
            out.any_rejected = out.any_rejected || pair.ks.rejected;
            out.pairs.push_back(pair);
        }
    }
    return out;
}

}  // namespace reslevy
