#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reslevy/levy_model.hpp"
#include "reslevy/stats.hpp"

namespace reslevy {

// Every check in this module is deterministic given (seed, n): replica i
// always draws from substream(seed, i) and reductions run in index order,
// so the worker count never changes a digit of the output.

struct EstimateWithCI {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::size_t n = 0;
    double censored_fraction = 0.0;

    bool overlaps(const EstimateWithCI& other) const;
};

EstimateWithCI estimate_from_samples(const std::vector<double>& xs, std::size_t n_censored = 0);

// Bounded test functions vanishing at 0, the class for which the resurrected
// law can be priced on the killed path with an exponential reweighting.
enum class TestFunction {
    MinWithOne,      // min(y, 1)
    OneMinusExp,     // 1 - exp(-y)
    CappedIdentity,  // y when y <= 10, else 0
    Zero,
};
const char* test_function_name(TestFunction f);
double test_function_value(TestFunction f, double y);

struct FeynmanKacParams {
    double x = 1.0;
    double t = 1.0;
    TestFunction f = TestFunction::MinWithOne;
    std::size_t n = 100000;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    double weight_cap = 1e12;  // beyond this the reweighted side is unstable
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct FeynmanKacResult {
    EstimateWithCI lhs;  // f at the resurrected position, killed at absorption
    EstimateWithCI rhs;  // f at the driving position, exponentially reweighted
    bool compatible = false;
    bool unstable = false;      // some weight exceeded the cap
    double max_weight = 1.0;
    std::size_t n_overflow = 0;
};

// Same-seed replicas reuse one jump skeleton on both sides, so for the
// piecewise-linear families the two estimators are coupled path by path.
// The reweighted side integrates the downward tail along the skeleton by
// the trapezoid rule with jump times as nodes.
FeynmanKacResult check_feynman_kac(const LevyModel& model, const FeynmanKacParams& params);

struct ExponentialLawParams {
    double x = 1.0;
    std::size_t n = 10000;
    // Long budgets keep the censored fraction below the KS resolution even
    // for oscillating models, whose passage times have heavy tails.
    double budget = 1e6;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct ExponentialLawResult {
    KsReport ks;              // against the unit exponential law
    Summary integral;         // sample moments of the accumulated rate
    double censored_fraction = 0.0;
};

// The accumulated downward-tail rate along the driving path, stopped at the
// first passage below 0, is a unit exponential. Requires a model that
// neither creeps downward nor drifts to +infinity.
ExponentialLawResult check_exponential_law(const LevyModel& model,
                                           const ExponentialLawParams& params);

struct DominationParams {
    double x = 1.0;
    std::size_t n_res = 20;     // which resurrection time to test
    std::size_t n_paths = 10000;
    double step_budget = 1e4;
    double grid_dt = 1e-2;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct DominationResult {
    double d_plus = 0.0;      // sup of (empirical CDF - Gamma CDF), signed
    double band = 0.0;        // 2/sqrt(n_paths), the DKW comparison band
    bool dominated = false;   // d_plus <= band
    EstimateWithCI tau;       // censored samples enter as elapsed lower bounds
    double mean_lower_bound = 0.0;  // n_res / rate, what domination implies
    double rate = 0.0;        // downward jump rate at 0
    double censored_fraction = 0.0;
    std::size_t n_absorbed = 0;  // absorption-policy fires; expected 0 here
};

// For finite downward activity, each inter-resurrection gap lasts at least
// an Exp(rate) waiting time, so tau_{n_res} stochastically dominates a
// Gamma(n_res, rate) variable. Censored replicas count as +infinity, which
// leaves the empirical CDF below the budget exact.
DominationResult check_stochastic_domination(const LevyModel& model,
                                             const DominationParams& params);

struct KernelInvarianceParams {
    std::vector<double> xs = {0.5, 1.0, 2.0};
    std::size_t n = 10000;
    double lambda = 1.0;
    double step_budget = 1e4;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    std::size_t table_size = 64;  // grid nodes for the inner estimate
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct KernelInvarianceRow {
    double x = 0.0;
    EstimateWithCI direct;    // E exp(-lambda * lifetime) from x
    EstimateWithCI stepped;   // one kernel step, then the tabulated inner estimate
    double table_half_width = 0.0;  // inner-table uncertainty, shared across replicas
    bool compatible = false;
    bool inconclusive = false;  // censoring above 5% on either side
};

// One transition of the resurrection kernel must preserve the Laplace
// functional of the lifetime. The inner expectation is tabulated on a log
// grid of landing positions and interpolated; its half-width is added to
// the overlap slack because the same table is reused by every replica.
std::vector<KernelInvarianceRow> check_kernel_invariance(const LevyModel& model,
                                                         const KernelInvarianceParams& params);

struct ZeroOneProbeParams {
    std::vector<double> xs = {0.5, 1.0, 2.0};
    std::size_t n = 1000;
    double horizon = 100.0;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct ZeroOneProbeRow {
    double x = 0.0;
    std::size_t n = 0;
    std::size_t n_absorbed = 0;   // absorption policy fired
    std::size_t n_crept = 0;      // genuine continuous hit
    std::size_t n_survived = 0;
    std::size_t n_budget = 0;
    double freq_absorbed = 0.0;
    double ci_low = 0.0;   // Wilson interval for freq_absorbed
    double ci_high = 0.0;
};

// Reports per-start absorption frequencies with intervals and asserts
// nothing: evidence for or against start-independence is left to the reader.
std::vector<ZeroOneProbeRow> probe_zero_one_conjecture(const LevyModel& model,
                                                       const ZeroOneProbeParams& params);

struct ScalingParams {
    std::vector<double> xs = {0.5, 1.0, 2.0};
    std::size_t n = 10000;
    double exponent_factor = 1.0;  // multiplies the self-similarity exponent;
                                   // != 1 is the deliberate negative control
    double step_budget = 1e4;
    double grid_dt = 1e-2;
    double truncation_delta = 1e-4;
    double level = 0.01;
    std::uint64_t seed = 1;
    unsigned workers = 1;
};

struct ScalingPair {
    double x_a = 0.0;
    double x_b = 0.0;
    KsReport ks;  // at level / (number of pairs)
};

struct ScalingResult {
    double exponent = 0.0;  // the rescaling power actually used
    std::vector<ScalingPair> pairs;
    bool any_rejected = false;
    bool inconclusive = false;  // censored fraction above 5% at some start
    double censored_fraction = 0.0;
};

// Lifetimes started from x, rescaled by x^exponent, must share one law
// across starts; pairwise two-sample KS with a Bonferroni-adjusted level.
ScalingResult check_scaling_stable(const LevyModel& model, const ScalingParams& params);

}  // namespace reslevy
