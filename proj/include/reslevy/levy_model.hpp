#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "reslevy/rng.hpp"

namespace reslevy {

enum class Family {
    CompoundPoissonDrift,
    Stable,
    StableSubordinatorNeg,
    GammaSubordinatorNeg,
    BrownianCompoundPoisson,
};

enum class LongRun { DriftsPlus, DriftsMinus, Oscillates };

const char* family_name(Family f);
const char* long_run_name(LongRun lr);

// Path-regularity facts derived from the parameters at construction. The
// classifier consumes these; they are never re-derived per call.
struct PropertyFlags {
    bool creeps_down = false;        // can cross a level going down continuously
    bool zero_regular_down = false;  // 0 is regular for (-inf, 0)
    LongRun long_run = LongRun::Oscillates;
    bool is_neg_subordinator = false;  // -X is a subordinator
    bool has_neg_jumps = false;
    bool finite_neg_activity = false;  // negative jump measure is finite
    bool ladder_down_finite_mean = false;  // downward ladder height has finite mean
};

// Drifted compound Poisson process with exponential jumps on both sides.
// Upward jump sizes ~ Exp(1/mean_up) at intensity rate_up, downward jump
// magnitudes ~ Exp(1/mean_down) at intensity rate_down.
struct CompoundPoissonDriftParams {
    double drift = 0.0;
    double rate_up = 0.0;
    double mean_up = 1.0;
    double rate_down = 0.0;
    double mean_down = 1.0;
};

// Strictly stable process, index alpha in (0,2], negativity parameter
// rho_bar = P(X_1 < 0). Normalization: the characteristic exponent of the
// scale-1 process is |l|^alpha * exp(i pi alpha (rho_bar - 1/2) sgn l), and
// scale c multiplies the process. With this convention the Levy density is
//   Gamma(1+alpha)/pi * [sin(pi alpha rho) x^{-1-alpha} 1_{x>0}
//                        + sin(pi alpha rho_bar) |x|^{-1-alpha} 1_{x<0}] * c^alpha,
// rho = 1 - rho_bar; for rho_bar = 1, alpha < 1 the process is the negative
// of a subordinator with Laplace exponent (c l)^alpha. Index 1 is supported
// only in the symmetric case rho_bar = 1/2.
struct StableParams {
    double alpha = 0.5;
    double rho_bar = 0.5;
    double scale = 1.0;
};

// X = -S with S a stable subordinator, E exp(-l S_t) = exp(-t (scale*l)^alpha).
struct StableSubordinatorNegParams {
    double alpha = 0.5;
    double scale = 1.0;
};

// X = -S with S a Gamma subordinator, E exp(l X_1) = (1 + l/rate)^{-shape};
// the jump measure of S has density shape * x^{-1} exp(-rate x).
struct GammaSubordinatorNegParams {
    double shape = 1.0;
    double rate = 1.0;
};

// Brownian motion with drift plus the compound Poisson part above.
struct BrownianCompoundPoissonParams {
    double sigma = 1.0;
    double drift = 0.0;
    double rate_up = 0.0;
    double mean_up = 1.0;
    double rate_down = 0.0;
    double mean_down = 1.0;
};

using ModelParams = std::variant<CompoundPoissonDriftParams, StableParams,
                                 StableSubordinatorNegParams, GammaSubordinatorNegParams,
                                 BrownianCompoundPoissonParams>;

class LevyModel {
  public:
    Family family() const { return family_; }
    const PropertyFlags& flags() const { return flags_; }
    const ModelParams& params() const { return params_; }

    template <typename T>
    const T& params_as() const { return std::get<T>(params_); }

    // Tail of the negative jump measure: pi((-inf, -x]), x > 0.
    double tail_neg(double x) const;
    // Tail of the positive jump measure: pi([x, inf)), x > 0.
    double tail_pos(double x) const;
    // Antiderivative int_0^z tail_neg(u) du in closed form; defined whenever
    // tail_neg is integrable at 0 (all families here except stable index >= 1).
    double tail_neg_antiderivative(double z) const;

    // Laplace exponent phi of -X for models with -X a subordinator:
    // E exp(l X_t) = exp(-t phi(l)), l >= 0.
    double laplace_exponent(double lam) const;

    // Signed mean of jumps with magnitude below delta, int_{|x|<delta} x pi(dx).
    double small_jump_mean(double delta) const;
    // Second moment of jumps with magnitude below delta.
    double small_jump_second_moment(double delta) const;
    // Mean of jumps with magnitude at least delta (stable index > 1 only).
    double big_jump_mean(double delta) const;

    // Coefficient of the Brownian component (0 when there is none).
    double gaussian_sigma() const;
    // Deterministic drift coefficient of the finite-variation decomposition
    // (0 for pure-jump models without an explicit drift parameter).
    double linear_drift() const;

    // Mean of X_1 when it exists in [-inf, inf]; stable index > 1 gives 0,
    // subordinator families give their (possibly finite) negative mean.
    double mean() const;

    std::string describe() const;

  private:
    friend LevyModel make_model(ModelParams p);
    Family family_{};
    ModelParams params_{};
    PropertyFlags flags_{};
};

// Validates parameters and derives the property flags.
// Throws std::invalid_argument naming the offending parameter.
LevyModel make_model(ModelParams p);

// One downward jump magnitude for finite-activity families.
// Throws std::logic_error for infinite-activity families, whose individual
// jumps are only defined relative to a truncation level (see path_engine).
double sample_jump_neg(const LevyModel& model, Rng& rng);

// Draw from the scale-1 stable law with the normalization documented on
// StableParams. Requires alpha in (0,2], alpha*rho_bar <= 1 and
// alpha*(1-rho_bar) <= 1 (the pairs the exact simulation formula covers).
double sample_stable_standard(double alpha, double rho_bar, Rng& rng);

// Increment over time dt of the scale-1 stable process: dt^{1/alpha} times a
// standard draw.
double sample_stable_increment(double alpha, double rho_bar, double dt, Rng& rng);

// (alpha, scale) of -X when -X is a stable subordinator: covers the
// StableSubordinatorNeg family and Stable with alpha < 1, rho_bar = 1.
// Empty for every other model.
std::optional<std::pair<double, double>> stable_subordinator_view(const LevyModel& model);

}  // namespace reslevy
