#include "reslevy/levy_model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "reslevy/special_functions.hpp"

namespace reslevy {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Levy density coefficients of the scale-1 stable law; the negative side has
// density c_minus |x|^{-1-alpha}.
double stable_coef_neg(double alpha, double rho_bar) {
    if (alpha >= 2.0) return 0.0;
    return std::tgamma(1.0 + alpha) * std::sin(kPi * alpha * rho_bar) / kPi;
}

double stable_coef_pos(double alpha, double rho_bar) {
    if (alpha >= 2.0) return 0.0;
    return std::tgamma(1.0 + alpha) * std::sin(kPi * alpha * (1.0 - rho_bar)) / kPi;
}

// The exact stable sampler (and hence tail evaluation in this normalization)
// covers alpha*rho_bar <= 1 and alpha*rho <= 1. make_model accepts any
// rho_bar in [0,1] because the analytic classifier treats (alpha, rho_bar)
// as formal parameters; sampling and tails enforce this stricter range.
bool stable_cms_admissible(double alpha, double rho_bar) {
    const double rho = 1.0 - rho_bar;
    return alpha * rho_bar <= 1.0 + 1e-12 && alpha * rho <= 1.0 + 1e-12;
}

void require_cms(const StableParams& p) {
    if (!stable_cms_admissible(p.alpha, p.rho_bar)) {
        throw std::logic_error(
            "stable: operation needs alpha*rho_bar <= 1 and alpha*(1-rho_bar) <= 1");
    }
}

double cp_mean(double drift, double rate_up, double mean_up, double rate_down,
               double mean_down) {
    return drift + rate_up * mean_up - rate_down * mean_down;
}

LongRun long_run_from_mean(double m) {
    if (m > 0.0) return LongRun::DriftsPlus;
    if (m < 0.0) return LongRun::DriftsMinus;
    return LongRun::Oscillates;
}

// int_0^d x * (1/m) exp(-x/m) dx * rate = rate * (m - exp(-d/m) (m + d))
double exp_small_mean(double rate, double m, double d) {
    if (rate == 0.0) return 0.0;
    return rate * (m - std::exp(-d / m) * (m + d));
}

double exp_small_second(double rate, double m, double d) {
    if (rate == 0.0) return 0.0;
    return rate * (2.0 * m * m - std::exp(-d / m) * (d * d + 2.0 * m * d + 2.0 * m * m));
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::CompoundPoissonDrift: return "compound_poisson_drift";
        case Family::Stable: return "stable";
        case Family::StableSubordinatorNeg: return "stable_subordinator_neg";
        case Family::GammaSubordinatorNeg: return "gamma_subordinator_neg";
        case Family::BrownianCompoundPoisson: return "brownian_compound_poisson";
    }
    return "unknown";
}

const char* long_run_name(LongRun lr) {
    switch (lr) {
        case LongRun::DriftsPlus: return "drifts_plus";
        case LongRun::DriftsMinus: return "drifts_minus";
        case LongRun::Oscillates: return "oscillates";
    }
    return "unknown";
}

LevyModel make_model(ModelParams p) {
    LevyModel m;
    m.params_ = p;
    PropertyFlags& fl = m.flags_;

    if (auto* cp = std::get_if<CompoundPoissonDriftParams>(&p)) {
        require(cp->rate_up >= 0.0, "compound_poisson_drift: rate_up must be >= 0");
        require(cp->rate_down >= 0.0, "compound_poisson_drift: rate_down must be >= 0");
        require(cp->rate_up == 0.0 || cp->mean_up > 0.0,
                "compound_poisson_drift: mean_up must be > 0");
        require(cp->rate_down == 0.0 || cp->mean_down > 0.0,
                "compound_poisson_drift: mean_down must be > 0");
        require(std::isfinite(cp->drift), "compound_poisson_drift: drift must be finite");
        m.family_ = Family::CompoundPoissonDrift;
        fl.creeps_down = cp->drift < 0.0;
        fl.zero_regular_down = cp->drift < 0.0;
        fl.long_run = long_run_from_mean(
            cp_mean(cp->drift, cp->rate_up, cp->mean_up, cp->rate_down, cp->mean_down));
        fl.has_neg_jumps = cp->rate_down > 0.0;
        fl.finite_neg_activity = true;
        fl.is_neg_subordinator = cp->drift <= 0.0 && cp->rate_up == 0.0;
        fl.ladder_down_finite_mean = true;  // drift part plus exponential jump tails
    } else if (auto* st = std::get_if<StableParams>(&p)) {
        require(st->alpha > 0.0 && st->alpha <= 2.0, "stable: alpha must be in (0, 2]");
        require(st->rho_bar >= 0.0 && st->rho_bar <= 1.0, "stable: rho_bar must be in [0, 1]");
        require(st->scale > 0.0, "stable: scale must be > 0");
        if (st->alpha == 1.0) {
            require(st->rho_bar == 0.5, "stable: index 1 supports only rho_bar = 1/2");
        }
        if (st->alpha == 2.0) {
            require(st->rho_bar == 0.5, "stable: index 2 forces rho_bar = 1/2");
        }
        if (st->alpha < 1.0) {
            // Automatic for rho_bar in [0,1]; kept as a guard for the contract.
            require(st->alpha * st->rho_bar <= 1.0 && st->alpha * (1.0 - st->rho_bar) <= 1.0,
                    "stable: alpha*rho_bar and alpha*(1-rho_bar) must be <= 1");
        }
        m.family_ = Family::Stable;
        const double a = st->alpha, rb = st->rho_bar;
        // downward creep: gaussian, or unbounded variation with no
        // negative jumps (passage below then happens continuously)
        fl.creeps_down = a == 2.0 || (a > 1.0 && rb == 0.0);
        fl.has_neg_jumps = a < 2.0 && rb > 0.0;
        fl.zero_regular_down = (a > 1.0) || (a * rb > 0.0 && a * rb < 1.0);
        if (a > 1.0) {
            fl.long_run = LongRun::Oscillates;
        } else if (rb == 0.0) {
            fl.long_run = LongRun::DriftsPlus;
        } else if (rb == 1.0) {
            fl.long_run = LongRun::DriftsMinus;
        } else {
            fl.long_run = LongRun::Oscillates;
        }
        fl.finite_neg_activity = !fl.has_neg_jumps;
        fl.is_neg_subordinator = a < 1.0 && rb == 1.0;
        // drift-only descending ladder in the creeping cases
        fl.ladder_down_finite_mean = fl.creeps_down;
    } else if (auto* ss = std::get_if<StableSubordinatorNegParams>(&p)) {
        require(ss->alpha > 0.0 && ss->alpha < 1.0,
                "stable_subordinator_neg: alpha must be in (0, 1)");
        require(ss->scale > 0.0, "stable_subordinator_neg: scale must be > 0");
        m.family_ = Family::StableSubordinatorNeg;
        fl.creeps_down = false;
        fl.zero_regular_down = true;  // infinite activity, immediately decreasing
        fl.long_run = LongRun::DriftsMinus;
        fl.has_neg_jumps = true;
        fl.finite_neg_activity = false;
        fl.is_neg_subordinator = true;
        fl.ladder_down_finite_mean = false;
    } else if (auto* gs = std::get_if<GammaSubordinatorNegParams>(&p)) {
        require(gs->shape > 0.0, "gamma_subordinator_neg: shape must be > 0");
        require(gs->rate > 0.0, "gamma_subordinator_neg: rate must be > 0");
        m.family_ = Family::GammaSubordinatorNeg;
        fl.creeps_down = false;
        fl.zero_regular_down = true;
        fl.long_run = LongRun::DriftsMinus;
        fl.has_neg_jumps = true;
        fl.finite_neg_activity = false;
        fl.is_neg_subordinator = true;
        fl.ladder_down_finite_mean = false;
    } else if (auto* bp = std::get_if<BrownianCompoundPoissonParams>(&p)) {
        require(bp->sigma >= 0.0, "brownian_compound_poisson: sigma must be >= 0");
        require(bp->rate_up >= 0.0, "brownian_compound_poisson: rate_up must be >= 0");
        require(bp->rate_down >= 0.0, "brownian_compound_poisson: rate_down must be >= 0");
        require(bp->rate_up == 0.0 || bp->mean_up > 0.0,
                "brownian_compound_poisson: mean_up must be > 0");
        require(bp->rate_down == 0.0 || bp->mean_down > 0.0,
                "brownian_compound_poisson: mean_down must be > 0");
        require(std::isfinite(bp->drift), "brownian_compound_poisson: drift must be finite");
        m.family_ = Family::BrownianCompoundPoisson;
        fl.creeps_down = bp->sigma > 0.0 || bp->drift < 0.0;
        fl.zero_regular_down = bp->sigma > 0.0 || bp->drift < 0.0;
        fl.long_run = long_run_from_mean(
            cp_mean(bp->drift, bp->rate_up, bp->mean_up, bp->rate_down, bp->mean_down));
        fl.has_neg_jumps = bp->rate_down > 0.0;
        fl.finite_neg_activity = true;
        fl.is_neg_subordinator = bp->sigma == 0.0 && bp->drift <= 0.0 && bp->rate_up == 0.0;
        fl.ladder_down_finite_mean = true;
    }
    return m;
}

double LevyModel::tail_neg(double x) const {
    if (!(x > 0.0)) throw std::domain_error("tail_neg: requires x > 0");
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            return p.rate_down == 0.0 ? 0.0 : p.rate_down * std::exp(-x / p.mean_down);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            return p.rate_down == 0.0 ? 0.0 : p.rate_down * std::exp(-x / p.mean_down);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha == 2.0) return 0.0;
            require_cms(p);
            const double c = stable_coef_neg(p.alpha, p.rho_bar);
            return c / p.alpha * std::pow(p.scale, p.alpha) * std::pow(x, -p.alpha);
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            return std::pow(p.scale, p.alpha) * std::pow(x, -p.alpha) /
                   std::tgamma(1.0 - p.alpha);
        }
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            return p.shape * expint_e1(p.rate * x);
        }
    }
    throw std::logic_error("tail_neg: unhandled family");
}

double LevyModel::tail_pos(double x) const {
    if (!(x > 0.0)) throw std::domain_error("tail_pos: requires x > 0");
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            return p.rate_up == 0.0 ? 0.0 : p.rate_up * std::exp(-x / p.mean_up);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            return p.rate_up == 0.0 ? 0.0 : p.rate_up * std::exp(-x / p.mean_up);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha == 2.0) return 0.0;
            require_cms(p);
            const double c = stable_coef_pos(p.alpha, p.rho_bar);
            return c / p.alpha * std::pow(p.scale, p.alpha) * std::pow(x, -p.alpha);
        }
        case Family::StableSubordinatorNeg:
        case Family::GammaSubordinatorNeg:
            return 0.0;
    }
    throw std::logic_error("tail_pos: unhandled family");
}

double LevyModel::tail_neg_antiderivative(double z) const {
    if (z < 0.0) throw std::domain_error("tail_neg_antiderivative: requires z >= 0");
    if (z == 0.0) return 0.0;
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            if (p.rate_down == 0.0) return 0.0;
            return p.rate_down * p.mean_down * (1.0 - std::exp(-z / p.mean_down));
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            if (p.rate_down == 0.0) return 0.0;
            return p.rate_down * p.mean_down * (1.0 - std::exp(-z / p.mean_down));
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha == 2.0) return 0.0;
            if (p.alpha >= 1.0) {
                throw std::logic_error(
                    "tail_neg_antiderivative: diverges at 0 for stable index >= 1");
            }
            require_cms(p);
            const double c = stable_coef_neg(p.alpha, p.rho_bar);
            return c / p.alpha * std::pow(p.scale, p.alpha) * std::pow(z, 1.0 - p.alpha) /
                   (1.0 - p.alpha);
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            return std::pow(p.scale, p.alpha) * std::pow(z, 1.0 - p.alpha) /
                   ((1.0 - p.alpha) * std::tgamma(1.0 - p.alpha));
        }
        case Family::GammaSubordinatorNeg: {
            // int_0^z E1(b u) du = z E1(b z) + (1 - exp(-b z))/b
            const auto& p = params_as<GammaSubordinatorNegParams>();
            return p.shape * (z * expint_e1(p.rate * z) + -std::expm1(-p.rate * z) / p.rate);
        }
    }
    throw std::logic_error("tail_neg_antiderivative: unhandled family");
}

double LevyModel::laplace_exponent(double lam) const {
    if (lam < 0.0) throw std::domain_error("laplace_exponent: requires lam >= 0");
    if (!flags_.is_neg_subordinator) {
        throw std::logic_error("laplace_exponent: defined only when -X is a subordinator");
    }
    switch (family_) {
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            return std::pow(p.scale * lam, p.alpha);
        }
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            return p.shape * std::log1p(lam / p.rate);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            return std::pow(p.scale * lam, p.alpha);
        }
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            const double d = -p.drift;  // drift <= 0 here
            const double jump_part =
                p.rate_down == 0.0 ? 0.0
                                   : p.rate_down * p.mean_down * lam / (1.0 + p.mean_down * lam);
            return d * lam + jump_part;
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            const double d = -p.drift;
            const double jump_part =
                p.rate_down == 0.0 ? 0.0
                                   : p.rate_down * p.mean_down * lam / (1.0 + p.mean_down * lam);
            return d * lam + jump_part;
        }
    }
    throw std::logic_error("laplace_exponent: unhandled family");
}

double LevyModel::small_jump_mean(double delta) const {
    if (delta < 0.0) throw std::domain_error("small_jump_mean: requires delta >= 0");
    if (delta == 0.0) return 0.0;
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            return exp_small_mean(p.rate_up, p.mean_up, delta) -
                   exp_small_mean(p.rate_down, p.mean_down, delta);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            return exp_small_mean(p.rate_up, p.mean_up, delta) -
                   exp_small_mean(p.rate_down, p.mean_down, delta);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha == 2.0) return 0.0;
            require_cms(p);
            if (p.alpha >= 1.0) {
                const double cp = stable_coef_pos(p.alpha, p.rho_bar);
                const double cm = stable_coef_neg(p.alpha, p.rho_bar);
                if (cp != cm) {
                    throw std::logic_error(
                        "small_jump_mean: diverges for asymmetric stable index >= 1");
                }
                return 0.0;
            }
            const double c = stable_coef_pos(p.alpha, p.rho_bar) -
                             stable_coef_neg(p.alpha, p.rho_bar);
            return c * std::pow(p.scale, p.alpha) * std::pow(delta, 1.0 - p.alpha) /
                   (1.0 - p.alpha);
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            return -std::pow(p.scale, p.alpha) * p.alpha * std::pow(delta, 1.0 - p.alpha) /
                   ((1.0 - p.alpha) * std::tgamma(1.0 - p.alpha));
        }
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            return -p.shape * -std::expm1(-p.rate * delta) / p.rate;
        }
    }
    throw std::logic_error("small_jump_mean: unhandled family");
}

double LevyModel::small_jump_second_moment(double delta) const {
    if (delta < 0.0) throw std::domain_error("small_jump_second_moment: requires delta >= 0");
    if (delta == 0.0) return 0.0;
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            return exp_small_second(p.rate_up, p.mean_up, delta) +
                   exp_small_second(p.rate_down, p.mean_down, delta);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            return exp_small_second(p.rate_up, p.mean_up, delta) +
                   exp_small_second(p.rate_down, p.mean_down, delta);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha == 2.0) return 0.0;
            require_cms(p);
            const double c = stable_coef_pos(p.alpha, p.rho_bar) +
                             stable_coef_neg(p.alpha, p.rho_bar);
            return c * std::pow(p.scale, p.alpha) * std::pow(delta, 2.0 - p.alpha) /
                   (2.0 - p.alpha);
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            return std::pow(p.scale, p.alpha) * p.alpha * std::pow(delta, 2.0 - p.alpha) /
                   ((2.0 - p.alpha) * std::tgamma(1.0 - p.alpha));
        }
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            const double bd = p.rate * delta;
            return p.shape * (1.0 - std::exp(-bd) * (1.0 + bd)) / (p.rate * p.rate);
        }
    }
    throw std::logic_error("small_jump_second_moment: unhandled family");
}

double LevyModel::big_jump_mean(double delta) const {
    if (!(delta > 0.0)) throw std::domain_error("big_jump_mean: requires delta > 0");
    if (family_ != Family::Stable) {
        throw std::logic_error("big_jump_mean: implemented for the stable family only");
    }
    const auto& p = params_as<StableParams>();
    if (p.alpha <= 1.0 || p.alpha == 2.0) {
        throw std::logic_error("big_jump_mean: needs stable index in (1, 2)");
    }
    require_cms(p);
    const double c = stable_coef_pos(p.alpha, p.rho_bar) - stable_coef_neg(p.alpha, p.rho_bar);
    return c * std::pow(p.scale, p.alpha) * std::pow(delta, 1.0 - p.alpha) / (p.alpha - 1.0);
}

double LevyModel::gaussian_sigma() const {
    switch (family_) {
        case Family::BrownianCompoundPoisson:
            return params_as<BrownianCompoundPoissonParams>().sigma;
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            // Index 2 is Gaussian with variance 2 scale^2 per unit time.
            return p.alpha == 2.0 ? p.scale * std::sqrt(2.0) : 0.0;
        }
        default:
            return 0.0;
    }
}

double LevyModel::linear_drift() const {
    switch (family_) {
        case Family::CompoundPoissonDrift:
            return params_as<CompoundPoissonDriftParams>().drift;
        case Family::BrownianCompoundPoisson:
            return params_as<BrownianCompoundPoissonParams>().drift;
        default:
            return 0.0;
    }
}

double LevyModel::mean() const {
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            return cp_mean(p.drift, p.rate_up, p.mean_up, p.rate_down, p.mean_down);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            return cp_mean(p.drift, p.rate_up, p.mean_up, p.rate_down, p.mean_down);
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            if (p.alpha > 1.0) return 0.0;
            throw std::logic_error("mean: undefined for stable index <= 1");
        }
        case Family::StableSubordinatorNeg:
            return -std::numeric_limits<double>::infinity();
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            return -p.shape / p.rate;
        }
    }
    throw std::logic_error("mean: unhandled family");
}

std::string LevyModel::describe() const {
    std::ostringstream os;
    os << family_name(family_) << "(";
    switch (family_) {
        case Family::CompoundPoissonDrift: {
            const auto& p = params_as<CompoundPoissonDriftParams>();
            os << "drift=" << p.drift << ", rate_up=" << p.rate_up << ", mean_up=" << p.mean_up
               << ", rate_down=" << p.rate_down << ", mean_down=" << p.mean_down;
            break;
        }
        case Family::Stable: {
            const auto& p = params_as<StableParams>();
            os << "alpha=" << p.alpha << ", rho_bar=" << p.rho_bar << ", scale=" << p.scale;
            break;
        }
        case Family::StableSubordinatorNeg: {
            const auto& p = params_as<StableSubordinatorNegParams>();
            os << "alpha=" << p.alpha << ", scale=" << p.scale;
            break;
        }
        case Family::GammaSubordinatorNeg: {
            const auto& p = params_as<GammaSubordinatorNegParams>();
            os << "shape=" << p.shape << ", rate=" << p.rate;
            break;
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = params_as<BrownianCompoundPoissonParams>();
            os << "sigma=" << p.sigma << ", drift=" << p.drift << ", rate_up=" << p.rate_up
               << ", mean_up=" << p.mean_up << ", rate_down=" << p.rate_down
               << ", mean_down=" << p.mean_down;
            break;
        }
    }
    os << ")";
    return os.str();
}

double sample_jump_neg(const LevyModel& model, Rng& rng) {
    switch (model.family()) {
        case Family::CompoundPoissonDrift: {
            const auto& p = model.params_as<CompoundPoissonDriftParams>();
            if (p.rate_down == 0.0) throw std::logic_error("sample_jump_neg: no negative jumps");
            return std::exponential_distribution<double>(1.0 / p.mean_down)(rng);
        }
        case Family::BrownianCompoundPoisson: {
            const auto& p = model.params_as<BrownianCompoundPoissonParams>();
            if (p.rate_down == 0.0) throw std::logic_error("sample_jump_neg: no negative jumps");
            return std::exponential_distribution<double>(1.0 / p.mean_down)(rng);
        }
        default:
            throw std::logic_error(
                "sample_jump_neg: individual jumps of an infinite-activity model are only "
                "defined above a truncation level");
    }
}

double sample_stable_standard(double alpha, double rho_bar, Rng& rng) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("sample_stable_standard: alpha must be in (0, 2]");
    }
    if (!(rho_bar >= 0.0 && rho_bar <= 1.0)) {
        throw std::invalid_argument("sample_stable_standard: rho_bar must be in [0, 1]");
    }
    if (!stable_cms_admissible(alpha, rho_bar)) {
        throw std::logic_error(
            "sample_stable_standard: needs alpha*rho_bar <= 1 and alpha*(1-rho_bar) <= 1");
    }
    const double rho = 1.0 - rho_bar;
    // Exact simulation in the chosen normalization:
    //   X = sin(alpha(V + B)) / cos(V)^{1/alpha}
    //       * (cos(V - alpha(V + B)) / W)^{(1-alpha)/alpha},
    // V uniform on (-pi/2, pi/2), W standard exponential, B = pi (rho - 1/2).
    const double B = kPi * (rho - 0.5);
    std::uniform_real_distribution<double> unif(-0.5 * kPi, 0.5 * kPi);
    std::exponential_distribution<double> expo(1.0);
    const double V = unif(rng);
    double W = expo(rng);
    if (W < 1e-300) W = 1e-300;
    const double a_vb = alpha * (V + B);
    const double s = std::sin(a_vb) / std::pow(std::cos(V), 1.0 / alpha);
    if (alpha == 1.0) return s;  // symmetric Cauchy: exponent (1-alpha)/alpha = 0
    const double c = std::cos(V - a_vb);
    return s * std::pow(c / W, (1.0 - alpha) / alpha);
}

double sample_stable_increment(double alpha, double rho_bar, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw std::domain_error("sample_stable_increment: requires dt > 0");
    return std::pow(dt, 1.0 / alpha) * sample_stable_standard(alpha, rho_bar, rng);
}

std::optional<std::pair<double, double>> stable_subordinator_view(const LevyModel& model) {
    if (model.family() == Family::StableSubordinatorNeg) {
        const auto& p = model.params_as<StableSubordinatorNegParams>();
        return std::make_pair(p.alpha, p.scale);
    }
    if (model.family() == Family::Stable && model.flags().is_neg_subordinator) {
        const auto& p = model.params_as<StableParams>();
        return std::make_pair(p.alpha, p.scale);
    }
    return std::nullopt;
}

}  // namespace reslevy
