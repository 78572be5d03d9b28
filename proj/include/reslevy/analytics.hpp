#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "reslevy/levy_model.hpp"

namespace reslevy {

enum class RenewalMethod { ClosedForm, LaplaceInversion, RenewalEquation };
const char* renewal_method_name(RenewalMethod m);

// U*(x) = expected time the ascending -X spends in [0, x]; for the
// negative-subordinator families this is the plain renewal function of -X.
struct RenewalTable {
    std::vector<double> grid;    // strictly increasing, > 0
    std::vector<double> values;  // nondecreasing
    RenewalMethod method = RenewalMethod::ClosedForm;
};

// Closed form for the stable families, Laplace-transform inversion on a
// fixed Talbot contour for the Gamma family. Non-monotone inversion output
// is reported as a numerical failure, never returned.
RenewalTable renewal_function(const LevyModel& model, const std::vector<double>& grid);

// Independent route: lower-triangular solve of the discretized identity
// int_0^x tail(x - y) dU(y) = 1 on a uniform n-point grid over (0, x_max].
// Exists so the transform inversion has an in-repo cross-check.
RenewalTable renewal_function_volterra(const LevyModel& model, double x_max, std::size_t n);

// Density u* of the renewal measure (closed form stable, Talbot for Gamma).
double renewal_density(const LevyModel& model, double z);

struct HinfResult {
    double sup_value = 0.0;
    double argmax = 0.0;        // location where the sup is attained or approached
    std::string argmax_region;  // "constant", "interior", "y->0", "y->inf"
};

// sup_{y>0} U*(y) * tail_neg(y), the quantity whose comparison with 1
// drives the subordinator absorption rule. Evaluated on a log grid over
// [1e-6, 1e6] at 200 points per decade, combined with the families'
// analytic endpoint limits.
HinfResult hinf_supremum(const LevyModel& model);

// The product U*(y) * tail_neg(y) at one point (for range studies).
double hinf_product(const LevyModel& model, double y);

// P(undershoot of -X over level x exceeds x) = U*(x) * tail_neg(x).
double overshoot_probability(const LevyModel& model, double x);

// Sign-bearing part of the mean log-ratio of consecutive resurrection
// positions for the stable family:
//   B(alpha, rho_bar) = pi*cot(pi*alpha*rho_bar) - (digamma(1) - digamma(alpha)).
// B < 0 means the position chain drifts to 0 (absorption), B > 0 means it
// drifts away. Requires 0 < alpha*rho_bar < 1; the endpoints are degenerate
// (no negative jumps / negative subordinator) and classified elsewhere.
double stable_mean_xi(double alpha, double rho_bar);

enum class Verdict { AbsorbedAS, Conservative, NotAbsorbedWProb1, Unknown, Boundary };
const char* verdict_name(Verdict v);

struct ClassificationVerdict {
    Verdict verdict = Verdict::Unknown;
    std::string rule;  // identifier of the rule that fired, "none" for Unknown
    std::map<std::string, double> evidence;
};

// Fixed-order decision rules, first match wins:
//   1. drifts to +infinity            -> NotAbsorbedWProb1
//   2. finite neg. activity, no creep -> Conservative
//   3. 0 irregular downward           -> Conservative
//   4. no negative jumps              -> AbsorbedAS
//   5. creeps down, finite-mean descending ladder -> AbsorbedAS
//   6. negative subordinator with sup U*(y) tail(y) < 1 -> AbsorbedAS
//   7. stable family: sign of stable_mean_xi (0 -> Conservative)
//   8. otherwise Unknown (evidence from attempted rules retained)
ClassificationVerdict classify(const LevyModel& model);

}  // namespace reslevy
