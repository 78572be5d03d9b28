#include <doctest.h>

#include <cmath>
#include <vector>

#include "reslevy/analytics.hpp"
#include "reslevy/integrate.hpp"
#include "reslevy/levy_model.hpp"
#include "reslevy/path_engine.hpp"
#include "reslevy/rng.hpp"
#include "reslevy/special_functions.hpp"
#include "reslevy/stats.hpp"

using namespace reslevy;

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        g[i] = lo * std::pow(hi / lo, t);
    }
    return g;
}

}  // namespace

TEST_SUITE("analytics") {

TEST_CASE("renewal function closed form for the stable subordinator") {
    const LevyModel ss = make_model(StableSubordinatorNegParams{0.5, 1.0});
    const auto grid = log_grid(1e-6, 10.0, 40);
    const RenewalTable tab = renewal_function(ss, grid);
    REQUIRE(tab.values.size() == grid.size());
    // U*(x) = x^alpha / Gamma(1 + alpha); frozen: U*(1) = 2/sqrt(pi)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double expect = std::pow(grid[i], 0.5) / std::tgamma(1.5);
        CHECK(tab.values[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    const RenewalTable one = renewal_function(ss, {1.0});
    CHECK(one.values[0] == doctest::Approx(1.1283791670955126).epsilon(1e-12));
    // no atom at zero: the value at 1e-6 is exactly self-similar, 1e-3 U*(1)
    const RenewalTable tiny = renewal_function(ss, {1e-6});
    CHECK(tiny.values[0] ==
          doctest::Approx(1e-3 * one.values[0]).epsilon(1e-10));
    CHECK(tiny.values[0] < 1.2e-3);
}

TEST_CASE("renewal functions vanish at zero, each at its own speed") {
    // power-law vanishing for the stable family
    const LevyModel fast = make_model(StableSubordinatorNegParams{0.9, 1.0});
    CHECK(renewal_function(fast, {1e-6}).values[0] <= 1e-3);
    // logarithmic vanishing for the gamma family: slow but monotone to 0
    const LevyModel gs = make_model(GammaSubordinatorNegParams{1.0, 1.0});
    const RenewalTable g = renewal_function(gs, {1e-8, 1e-6, 1e-3, 1e-1});
    CHECK(g.values[0] < g.values[1]);
    CHECK(g.values[1] < g.values[2]);
    CHECK(g.values[2] < g.values[3]);
    CHECK(g.values[0] < 0.1);
}

TEST_CASE("renewal function is nondecreasing and subadditive") {
    const std::vector<LevyModel> models = {
        make_model(StableSubordinatorNegParams{0.7, 1.0}),
        make_model(GammaSubordinatorNegParams{1.0, 1.0})};
    for (const auto& m : models) {
        const auto grid = log_grid(1e-3, 20.0, 30);
        const RenewalTable tab = renewal_function(m, grid);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(tab.values[i] >= tab.values[i - 1]);
        }
        // subadditivity at a few pairs
        const auto u = [&](double x) { return renewal_function(m, {x}).values[0]; };
        for (auto [x, y] :
             std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.0, 2.0}, {0.1, 3.0}}) {
            CHECK(u(x + y) <= u(x) + u(y) + 1e-9);
        }
    }
}

TEST_CASE("gamma renewal density at frozen transform-inversion points") {
    // reference values from an independent 30-digit inversion of 1/log(1+s)
    const LevyModel gs = make_model(GammaSubordinatorNegParams{1.0, 1.0});
    CHECK(renewal_density(gs, 0.5) == doctest::Approx(1.1091030263630443).epsilon(1e-6));
    CHECK(renewal_density(gs, 1.0) == doctest::Approx(1.0329209475752571).epsilon(1e-6));
    CHECK(renewal_density(gs, 2.0) == doctest::Approx(1.0056557399686737).epsilon(1e-6));
}

TEST_CASE("stable renewal density integrates back to the renewal function") {
    const LevyModel ss = make_model(StableSubordinatorNegParams{0.6, 1.3});
    for (double x : {0.3, 1.0, 4.0}) {
        // substitute z = w^4 to keep the z^{alpha-1} endpoint bounded
        const double q = integrate_finite(
            [&](double w) {
                const double z = w * w * w * w;
                return renewal_density(ss, z) * 4.0 * w * w * w;
            },
            1e-12, std::pow(x, 0.25));
        CHECK(renewal_function(ss, {x}).values[0] == doctest::Approx(q).epsilon(1e-8));
    }
}

TEST_CASE("volterra route agrees with the closed form") {
    const LevyModel ss = make_model(StableSubordinatorNegParams{0.5, 1.0});
    const RenewalTable v = renewal_function_volterra(ss, 4.0, 4000);
    const RenewalTable c = renewal_function(ss, v.grid);
    for (std::size_t i = v.grid.size() / 2; i < v.grid.size(); i += 100) {
        CHECK(v.values[i] == doctest::Approx(c.values[i]).epsilon(2e-2));
    }
    CHECK(v.values.back() == doctest::Approx(c.values.back()).epsilon(5e-3));
}

TEST_CASE("volterra route agrees with the transform inversion for gamma") {
    const LevyModel gs = make_model(GammaSubordinatorNegParams{1.0, 1.0});
    const RenewalTable v = renewal_function_volterra(gs, 4.0, 2000);
    const RenewalTable t = renewal_function(gs, {1.0, 2.0, 4.0});
    const auto at = [&](double x) {
        const std::size_t i =
            static_cast<std::size_t>(std::llround(x / 4.0 * 2000.0)) - 1;
        return v.values[i];
    };
    CHECK(at(1.0) == doctest::Approx(t.values[0]).epsilon(2e-2));
    CHECK(at(2.0) == doctest::Approx(t.values[1]).epsilon(2e-2));
    CHECK(at(4.0) == doctest::Approx(t.values[2]).epsilon(2e-2));
}

TEST_CASE("laplace transform of the renewal measure inverts the exponent") {
    // int_0^inf exp(-l x) dU(x) = 1/phi(l). The gamma measure piles up mass
    // logarithmically near 0 (density ~ 1/(x log^2 x)), out of reach of plain
    // quadrature, so the first chunk enters through the function value U(x0)
    // where exp(-l x) is 1 to within l*x0.
    const LevyModel gs = make_model(GammaSubordinatorNegParams{1.0, 1.0});
    const double x0 = 1e-8, xmax = 60.0;
    const double head = renewal_function(gs, {x0}).values[0];
    for (double lam : {0.5, 2.0}) {
        const double body = integrate_finite(
            [&](double x) { return std::exp(-lam * x) * renewal_density(gs, x); }, x0, xmax);
        CHECK(head + body ==
              doctest::Approx(1.0 / gs.laplace_exponent(lam)).epsilon(1e-4));
    }
    const LevyModel ss = make_model(StableSubordinatorNegParams{0.5, 1.0});
    for (double lam : {0.5, 2.0}) {
        const double q = integrate_zero_inf(
            [&](double x) { return std::exp(-lam * x) * renewal_density(ss, x); }, 1e-9, 9);
        CHECK(q == doctest::Approx(std::pow(lam, -0.5)).epsilon(1e-6));
    }
}

TEST_CASE("renewal-tail product for stable subordinators is flat") {
    // U*(y) tail(y) == sin(pi a)/(pi a) for every y; frozen at two indices
    const LevyModel a = make_model(StableSubordinatorNegParams{0.5, 1.0});
    const HinfResult ha = hinf_supremum(a);
    CHECK(ha.sup_value == doctest::Approx(0.6366197723675814).epsilon(1e-9));
    CHECK(ha.argmax_region == "constant");
    for (double y : {1e-4, 0.1, 1.0, 100.0}) {
        CHECK(hinf_product(a, y) == doctest::Approx(0.6366197723675814).epsilon(1e-9));
    }

    const LevyModel b = make_model(StableSubordinatorNegParams{0.9, 2.0});
    CHECK(hinf_supremum(b).sup_value ==
          doctest::Approx(0.10929240478705177).epsilon(1e-9));
}

TEST_CASE("renewal-tail product for the gamma subordinator peaks at zero") {
    const LevyModel gs = make_model(GammaSubordinatorNegParams{1.0, 1.0});
    const HinfResult h = hinf_supremum(gs);
    CHECK(h.sup_value >= 0.99);
    CHECK(h.sup_value <= 1.0);
    CHECK(h.argmax_region == "y->0");
    for (double y : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(hinf_product(gs, y) < 0.95);
    }
    // heavier shape keeps the zero limit but distinct interior values
    const LevyModel g2 = make_model(GammaSubordinatorNegParams{2.0, 1.0});
    const HinfResult h2 = hinf_supremum(g2);
    CHECK(h2.sup_value >= 0.99);
}

TEST_CASE("overshoot probability equals the flat product and bounds the sampled law") {
    const LevyModel ss = make_model(StableSubordinatorNegParams{0.5, 1.0});
    for (double x : {0.5, 1.0, 3.0}) {
        CHECK(overshoot_probability(ss, x) ==
              doctest::Approx(0.6366197723675814).epsilon(1e-9));
    }
    CHECK_THROWS_AS(overshoot_probability(ss, 0.0), std::domain_error);

    // sampled overshoot of the level: P(-post > x) for passages from x; the
    // arcsine law puts it at 1/2 for alpha = 1/2, below the product bound
    PassageParams pp;
    pp.x0 = 1.0;
    pp.truncation_delta = 1e-5;
    Rng rng(41);
    int big = 0, n = 0;
    for (int i = 0; i < 3000; ++i) {
        const FirstPassage fp = first_passage_below(ss, pp, rng);
        if (!fp.hit || fp.crept) continue;
        ++n;
        if (-fp.post > 1.0) ++big;
    }
    const double freq = static_cast<double>(big) / n;
    const double se = std::sqrt(0.25 / n);
    CHECK(std::abs(freq - 0.5) < 3.5 * se);
    CHECK(freq < overshoot_probability(ss, 1.0) + 3.5 * se);
}

TEST_CASE("mean log-ratio criterion at frozen points") {
    CHECK(stable_mean_xi(1.5, 0.5) == doctest::Approx(-2.527887014709684).epsilon(1e-12));
    CHECK(stable_mean_xi(0.5, 0.5) == doctest::Approx(1.7552982924699026).epsilon(1e-12));
    CHECK(stable_mean_xi(0.5, 0.75) == doctest::Approx(-0.08500407655131761).epsilon(1e-9));
    CHECK_THROWS_AS(stable_mean_xi(2.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(stable_mean_xi(1.5, 1.1), std::domain_error);
    CHECK_THROWS_AS(stable_mean_xi(2.0, 0.5), std::domain_error);  // alpha*rho_bar = 1
    CHECK_THROWS_AS(stable_mean_xi(0.5, 0.0), std::domain_error);  // no negative jumps
}

TEST_CASE("classification fixed rule order") {
    // upward drift wins before anything else
    const auto up = classify(make_model(CompoundPoissonDriftParams{1.0, 0.0, 1.0, 0.5, 1.0}));
    CHECK(up.verdict == Verdict::NotAbsorbedWProb1);
    CHECK(up.rule == "drifts-to-plus-infinity");

    // oscillating finite-activity pure-jump: conservative
    const auto cp =
        classify(make_model(CompoundPoissonDriftParams{0.0, 0.5, 1.0, 0.5, 1.0}));
    CHECK(cp.verdict == Verdict::Conservative);
    CHECK(cp.rule == "finite-negative-activity-no-creep");
    CHECK(cp.evidence.at("neg_jump_rate") == doctest::Approx(0.5));

    // pure brownian reaches zero continuously; with no jumps at all the
    // no-negative-jumps rule answers before the creep rule is consulted
    const auto bm =
        classify(make_model(BrownianCompoundPoissonParams{1.0, 0.0, 0.0, 1.0, 0.0, 1.0}));
    CHECK(bm.verdict == Verdict::AbsorbedAS);
    CHECK(bm.rule == "no-negative-jumps");

    // jump diffusion oscillating with negative jumps: the creep rule decides
    const auto jd =
        classify(make_model(BrownianCompoundPoissonParams{1.0, 0.0, 0.5, 1.0, 0.5, 1.0}));
    CHECK(jd.verdict == Verdict::AbsorbedAS);
    CHECK(jd.rule == "creeps-downward");

    // spectrally positive stable with unbounded variation crosses levels
    // continuously; absorption via the jump-free route
    const auto sp = classify(make_model(StableParams{1.5, 0.0, 1.0}));
    CHECK(sp.verdict == Verdict::AbsorbedAS);
    CHECK(sp.rule == "no-negative-jumps");

    // stable subordinator: flat product below one
    const auto ss = classify(make_model(StableSubordinatorNegParams{0.5, 1.0}));
    CHECK(ss.verdict == Verdict::AbsorbedAS);
    CHECK(ss.rule == "renewal-tail-product");
    CHECK(ss.evidence.at("hinf_sup") == doctest::Approx(0.6366197723675814).epsilon(1e-9));

    // gamma subordinator: product reaches one at zero, criterion silent
    const auto gs = classify(make_model(GammaSubordinatorNegParams{1.0, 1.0}));
    CHECK(gs.verdict == Verdict::Unknown);
    CHECK(gs.rule == "none");

    // two-sided stable, criterion negative / positive
    const auto sa = classify(make_model(StableParams{1.5, 0.5, 1.0}));
    CHECK(sa.verdict == Verdict::AbsorbedAS);
    CHECK(sa.rule == "stable-criterion");
    CHECK(sa.evidence.at("mean_xi") == doctest::Approx(-2.527887014709684).epsilon(1e-9));

    const auto sc = classify(make_model(StableParams{0.5, 0.5, 1.0}));
    CHECK(sc.verdict == Verdict::Conservative);
    CHECK(sc.evidence.at("mean_xi") == doctest::Approx(1.7552982924699026).epsilon(1e-9));

    // the product-above-one corner routes through the same rule with the
    // degenerate criterion value
    const auto sd = classify(make_model(StableParams{1.5, 0.75, 1.0}));
    CHECK(sd.verdict == Verdict::AbsorbedAS);
    CHECK(sd.rule == "stable-criterion");
    CHECK(sd.evidence.at("mean_xi") == -std::numeric_limits<double>::infinity());
}

TEST_CASE("classification scale invariance for the stable families") {
    for (double scale : {0.3, 1.0, 7.0}) {
        CHECK(classify(make_model(StableParams{1.5, 0.5, scale})).verdict ==
              Verdict::AbsorbedAS);
        CHECK(classify(make_model(StableParams{0.5, 0.5, scale})).verdict ==
              Verdict::Conservative);
        CHECK(classify(make_model(StableSubordinatorNegParams{0.5, scale})).verdict ==
              Verdict::AbsorbedAS);
    }
}

TEST_CASE("classifier verdict names are stable") {
    CHECK(std::string(verdict_name(Verdict::AbsorbedAS)) == "AbsorbedAS");
    CHECK(std::string(verdict_name(Verdict::Conservative)) == "Conservative");
    CHECK(std::string(verdict_name(Verdict::NotAbsorbedWProb1)) == "NotAbsorbedWProb1");
    CHECK(std::string(verdict_name(Verdict::Unknown)) == "Unknown");
}

TEST_CASE("region agreement between the sign criterion and the flat product") {
    // on the common corner rho_bar = 1, alpha < 1 the two routes must agree:
    // B -> -inf side is absorbed and hinf = sin(pi a)/(pi a) < 1 is absorbed
    for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
        const auto via_stable = classify(make_model(StableParams{alpha, 1.0, 1.0}));
        const auto via_sub = classify(make_model(StableSubordinatorNegParams{alpha, 1.0}));
        CHECK(via_stable.verdict == Verdict::AbsorbedAS);
        CHECK(via_sub.verdict == Verdict::AbsorbedAS);
        CHECK(via_stable.rule == via_sub.rule);
    }
}

}  // TEST_SUITE
