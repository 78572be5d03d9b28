#include <doctest.h>

#include <cmath>

#include "reslevy/integrate.hpp"
#include "reslevy/special_functions.hpp"
#include "reslevy/stats.hpp"

using namespace reslevy;

TEST_SUITE("special_functions") {

// Reference values computed independently at 30 digits and frozen here.
TEST_CASE("digamma at frozen points") {
    CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-12));
    CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-12));
    CHECK(digamma(2.0) == doctest::Approx(0.4227843350984671).epsilon(1e-12));
    CHECK(digamma(5.5) == doctest::Approx(1.6110931485817511).epsilon(1e-12));
    CHECK(digamma(0.1) == doctest::Approx(-10.423754940411077).epsilon(1e-12));
}

TEST_CASE("digamma recurrence holds across the working range") {
    for (double z : {0.05, 0.3, 0.7, 1.0, 1.9, 3.4, 7.0, 42.0}) {
        CHECK(digamma(z + 1.0) == doctest::Approx(digamma(z) + 1.0 / z).epsilon(1e-12));
    }
}

TEST_CASE("digamma reflection against pi*cot") {
    for (double z : {0.1, 0.25, 0.45, 0.8}) {
        const double lhs = digamma(1.0 - z) - digamma(z);
        const double rhs = M_PI / std::tan(M_PI * z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("digamma difference equals its integral form") {
    // psi(a) - psi(1) integrates (1 - t^{a-1})/(1 - t) over (0,1); the
    // integrand extends continuously to t = 1 but blows up like t^{a-1} at
    // t = 0 when a < 1, so that branch integrates in the variable u = t^a,
    // which bounds it.
    const auto f = [](double a, double t) {
        const double d = 1.0 - t;
        if (d < 1e-14) return 1.0 - a;  // limit at t -> 1
        return (1.0 - std::pow(t, a - 1.0)) / d;
    };
    for (double a : {0.5, 0.3, 1.7}) {
        double q = 0.0;
        if (a < 1.0) {
            q = integrate_finite(
                [&](double u) {
                    const double t = std::pow(u, 1.0 / a);
                    return f(a, t) * std::pow(u, 1.0 / a - 1.0) / a;
                },
                0.0, 1.0);
        } else {
            q = integrate_finite([&](double t) { return f(a, t); }, 0.0, 1.0);
        }
        CHECK(digamma(a) - digamma(1.0) == doctest::Approx(q).epsilon(1e-9));
    }
    // and the half-integer case reduces to 2 log 2
    CHECK(digamma(1.0) - digamma(0.5) == doctest::Approx(1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("exponential integral at frozen points") {
    CHECK(expint_e1(0.5) == doctest::Approx(0.5597735947761608).epsilon(1e-12));
    CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-12));
    CHECK(expint_e1(3.0) == doctest::Approx(0.013048381094197037).epsilon(1e-12));
}

TEST_CASE("exponential integral agrees with direct quadrature") {
    for (double x : {0.2, 1.0, 4.0}) {
        const double q =
            integrate_zero_inf([x](double u) { return std::exp(-x * (1.0 + u)) / (1.0 + u); });
        CHECK(expint_e1(x) == doctest::Approx(q).epsilon(1e-10));
    }
}

TEST_CASE("exponential integral inverse round-trips") {
    for (double x : {1e-3, 0.1, 1.0, 5.0, 20.0}) {
        CHECK(expint_e1_inverse(expint_e1(x)) == doctest::Approx(x).epsilon(1e-10));
    }
}

TEST_CASE("regularized lower gamma reduces to the exponential law at shape 1") {
    for (double x : {0.1, 1.0, 3.7}) {
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
    }
}

TEST_CASE("regularized lower gamma at a frozen non-integer point") {
    CHECK(reg_lower_gamma(2.5, 1.7) == doctest::Approx(0.3614300768962049).epsilon(1e-11));
}

TEST_CASE("gamma cdf matches density quadrature") {
    const double shape = 2.5, rate = 0.7, t = 3.1;
    const double q = integrate_finite(
        [&](double u) {
            return std::pow(rate, shape) * std::pow(u, shape - 1.0) * std::exp(-rate * u) /
                   std::tgamma(shape);
        },
        1e-12, t);
    CHECK(gamma_cdf(shape, rate, t) == doctest::Approx(q).epsilon(1e-8));
}

TEST_CASE("regularized incomplete beta basics") {
    for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    }
    // closed form for I_x(2,3): x^2 (6 - 8x + 3x^2)
    for (double x : {0.1, 0.4, 0.8}) {
        const double closed = x * x * (6.0 - 8.0 * x + 3.0 * x * x);
        CHECK(reg_inc_beta(2.0, 3.0, x) == doctest::Approx(closed).epsilon(1e-11));
    }
    CHECK(reg_inc_beta(2.0, 3.5, 0.3) == doctest::Approx(0.4117025023425648).epsilon(1e-11));
}

TEST_CASE("incomplete beta symmetry") {
    for (double x : {0.15, 0.5, 0.77}) {
        CHECK(reg_inc_beta(0.7, 1.9, x) ==
              doctest::Approx(1.0 - reg_inc_beta(1.9, 0.7, 1.0 - x)).epsilon(1e-11));
    }
}

TEST_CASE("arcsine distribution via beta cdf") {
    for (double t : {0.1, 0.5, 0.9}) {
        const double arcsine = 2.0 / M_PI * std::asin(std::sqrt(t));
        CHECK(beta_cdf(0.5, 0.5, t) == doctest::Approx(arcsine).epsilon(1e-10));
    }
}

TEST_CASE("normal cdf at frozen points") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
    CHECK(2.0 * normal_cdf(-1.0) == doctest::Approx(0.31731050786291415).epsilon(1e-12));
    CHECK(normal_cdf(1.0) + normal_cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("finite quadrature integrates a polynomial exactly enough") {
    const double q = integrate_finite([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
    CHECK(q == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("half-line quadrature reproduces gamma integrals") {
    const double q = integrate_zero_inf([](double x) { return x * x * std::exp(-x); });
    CHECK(q == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("ks helpers: one-sample statistic on the true cdf is small") {
    // 512 exact quantiles of Exp(1) give the minimal possible deviation 1/(2n).
    std::vector<double> xs;
    const std::size_t n = 512;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        xs.push_back(-std::log1p(-u));
    }
    const double d =
        ks_statistic_one_sample(xs, [](double z) { return -std::expm1(-z); });
    CHECK(d == doctest::Approx(0.5 / static_cast<double>(n)).epsilon(1e-6));
    CHECK_FALSE(ks_report_one_sample(xs, [](double z) { return -std::expm1(-z); }).rejected);
}

TEST_CASE("ks helpers: two-sample statistic separates shifted samples") {
    std::vector<double> a, b;
    for (int i = 0; i < 400; ++i) {
        const double u = (i + 0.5) / 400.0;
        a.push_back(u);
        b.push_back(u + 0.4);
    }
    const auto rep = ks_report_two_sample(a, b);
    CHECK(rep.rejected);
    CHECK(rep.statistic == doctest::Approx(0.4).epsilon(0.02));
    // identical samples sit at zero
    CHECK(ks_statistic_two_sample(a, a) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("summary matches hand-computed moments") {
    const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
    const Summary s = summarize(xs);
    CHECK(s.n == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(s.half_width_95() == doctest::Approx(1.959963984540054 * s.sd / 2.0));
}

}  // TEST_SUITE
