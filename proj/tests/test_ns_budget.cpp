#include <doctest.h>

#include <cmath>

#include "cantordyn/errors.hpp"
#include "cantordyn/ns_budget.hpp"

using namespace cantordyn;

TEST_CASE("tau: endpoints and the closed-form value") {
    NSParams p{1.0, 10.0};
    CHECK(tau(0.0, p) == 0.0);
    CHECK(tau(std::log(2.0), p) == 5.0);
    CHECK(tau_sup(p) == 10.0);
    CHECK_THROWS_AS(tau(-1.0, p), ValidationError);
    CHECK_THROWS_AS(tau(1.0, NSParams{0.0, 1.0}), ValidationError);
}

TEST_CASE("tau is strictly increasing and bounded by its supremum") {
    NSParams p{0.7, 3.0};
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        double t = i * 0.1;
        double v = tau(t, p);
        CHECK(v > prev);
        CHECK(v < tau_sup(p));
        prev = v;
    }
}

TEST_CASE("amplitude and pressure coefficient") {
    NSParams p{2.0, 4.0};
    CHECK(amplitude(0.0, p) == 4.0);
    CHECK(pressure_coefficient(0.0, p) == -8.0);
    double t = std::log(2.0);
    CHECK(amplitude(t, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pressure_coefficient(t, p) == doctest::Approx(-0.5).epsilon(1e-15));
    // Decay identity; exact up to floating rounding in exp.
    for (double tt : {0.0, 0.3, 1.7, 9.0}) {
        double lhs = amplitude(tt, p) * std::exp(p.nu * tt);
        CHECK(lhs == doctest::Approx(p.m).epsilon(1e-14));
    }
}

TEST_CASE("the reparametrized clock runs at the decaying amplitude") {
    NSParams p{1.3, 2.5};
    const double h = 1e-6;
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        double dtau = (tau(t + h, p) - tau(t - h, p)) / (2 * h);
        double expect = amplitude(t, p);
        CHECK(std::abs(dtau - expect) / expect <= 1e-8);
    }
}

TEST_CASE("step budget is the strict count below the supremum") {
    CHECK(step_budget(NSParams{1.0, 10.0}, 1.0) == 9);
    CHECK(step_budget(NSParams{1.0, 10.0}, 11.0) == 0);
    CHECK(step_budget(NSParams{1.0, 10.0}, 3.0) == 3);
    CHECK(step_budget(NSParams{2.0, 1.0}, 1.0) == 0);
    CHECK_THROWS_AS(step_budget(NSParams{1.0, 1.0}, 0.0), ValidationError);
}

TEST_CASE("step budget monotonicity") {
    for (int i = 1; i <= 30; ++i) {
        double m = 0.5 * i;
        CHECK(step_budget(NSParams{1.0, m}, 0.3) <=
              step_budget(NSParams{1.0, m + 0.5}, 0.3));
        CHECK(step_budget(NSParams{0.2 + 0.1 * i, 5.0}, 0.3) >=
              step_budget(NSParams{0.2 + 0.1 * (i + 1), 5.0}, 0.3));
        CHECK(step_budget(NSParams{1.0, 5.0}, 0.1 * i) >=
              step_budget(NSParams{1.0, 5.0}, 0.1 * (i + 1)));
    }
}

TEST_CASE("minimal amplitude inverts the budget without attaining it") {
    MinAmplitude ma = min_amplitude(1.0, 1.0, 10);
    CHECK(ma.m == 10.0);
    CHECK_FALSE(ma.attaining);
    // At the infimum the n-th step still never completes.
    CHECK(step_budget(NSParams{1.0, ma.m}, 1.0) == 9);
    CHECK(step_budget(NSParams{1.0, std::nextafter(ma.m, 1e9)}, 1.0) == 10);
}
