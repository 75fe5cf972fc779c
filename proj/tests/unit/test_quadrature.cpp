#include <doctest.h>

#include <cmath>

#include "qlink/constants.hpp"
#include "qlink/quadrature.hpp"

using namespace qlink;

TEST_CASE("known integrals at default tolerance") {
    const auto r1 = integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0);
    CHECK(r1.value == doctest::Approx(9.0).epsilon(1e-10));

    const auto r2 = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(r2.value == doctest::Approx(std::sqrt(constants::pi)).epsilon(1e-9));

    // Needle: Gaussian of width 1e-3 at the centre of a wide interval.
    const auto r3 = integrate_adaptive(
        [](double x) { return std::exp(-x * x / (2e-6)) / std::sqrt(2e-6 * constants::pi); },
        -5.0, 5.0);
    CHECK(r3.value == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("integrand spanning many decades in log space") {
    // integral of E^-1.32 dE from 2 to 511 via ln E substitution.
    const auto r = integrate_adaptive(
        [](double ln_e) {
            const double e = std::exp(ln_e);
            return std::pow(e, -1.32) * e;
        },
        std::log(2.0), std::log(511.0));
    const double exact = (std::pow(511.0, -0.32) - std::pow(2.0, -0.32)) / -0.32;
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("budget exhaustion raises convergence_error with the achieved estimate") {
    QuadratureSpec tight;
    tight.relative_tolerance = 1e-14;
    tight.max_evaluations = 200;
    try {
        integrate_adaptive([](double x) { return 1.0 / (1e-8 + x * x); }, -1.0, 1.0, tight);
        FAIL("expected convergence_error");
    } catch (const convergence_error& e) {
        CHECK(e.achieved_relative_error > 0.0);
        CHECK(e.evaluations <= 200);
    }
}

TEST_CASE("halving the tolerance moves the result by less than the coarser tolerance") {
    const auto f = [](double x) { return std::sin(x) * std::exp(-0.3 * x); };
    QuadratureSpec coarse;
    coarse.relative_tolerance = 1e-4;
    QuadratureSpec fine;
    fine.relative_tolerance = 5e-5;
    const auto a = integrate_adaptive(f, 0.0, 20.0, coarse);
    const auto b = integrate_adaptive(f, 0.0, 20.0, fine);
    CHECK(std::abs(a.value - b.value) <= coarse.relative_tolerance * std::abs(a.value));
}
