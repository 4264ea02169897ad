#include "doctest.h"

#include "fermieos/errors.hpp"
#include "fermieos/quadrature.hpp"

#include <cmath>

using namespace fermieos;

TEST_CASE("adaptive panels reproduce closed forms") {
    auto r = quad::integrate([](double t) { return std::exp(-t); }, 0.0, 60.0, 1e-13);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));

    // sqrt weight against Gamma(3/2)
    auto g = quad::integrate([](double t) { return std::sqrt(t) * std::exp(-t); }, 0.0, 80.0,
                             1e-13);
    CHECK(g.value == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-11));
}

TEST_CASE("breakpoints seed panels at kinks") {
    auto f = [](double t) { return t < 1.0 ? t : 2.0 - t; };
    auto r = quad::integrate(f, 0.0, 2.0, 1e-13, 0.0, {1.0});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("panel budget exhaustion raises with the achieved estimate") {
    // genuinely nasty integrand with a tiny budget
    auto f = [](double t) { return std::sin(1.0 / (t + 1e-8)); };
    CHECK_THROWS_AS(quad::integrate(f, 0.0, 1.0, 1e-15, 0.0, {}, 8), NumericError);
}

TEST_CASE("softplus is stable at both ends") {
    CHECK(quad::softplus(1000.0) == doctest::Approx(1000.0));
    CHECK(quad::softplus(-1000.0) == doctest::Approx(0.0));
    CHECK(quad::softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}
