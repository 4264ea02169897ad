#include "doctest.h"

#include "fermieos/errors.hpp"
#include "fermieos/scattering.hpp"

#include <cmath>
#include <random>

using namespace fermieos;
using scatter::RadialPotential;
using scatter::Segment;

namespace {

RadialPotential square_barrier(double v, double r0, double r1) {
    RadialPotential p;
    p.core_radius = r0;
    p.range = r1;
    p.segments = {{r0, r1, v}};
    return p;
}

RadialPotential random_piecewise(std::mt19937_64& rng, int max_segments = 5) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RadialPotential p;
    p.core_radius = 0.0;
    int n = 1 + static_cast<int>(u(rng) * max_segments);
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = 0.1 + u(rng);
        p.segments.push_back({r, r + w, 4.0 * u(rng)});
        r += w;
    }
    p.range = r;
    return p;
}

} // namespace

TEST_CASE("hard core: a equals the range") {
    RadialPotential p;
    p.core_radius = 1.0;
    p.range = 1.0;
    auto res = scatter::scattering_length(p);
    CHECK(res.a == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("free particle and zero tail") {
    RadialPotential p;
    p.core_radius = 0.0;
    p.range = 0.0;
    CHECK(scatter::scattering_length(p).a == doctest::Approx(0.0));

    auto res = scatter::scattering_length(square_barrier(0.0, 0.0, 2.0));
    CHECK(res.a == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("square barrier against the analytic formula") {
    // v = 2 on [0,1]: kappa = 1, a = 1 - tanh(1)
    auto res = scatter::scattering_length(square_barrier(2.0, 0.0, 1.0));
    CHECK(res.a == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-12));

    auto ode = scatter::scattering_length(square_barrier(2.0, 0.0, 1.0), true);
    CHECK(ode.a == doctest::Approx(1.0 - std::tanh(1.0)).epsilon(1e-8));
    CHECK(ode.method == scatter::Method::Ode);
}

TEST_CASE("wavefunction normalization and exterior form") {
    RadialPotential hard;
    hard.core_radius = 1.0;
    hard.range = 1.0;
    auto phi = scatter::wavefunction(hard, {1.5, 2.0, 10.0});
    CHECK(phi[0] == doctest::Approx(1.0 - 1.0 / 1.5).epsilon(1e-14));
    CHECK(phi[1] == doctest::Approx(0.5).epsilon(1e-14));

    auto barrier = square_barrier(2.0, 0.0, 1.0);
    double a = 1.0 - std::tanh(1.0);
    auto phib = scatter::wavefunction(barrier, {0.5, 1.0, 2.0});
    CHECK(phib[2] == doctest::Approx(1.0 - a / 2.0).epsilon(1e-12));
    // interior: phi = sinh(r)/(cosh(1) r)
    CHECK(phib[0] == doctest::Approx(std::sinh(0.5) / (std::cosh(1.0) * 0.5)).epsilon(1e-12));
    for (double v : phib) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
    }

    CHECK_THROWS_AS(scatter::wavefunction(barrier, {0.0}), InvalidInput);
}

TEST_CASE("monotonicity in the potential") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto p1 = random_piecewise(rng);
        auto p2 = p1;
        for (auto& s : p2.segments) s.value += 2.0 * u(rng);
        double a1 = scatter::scattering_length(p1).a;
        double a2 = scatter::scattering_length(p2).a;
        CHECK(a1 <= a2 + 1e-12);
        CHECK(a1 >= 0.0);
        CHECK(a2 <= p2.range);
    }
}

TEST_CASE("hard-core limit under barrier scaling") {
    double prev = -1.0;
    for (double lambda : {1.0, 10.0, 100.0, 1000.0}) {
        auto res = scatter::scattering_length(square_barrier(2.0 * lambda, 0.0, 1.0));
        CHECK(res.a > prev);
        CHECK(res.a < 1.0);
        prev = res.a;
    }
    // enormous barrier drives a to the range
    auto res = scatter::scattering_length(square_barrier(2e8, 0.0, 1.0));
    CHECK(res.a == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("scale covariance r -> lambda r, v -> v/lambda^2") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_piecewise(rng);
        double lambda = 3.7;
        RadialPotential q;
        q.core_radius = p.core_radius * lambda;
        q.range = p.range * lambda;
        for (auto s : p.segments)
            q.segments.push_back({s.r_start * lambda, s.r_end * lambda, s.value / (lambda * lambda)});
        double a1 = scatter::scattering_length(p).a;
        double a2 = scatter::scattering_length(q).a;
        CHECK(a2 == doctest::Approx(lambda * a1).epsilon(1e-10));
    }
}

TEST_CASE("exact and ODE paths agree on random potentials") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        auto p = random_piecewise(rng);
        auto exact = scatter::scattering_length(p);
        double ao = scatter::scattering_length(p, true).a;
        CHECK(ao == doctest::Approx(exact.a).epsilon(1e-6));
        // no zero-energy node for repulsive potentials
        for (size_t i = 1; i < exact.u_val.size(); ++i) CHECK(exact.u_val[i] > 0.0);
    }
}

TEST_CASE("potential file parsing") {
    auto pot = scatter::parse_potential("# barrier\ncore_radius = 0\nrange = 1\nsegment = 0 1 2\n");
    CHECK(pot.segments.size() == 1);
    CHECK(scatter::scattering_length(pot).a == doctest::Approx(1.0 - std::tanh(1.0)));

    CHECK_THROWS_WITH_AS(scatter::parse_potential("core_radius = 0\nrange 1\n"),
                         doctest::Contains("line 2"), InvalidInput);
    CHECK_THROWS_AS(scatter::parse_potential("range = 1\n"), InvalidInput);
    CHECK_THROWS_AS(
        scatter::parse_potential("core_radius = 0\nrange = 2\nsegment = 0 1 1\nsegment = 1.5 2 1\n"),
        InvalidInput);
    CHECK_THROWS_AS(
        scatter::parse_potential("core_radius = 0\nrange = 1\nsegment = 0 1 -3\n"), InvalidInput);
}
