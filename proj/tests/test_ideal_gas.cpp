#include "doctest.h"

#include "fermieos/errors.hpp"
#include "fermieos/ideal_gas.hpp"
#include "fermieos/polylog.hpp"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace fermieos;

TEST_CASE("pressure against the series oracle") {
    // empty gas limit
    CHECK(ideal::pressure(1.0, std::log(1e-14), 2) == doctest::Approx(0.0).epsilon(1e-10));

    CHECK(ideal::pressure(1.0, 0.0, 2) ==
          doctest::Approx(oracle::kP0_beta1_z1_q2).epsilon(1e-11));

    // classical limit, z = 1e-6
    double z = 1e-6;
    CHECK(ideal::pressure(1.0, std::log(z), 2) ==
          doctest::Approx(oracle::pressure_ref(1.0, z, 2)).epsilon(1e-11));

    for (double zz : {0.1, 0.5, 0.9}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            for (int q : {1, 2, 4}) {
                double mu = std::log(zz) / beta;
                CHECK(ideal::pressure(beta, mu, q) ==
                      doctest::Approx(oracle::pressure_ref(beta, zz, q)).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("density against the series oracle and the T=0 sphere") {
    CHECK(ideal::density(1.0, 0.0, 2) ==
          doctest::Approx(oracle::kRho0_beta1_z1_q2).epsilon(1e-11));
    // beta -> inf at mu = 1: rho -> 1/(3 pi^2)
    CHECK(ideal::density(4000.0, 1.0, 2) == doctest::Approx(oracle::kRhoT0_mu1).epsilon(1e-4));
}

TEST_CASE("thermo identities") {
    auto v = ideal::thermo_values(1.0, 0.0, 2);
    CHECK(v.u0 == doctest::Approx(1.5 * v.p0).epsilon(1e-14));
    CHECK(v.s0 == doctest::Approx(1.0 * (v.u0 + v.p0 - 0.0 * v.rho0)).epsilon(1e-12));
    // entropy positivity across regimes
    for (double z : {0.1, 1.0, 10.0, 100.0}) {
        auto w = ideal::thermo_values(1.0, std::log(z), 2);
        CHECK(w.s0 >= 0.0);
    }
}

TEST_CASE("mu inversion round trip and degenerate limit") {
    double rho = ideal::density(1.0, 0.5, 2);
    CHECK(ideal::mu_from_density(1.0, rho, 2) == doctest::Approx(0.5).epsilon(1e-9));

    // T = 0 Fermi energy at beta rho^{-2/3} = 200
    double mu = ideal::mu_from_density(200.0, 1.0, 2);
    CHECK(mu == doctest::Approx(oracle::kEF).epsilon(0.01));

    // z ~ 1 target
    double mu0 = ideal::mu_from_density(1.0, oracle::kRho0_beta1_z1_q2, 2);
    CHECK(std::abs(mu0) < 1e-8);

    CHECK_THROWS_AS(ideal::mu_from_density(1.0, -1.0, 2), InvalidInput);
}

TEST_CASE("fermi temperature closed form and scaling") {
    CHECK(ideal::fermi_temperature(1.0, 2) == doctest::Approx(oracle::kEF).epsilon(1e-14));
    CHECK(ideal::fermi_temperature(8.0, 2) ==
          doctest::Approx(4.0 * oracle::kEF).epsilon(1e-13));
    CHECK_THROWS_AS(ideal::fermi_temperature(0.0, 2), InvalidInput);
}

TEST_CASE("derivative of pressure equals density (central differences)") {
    for (int i = 0; i < 20; ++i) {
        double z = 0.1 * std::pow(1000.0, i / 19.0); // z in [0.1, 100]
        double mu = std::log(z);
        double h = 1e-5 * std::max(1.0, std::abs(mu));
        double dp = (ideal::pressure(1.0, mu + h, 2) - ideal::pressure(1.0, mu - h, 2)) / (2 * h);
        CHECK(dp == doctest::Approx(ideal::density(1.0, mu, 2)).epsilon(1e-6));
    }
}

TEST_CASE("density monotone and pressure convex in mu") {
    std::vector<double> mus = {-2.0, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0, 5.0};
    double prev = 0.0;
    for (size_t i = 0; i < mus.size(); ++i) {
        double d = ideal::density(1.0, mus[i], 2);
        CHECK(d > prev);
        prev = d;
    }
    for (size_t i = 0; i + 2 < mus.size(); ++i) {
        double p1 = ideal::pressure(1.0, mus[i], 2);
        double p2 = ideal::pressure(1.0, mus[i + 1], 2);
        double p3 = ideal::pressure(1.0, mus[i + 2], 2);
        double t = (mus[i + 1] - mus[i]) / (mus[i + 2] - mus[i]);
        CHECK(p2 <= (1.0 - t) * p1 + t * p3 + 1e-12);
    }
}

TEST_CASE("scaling law P0(beta/lambda, lambda mu) = lambda^{5/2} P0") {
    for (double lambda : {0.5, 2.0, 7.0}) {
        double lhs = ideal::pressure(1.0 / lambda, lambda * 0.3, 2);
        double rhs = std::pow(lambda, 2.5) * ideal::pressure(1.0, 0.3, 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("quadrature path equals the accelerated series path") {
    for (double z : {0.05, 0.3, 0.8, 1.0}) {
        double p_quad = ideal::pressure(2.0, std::log(z) / 2.0, 2);
        double p_series = 2.0 * std::pow(8.0 * M_PI, -1.5) / 2.0 * fd_polylog(2.5, z);
        CHECK(p_quad == doctest::Approx(p_series).epsilon(1e-10));
    }
}

TEST_CASE("polylog beyond the series radius (frozen 25-digit values)") {
    double z = std::exp(2.0);
    CHECK(fd_polylog(1.5, z) == doctest::Approx(2.8237212774015841).epsilon(1e-12));
    CHECK(fd_polylog(2.5, z) == doctest::Approx(4.1654144598683217).epsilon(1e-12));
    CHECK(dilog_neg(1.0) == doctest::Approx(M_PI * M_PI / 12.0).epsilon(1e-13));
    CHECK(dilog_neg(10.0) == doctest::Approx(4.1982778868581039).epsilon(1e-13));
    // degenerate-side pressure against the polylog route
    double p = ideal::pressure(1.0, 2.0, 2);
    CHECK(p == doctest::Approx(2.0 * std::pow(4.0 * M_PI, -1.5) * fd_polylog(2.5, z))
                   .epsilon(1e-11));
}

TEST_CASE("polylog paths and validation") {
    CHECK(fd_polylog(2.5, 1.0) == doctest::Approx(oracle::kEta52).epsilon(1e-12));
    CHECK(fd_polylog(1.5, 1.0) == doctest::Approx(oracle::kEta32).epsilon(1e-12));
    CHECK(fd_polylog(2.5, 1e-9) == doctest::Approx(1e-9).epsilon(1e-6));
    // series vs quadrature continuity across z = 1
    CHECK(fd_polylog(1.5, 1.0) == doctest::Approx(fd_polylog(1.5, 1.0 + 1e-9)).epsilon(1e-7));
    // z > 1 against the plain series evaluated just below 1 is not a check;
    // instead verify against the oracle at moderate z < 1
    CHECK(fd_polylog(1.5, 0.97) == doctest::Approx(oracle::alt_series(1.5, 0.97)).epsilon(1e-11));
    CHECK_THROWS_AS(fd_polylog(2.0, 0.5), InvalidInput);
    CHECK_THROWS_AS(fd_polylog(2.5, -1.0), InvalidInput);
}

TEST_CASE("ThermoPoint invariants") {
    ideal::ThermoPoint pt(1.0, 0.5, 2);
    CHECK(pt.z == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
    CHECK(pt.fugacity_residual() < 1e-14);
    CHECK_THROWS_AS(ideal::ThermoPoint(-1.0, 0.0, 2), InvalidInput);
    CHECK_THROWS_AS(ideal::ThermoPoint(1.0, 0.0, 0), InvalidInput);
    CHECK_THROWS_AS(ideal::ThermoPoint(200.0, 10.0, 2), InvalidInput); // z overflows
}
