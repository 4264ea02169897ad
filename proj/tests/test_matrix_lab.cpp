#include "doctest.h"

#include "fermieos/errors.hpp"
#include "fermieos/matrix_lab.hpp"

#include <cmath>
#include <random>

using namespace fermieos;
using mat::Matrix;
using mat::Vector;

TEST_CASE("von Neumann entropy basics") {
    Matrix pure = Matrix::Zero(3, 3);
    pure(0, 0) = 1.0;
    CHECK(mat::vn_entropy(pure) == doctest::Approx(0.0));

    CHECK(mat::vn_entropy(Matrix::Identity(4, 4) / 4.0) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));

    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 0.5, 0.25, 0.25;
    CHECK(mat::vn_entropy(d) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-13));

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 0.3; // not symmetric
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(mat::vn_entropy(bad), InvalidInput);
    CHECK_THROWS_AS(mat::vn_entropy(Matrix::Identity(2, 2)), InvalidInput); // trace 2
}

TEST_CASE("fermionic entropy basics") {
    Matrix proj = Matrix::Zero(3, 3);
    proj(0, 0) = proj(1, 1) = 1.0;
    CHECK(mat::fermi_entropy(proj) == doctest::Approx(0.0));

    CHECK(mat::fermi_entropy(Matrix::Identity(3, 3) * 0.5) ==
          doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-13));

    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 0.9, 0.1;
    double b9 = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);
    CHECK(mat::fermi_entropy(d) == doctest::Approx(2.0 * b9).epsilon(1e-13));

    CHECK_THROWS_AS(mat::fermi_entropy(Matrix::Identity(2, 2) * 1.5), InvalidInput);
}

TEST_CASE("Gibbs state closed forms") {
    Matrix h0 = Matrix::Zero(1, 1);
    auto g = mat::gibbs_state(h0);
    CHECK(g.gamma_h(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.f_h == doctest::Approx(-std::log(2.0)).epsilon(1e-15));

    Matrix h = Matrix::Zero(2, 2);
    h.diagonal() << 1.0, -1.0;
    auto g2 = mat::gibbs_state(h);
    CHECK(g2.gamma_h(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-14));
    CHECK(g2.gamma_h(1, 1) == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-14));
    CHECK(g2.f_h ==
          doctest::Approx(-std::log(1.0 + std::exp(-1.0)) - std::log(1.0 + std::exp(1.0)))
              .epsilon(1e-14));
    // the minimizer attains its own value
    CHECK(mat::grand_potential(h, g2.gamma_h) == doctest::Approx(g2.f_h).epsilon(1e-12));
}

TEST_CASE("grand potential: minimality over random perturbations") {
    std::mt19937_64 rng(5);
    Matrix h = mat::random_symmetric(4, rng);
    auto g = mat::gibbs_state(h);
    for (int i = 0; i < 100; ++i) {
        Matrix gamma = mat::random_one_body(4, rng);
        CHECK(mat::grand_potential(h, gamma) >= g.f_h - 1e-12);
    }
    // scalar example: h = 0, gamma = 0.9
    Matrix h1 = Matrix::Zero(1, 1), g9 = Matrix::Zero(1, 1);
    g9(0, 0) = 0.9;
    double b9 = -0.9 * std::log(0.9) - 0.1 * std::log(0.1);
    CHECK(mat::grand_potential(h1, g9) == doctest::Approx(-b9).epsilon(1e-13));
}

TEST_CASE("variational gap lower bounds") {
    // scalar case with gamma = 1, h = 0: gap = ln 2, bounds 1/2 and 1/8
    Matrix h = Matrix::Zero(1, 1), gamma = Matrix::Identity(1, 1);
    auto rep = mat::variational_gap_check(h, gamma);
    CHECK(rep.gap == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(rep.rhs_hs == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rep.rhs_trace == doctest::Approx(0.125).epsilon(1e-13));
    CHECK(rep.pass);

    std::mt19937_64 rng(123);
    for (int i = 0; i < 2000; ++i) {
        int n = 1 + static_cast<int>(rng() % 8);
        Matrix hh = mat::random_symmetric(n, rng);
        Matrix gg = mat::random_one_body(n, rng);
        auto r = mat::variational_gap_check(hh, gg);
        CHECK(r.pass);
    }
}

TEST_CASE("variational gap: uniqueness and trace-class sequence") {
    std::mt19937_64 rng(17);
    Matrix h = mat::random_symmetric(5, rng);
    auto g = mat::gibbs_state(h);
    for (int i = 0; i < 50; ++i) {
        Matrix gamma = mat::random_one_body(5, rng);
        double dist = std::sqrt(((gamma - g.gamma_h) * (gamma - g.gamma_h)).trace());
        auto rep = mat::variational_gap_check(h, gamma);
        if (dist > 1e-6) CHECK(rep.gap > 1e-14);
    }
    // gap -> 0 forces both norms -> 0 along a constructed sequence
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix dir = mat::random_symmetric(5, rng);
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
        Matrix gamma = g.gamma_h + t * dir;
        auto es = Eigen::SelfAdjointEigenSolver<Matrix>(gamma);
        Matrix clamped = es.eigenvectors() *
                         es.eigenvalues().cwiseMax(0.0).cwiseMin(1.0).asDiagonal() *
                         es.eigenvectors().transpose();
        auto rep = mat::variational_gap_check(h, clamped);
        double hs2 = ((clamped - g.gamma_h) * (clamped - g.gamma_h)).trace();
        double tr = std::abs((clamped - g.gamma_h).trace());
        CHECK(hs2 <= 0.5 * rep.gap + 1e-12);
        CHECK(0.5 * tr * tr / (tr + g.gamma_h.trace()) <= rep.gap + 1e-12);
    }
}

TEST_CASE("Klein kernel scalar bounds") {
    auto zero = mat::klein_kernel(0.3, 0.3);
    CHECK(zero.g == doctest::Approx(0.0));
    CHECK(zero.pass);

    auto half = mat::klein_kernel(1.0, 0.5);
    CHECK(half.g == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(half.lb_quadratic == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.pass);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int failures = 0;
    for (int i = 0; i < 100000; ++i) {
        auto rep = mat::klein_kernel(u(rng), u(rng));
        if (!rep.pass) ++failures;
    }
    CHECK(failures == 0);

    // exhaustive grid for the quadratic bound (integrand >= 4 consequence)
    for (int i = 0; i <= 1000; ++i)
        for (int j = 0; j <= 1000; j += 10) {
            auto rep = mat::klein_kernel(i / 1000.0, j / 1000.0);
            CHECK(rep.g >= rep.lb_quadratic - 1e-12);
        }

    CHECK_THROWS_AS(mat::klein_kernel(1.2, 0.5), InvalidInput);
}

TEST_CASE("mixture entropy versus spectral entropy") {
    // orthonormal vectors: equality
    std::vector<Vector> ortho = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
    auto eq = mat::mixture_entropy_check({0.25, 0.75}, ortho);
    CHECK(eq.log_norm == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eq.s_hat == doctest::Approx(eq.s).epsilon(1e-10));
    CHECK(eq.pass);

    // two unit vectors at 60 degrees, equal weights
    Vector v1(2), v2(2);
    v1 << 1.0, 0.0;
    v2 << std::cos(M_PI / 3.0), std::sin(M_PI / 3.0);
    auto rep = mat::mixture_entropy_check({0.5, 0.5}, {v1, v2});
    CHECK(rep.log_norm == doctest::Approx(std::log(1.5)).epsilon(1e-13));
    CHECK(rep.s == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(rep.s_hat >= std::log(2.0) - std::log(1.5) - 1e-12);
    CHECK(rep.pass);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 15);
        int k = 1 + static_cast<int>(rng() % 8);
        std::vector<Vector> vecs;
        std::vector<double> w(k);
        double tot = 0.0;
        for (int i = 0; i < k; ++i) {
            Vector v(n);
            for (int j = 0; j < n; ++j) v[j] = gauss(rng);
            vecs.push_back(v.normalized());
            tot += (w[i] = 0.05 + u(rng));
        }
        for (auto& x : w) x /= tot;
        CHECK(mat::mixture_entropy_check(w, vecs).pass);
    }

    CHECK_THROWS_AS(mat::mixture_entropy_check({0.5, 0.2}, ortho), InvalidInput);
}

TEST_CASE("trace-norm chain") {
    std::mt19937_64 rng(31);
    // P = identity reduces to the sqrt(n) norm comparison
    for (int i = 0; i < 20; ++i) {
        Matrix a = 4.0 * mat::random_density_matrix(4, rng);
        Matrix b = 2.0 * mat::random_density_matrix(4, rng);
        Matrix d = a - b;
        auto es = Eigen::SelfAdjointEigenSolver<Matrix>(d);
        double l1 = es.eigenvalues().cwiseAbs().sum();
        double l2 = std::sqrt((d * d).trace());
        CHECK(l1 <= 2.0 * l2 + 1e-12); // sqrt(4) = 2
        auto rep = mat::trace_norm_chain_check(a, b, Matrix::Identity(4, 4));
        CHECK(rep.pass);
    }

    auto same = mat::trace_norm_chain_check(Matrix::Identity(3, 3), Matrix::Identity(3, 3),
                                            Matrix::Zero(3, 3));
    CHECK(same.lhs == doctest::Approx(0.0));
    CHECK(same.pass);

    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);
        Matrix a = (1.0 + (trial % 3)) * mat::random_density_matrix(n, rng);
        Matrix b = (1.0 + (trial % 2)) * mat::random_density_matrix(n, rng);
        Matrix p = mat::random_projection(n, static_cast<int>(rng() % (n + 1)), rng);
        CHECK(mat::trace_norm_chain_check(a, b, p).pass);
    }

    Matrix notproj = 0.5 * Matrix::Identity(3, 3);
    CHECK_THROWS_AS(mat::trace_norm_chain_check(Matrix::Identity(3, 3), Matrix::Identity(3, 3),
                                                notproj),
                    InvalidInput);
}

TEST_CASE("refined subadditivity on measured second factors") {
    // product state: equality in both comparisons
    std::mt19937_64 rng(57);
    Matrix rho_a = mat::random_density_matrix(3, rng);
    Vector pb(2);
    pb << 0.4, 0.6;
    Matrix joint = Matrix::Zero(6, 6);
    for (int b = 0; b < 2; ++b)
        for (int ia = 0; ia < 3; ++ia)
            for (int ja = 0; ja < 3; ++ja) joint(ia * 2 + b, ja * 2 + b) = rho_a(ia, ja) * pb[b];
    auto rep = mat::refined_subadditivity_check(joint, 3, 2);
    CHECK(rep.s_joint == doctest::Approx(rep.refined_rhs).epsilon(1e-10));
    CHECK(rep.refined_rhs == doctest::Approx(rep.plain_rhs).epsilon(1e-10));
    CHECK(rep.pass_refined);
    CHECK(rep.pass_tighter);

    // classically correlated pair: refined is tight, plain is loose by ln 2
    Matrix cc = Matrix::Zero(4, 4);
    cc(0, 0) = 0.5; // |00><00|
    cc(3, 3) = 0.5; // |11><11|
    auto c = mat::refined_subadditivity_check(cc, 2, 2);
    CHECK(c.s_joint == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(c.refined_rhs == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(c.plain_rhs == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(c.pass_refined);
    CHECK(c.pass_tighter);

    for (int trial = 0; trial < 500; ++trial) {
        int da = 2 + static_cast<int>(rng() % 3);
        int db = 2 + static_cast<int>(rng() % 3);
        Matrix j = mat::random_block_diagonal_state(da, db, rng);
        auto r = mat::refined_subadditivity_check(j, da, db);
        CHECK(r.pass_refined);
        CHECK(r.pass_tighter);
    }

    // non-block-diagonal input is rejected unless projection is requested
    Matrix bad = mat::random_density_matrix(4, rng);
    CHECK_THROWS_AS(mat::refined_subadditivity_check(bad, 2, 2), InvalidInput);
    auto projected = mat::refined_subadditivity_check(bad, 2, 2, true);
    CHECK(projected.projection_residual > 0.0);
    CHECK(projected.pass_refined);
}

TEST_CASE("entropy concavity on random pairs") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + static_cast<int>(rng() % 6);
        Matrix r1 = mat::random_density_matrix(n, rng);
        Matrix r2 = mat::random_density_matrix(n, rng);
        double mixed = mat::vn_entropy(0.5 * r1 + 0.5 * r2);
        CHECK(mixed >= 0.5 * mat::vn_entropy(r1) + 0.5 * mat::vn_entropy(r2) - 1e-10);
    }
}
