#include "verify_suites.hpp"

#include "fermieos/error_budget.hpp"
#include "fermieos/finite_box.hpp"
#include "fermieos/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cli {

namespace {

using fermieos::mat::Matrix;
using fermieos::mat::Vector;

std::uint64_t instance_seed(std::uint64_t base, std::uint64_t suite, std::uint64_t i) {
    // splitmix64 scramble: distinct, reproducible per-instance streams
    std::uint64_t x = base + 0x9e3779b97f4a7c15ULL * (suite * 1000003ULL + i + 1ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct Harness {
    SuiteResult res;
    bool first = true;
    explicit Harness(std::string name, std::uint64_t seed) {
        res.check = std::move(name);
        res.seed = seed;
    }
    // slack_used: certified-side margin (bound minus checked quantity);
    // negative means the inequality held with room to spare
    void record(bool pass, double slack_used, std::uint64_t iseed) {
        ++res.instances;
        res.worst_slack = first ? slack_used : std::max(res.worst_slack, slack_used);
        first = false;
        if (!pass) {
            ++res.failures;
            if (res.failing_seeds.size() < 16) res.failing_seeds.push_back(iseed);
        }
    }
};

SuiteResult run_gibbs_gap(std::uint64_t seed, int n_inst) {
    Harness h("gibbs-gap", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 1, i);
        std::mt19937_64 rng(is);
        int n = 1 + static_cast<int>(rng() % 8);
        Matrix hh = fermieos::mat::random_symmetric(n, rng);
        Matrix gg = fermieos::mat::random_one_body(n, rng);
        auto rep = fermieos::mat::variational_gap_check(hh, gg);
        double margin = std::max(rep.rhs_hs - rep.gap, rep.rhs_trace - rep.gap);
        h.record(rep.pass, margin, is);
    }
    return h.res;
}

SuiteResult run_klein(std::uint64_t seed, int n_inst) {
    Harness h("klein", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 2, i);
        std::mt19937_64 rng(is);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto rep = fermieos::mat::klein_kernel(u(rng), u(rng));
        double margin = std::max(rep.lb_quadratic - rep.g, rep.lb_trace - rep.g);
        h.record(rep.pass, margin, is);
    }
    return h.res;
}

SuiteResult run_entropy_mixture(std::uint64_t seed, int n_inst) {
    Harness h("entropy-mixture", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 3, i);
        std::mt19937_64 rng(is);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::normal_distribution<double> g;
        int n = 2 + static_cast<int>(rng() % 15);
        int k = 1 + static_cast<int>(rng() % 8);
        std::vector<Vector> vecs;
        std::vector<double> w(k);
        double tot = 0.0;
        for (int j = 0; j < k; ++j) {
            Vector v(n);
            for (int l = 0; l < n; ++l) v[l] = g(rng);
            vecs.push_back(v.normalized());
            tot += (w[j] = 0.05 + u(rng));
        }
        for (auto& x : w) x /= tot;
        auto rep = fermieos::mat::mixture_entropy_check(w, vecs);
        h.record(rep.pass, (rep.s - rep.log_norm) - rep.s_hat, is);
    }
    return h.res;
}

SuiteResult run_trace_chain(std::uint64_t seed, int n_inst) {
    Harness h("trace-chain", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 4, i);
        std::mt19937_64 rng(is);
        int n = 2 + static_cast<int>(rng() % 11);
        Matrix a = (1.0 + (i % 3)) * fermieos::mat::random_density_matrix(n, rng);
        Matrix b = (1.0 + (i % 2)) * fermieos::mat::random_density_matrix(n, rng);
        Matrix p = fermieos::mat::random_projection(n, static_cast<int>(rng() % (n + 1)), rng);
        auto rep = fermieos::mat::trace_norm_chain_check(a, b, p);
        h.record(rep.pass, rep.lhs - rep.rhs, is);
    }
    return h.res;
}

SuiteResult run_subadditivity(std::uint64_t seed, int n_inst) {
    Harness h("subadditivity", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 5, i);
        std::mt19937_64 rng(is);
        int da = 2 + static_cast<int>(rng() % 3);
        int db = 2 + static_cast<int>(rng() % 3);
        Matrix j = fermieos::mat::random_block_diagonal_state(da, db, rng);
        auto rep = fermieos::mat::refined_subadditivity_check(j, da, db);
        double margin =
            std::max(rep.s_joint - rep.refined_rhs, rep.refined_rhs - rep.plain_rhs);
        h.record(rep.pass_refined && rep.pass_tighter, margin, is);
    }
    return h.res;
}

SuiteResult run_mode_sum_sandwich(std::uint64_t seed, int n_inst) {
    Harness h("mode-sum-sandwich", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 6, i);
        std::mt19937_64 rng(is);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double beta = 0.1 * std::pow(100.0, u(rng));
        double z = 0.1 * std::pow(100.0, u(rng));
        double ell = 1.0 + 49.0 * u(rng);
        auto kind = (i % 2 == 0) ? fermieos::box::SandwichKind::ExpDecay
                                 : fermieos::box::SandwichKind::Fermi;
        auto rep = fermieos::box::mode_sum_sandwich(kind, beta, std::log(z) / beta, ell);
        double margin = std::max(rep.trace_density - rep.integral,
                                 rep.lower_bound - rep.trace_density);
        h.record(rep.pass, margin, is);
    }
    return h.res;
}

SuiteResult run_curvature(std::uint64_t seed, int n_inst) {
    Harness h("curvature", seed);
    int grid = std::max(2, static_cast<int>(std::lround(std::sqrt(double(n_inst)))));
    for (int i = 1; i <= grid; ++i) {
        for (int j = 1; j <= grid; ++j) {
            double mu = 2.0;
            double r = mu * i / grid;
            double s = 10.0 * mu * j / grid;
            auto rep = fermieos::box::fermi_sea_curvature(mu, r, s);
            double margin = std::max(rep.rhs_r - rep.lhs_r, rep.rhs_s - rep.lhs_s);
            h.record(rep.pass, margin, instance_seed(seed, 7, i * grid + j));
        }
    }
    return h.res;
}

SuiteResult run_pressure_gap(std::uint64_t seed, int n_inst) {
    Harness h("pressure-gap", seed);
    int grid = std::max(2, static_cast<int>(std::lround(std::sqrt(double(n_inst)))));
    bool stated_all = true;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double bm = std::pow(100.0, (i * grid + j) / double(grid * grid - 1) * 1.0);
            double beta = 0.5 + 2.0 * j / grid;
            double mu = bm / beta;
            auto rep = fermieos::box::pressure_curvature_gap(beta, mu);
            // certified checks: positivity, provable bound, intermediates
            bool pass = rep.nonnegative && rep.pass_provable && rep.pass_intermediate;
            stated_all = stated_all && rep.pass_stated;
            h.record(pass, rep.delta_p0 - rep.provable_bound,
                     instance_seed(seed, 8, i * grid + j));
        }
    }
    h.res.notes.push_back(stated_all
                              ? "published-constant bound holds on this grid"
                              : "published-constant bound (2/3pi^2) fails on this grid; "
                                "see acceptance criterion 10 and the module tests");
    return h.res;
}

SuiteResult run_kinetic_tail(std::uint64_t seed, int n_inst) {
    Harness h("kinetic-tail", seed);
    for (int i = 0; i < n_inst; ++i) {
        std::uint64_t is = instance_seed(seed, 9, i);
        std::mt19937_64 rng(is);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double beta = 0.5 + 1.5 * u(rng);
        double mu = -2.0 * u(rng); // z <= 1: the Gaussian-tail bound's regime
        double s = 0.05 + 0.25 * u(rng);
        double delta = 0.01 + 0.19 * u(rng);
        double kappa = 0.3 + 0.6 * u(rng);
        if (beta * kappa / (s * s) < 5.0) kappa = 5.0 * s * s / beta;
        if (kappa >= 1.0) {
            s = std::sqrt(beta * 0.9 / 5.0);
            kappa = 0.9;
        }
        auto rep = fermieos::budget::kinetic_tail_comparison(beta, mu, s, delta, kappa);
        h.record(rep.pass, rep.integral - rep.bound, is);
    }
    return h.res;
}

SuiteResult run_self_test_failure(std::uint64_t seed) {
    Harness h("self-test", seed);
    // deliberately impossible tolerance: verifies the failure path end to end
    h.record(false, 1.0, instance_seed(seed, 10, 0));
    h.res.notes.push_back("synthetic violation injected via --inject-failure");
    return h.res;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "gibbs-gap",  "klein",     "entropy-mixture", "trace-chain",  "subadditivity",
        "mode-sum-sandwich", "curvature", "pressure-gap",    "kinetic-tail",
    };
    return names;
}

std::vector<SuiteResult> run_verify_suites(const std::string& filter, int instance_override,
                                           std::uint64_t seed, bool inject_failure) {
    auto want = [&](const std::string& name) { return filter.empty() || filter == name; };
    auto n = [&](int def) { return instance_override > 0 ? instance_override : def; };

    std::vector<SuiteResult> out;
    if (want("gibbs-gap")) out.push_back(run_gibbs_gap(seed, n(2000)));
    if (want("klein")) out.push_back(run_klein(seed, n(100000)));
    if (want("entropy-mixture")) out.push_back(run_entropy_mixture(seed, n(500)));
    if (want("trace-chain")) out.push_back(run_trace_chain(seed, n(500)));
    if (want("subadditivity")) out.push_back(run_subadditivity(seed, n(500)));
    if (want("mode-sum-sandwich")) out.push_back(run_mode_sum_sandwich(seed, n(1000)));
    if (want("curvature")) out.push_back(run_curvature(seed, n(10000)));
    if (want("pressure-gap")) out.push_back(run_pressure_gap(seed, n(100)));
    if (want("kinetic-tail")) out.push_back(run_kinetic_tail(seed, n(100)));
    if (inject_failure) out.push_back(run_self_test_failure(seed));
    return out;
}

} // namespace cli
