#include "fermieos/finite_box.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/ideal_gas.hpp"
#include "fermieos/polylog.hpp"
#include "fermieos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <vector>

namespace fermieos::box {

namespace {

// Counts of lattice points by squared norm m: r3[m] = #{n : |n|^2 = m} for
// n in N^3 (n_i >= 1, Dirichlet) or Z^3 (periodic). Built lazily, grown
// geometrically, shared across calls.
class ShellTable {
public:
    explicit ShellTable(bool integer_lattice) : integer_(integer_lattice) {}

    const std::vector<std::uint32_t>& counts(std::size_t m_max) {
        std::lock_guard<std::mutex> lock(mtx_);
        if (m_max >= counts_.size()) build(std::max(m_max + 1, counts_.size() * 2));
        return counts_;
    }

private:
    void build(std::size_t size) {
        const std::size_t M = size - 1;
        std::vector<std::uint32_t> r2(size, 0);
        const long i0 = integer_ ? 0 : 1;
        for (long i = i0; static_cast<std::size_t>(i) * i <= M; ++i) {
            const std::uint32_t wi = (integer_ && i > 0) ? 2 : 1;
            for (long j = i0; static_cast<std::size_t>(i) * i + j * j <= M; ++j) {
                const std::uint32_t wj = (integer_ && j > 0) ? 2 : 1;
                r2[i * i + j * j] += wi * wj;
            }
        }
        counts_.assign(size, 0);
        for (long i = i0; static_cast<std::size_t>(i) * i <= M; ++i) {
            const std::uint32_t wi = (integer_ && i > 0) ? 2 : 1;
            const std::size_t off = static_cast<std::size_t>(i) * i;
            for (std::size_t m2 = 0; m2 + off <= M; ++m2)
                if (r2[m2]) counts_[m2 + off] += wi * r2[m2];
        }
    }

    bool integer_;
    std::vector<std::uint32_t> counts_;
    std::mutex mtx_;
};

ShellTable& dirichlet_table() {
    static ShellTable t(false);
    return t;
}
ShellTable& periodic_table() {
    static ShellTable t(true);
    return t;
}

// sum over modes with e <= e_max of f(e), plus an analytic bound on the
// omitted tail of z e^{-beta e}, a termwise majorant of every kernel used here
struct ModeSum {
    double value;
    double tail_bound;
};

ModeSum mode_sum(Boundary bc, double ell, double e_max, double beta, double mu,
                 const std::function<double(double)>& f) {
    const double unit = (bc == Boundary::Dirichlet ? M_PI : 2.0 * M_PI) / ell;
    const double unit2 = unit * unit;
    const std::size_t m_max = static_cast<std::size_t>(e_max / unit2);
    auto& table = (bc == Boundary::Dirichlet) ? dirichlet_table() : periodic_table();
    const auto& counts = table.counts(m_max);
    double sum = 0.0;
    const std::size_t m0 = (bc == Boundary::Dirichlet) ? 3 : 0;
    for (std::size_t m = m0; m <= m_max; ++m)
        if (counts[m]) sum += counts[m] * f(unit2 * static_cast<double>(m));
    // tail: sum_{e > e_max} z e^{-beta e} <= z e^{-beta e_max/2} S(beta/2)^3,
    // S(b) <= integral bound (+1 for the periodic zero mode)
    double s_half = 0.5 * std::sqrt(M_PI / (0.5 * beta)) / unit + 1.0;
    double log_tail = beta * mu - 0.5 * beta * e_max + 3.0 * std::log(s_half);
    ModeSum r;
    r.value = sum;
    r.tail_bound = (log_tail < 700.0) ? std::exp(log_tail) : std::exp(700.0);
    return r;
}

double auto_cutoff(double beta, double mu) { return std::max(2.0 * mu, 0.0) + 90.0 / beta; }

void check_box_args(double beta, double mu, double ell) {
    if (!std::isfinite(beta) || !(beta > 0.0)) throw InvalidInput("box: beta must be > 0");
    if (!std::isfinite(mu)) throw InvalidInput("box: mu must be finite");
    if (!std::isfinite(ell) || !(ell > 0.0)) throw InvalidInput("box: side must be > 0");
}

} // namespace

double box_pressure(double beta, double mu, const BoxSpec& box) {
    check_box_args(beta, mu, box.side);
    const double w = beta * mu;
    double e_max = box.energy_cutoff > 0.0 ? box.energy_cutoff : auto_cutoff(beta, mu);
    auto kernel = [&](double e) { return quad::softplus(w - beta * e); };
    ModeSum s = mode_sum(box.boundary, box.side, e_max, beta, mu, kernel);
    if (s.tail_bound > 1e-12 * std::max(s.value, 1e-300))
        throw NumericError("box_pressure: energy cutoff too low for the requested accuracy",
                           s.tail_bound);
    return 2.0 / (beta * box.side * box.side * box.side) * s.value;
}

double box_pressure_projected(double beta, double mu, double ell, double e_max) {
    check_box_args(beta, mu, ell);
    if (!(e_max >= 0.0)) throw InvalidInput("box: e_max must be >= 0");
    const double w = beta * mu;
    auto kernel = [&](double e) { return quad::softplus(w - beta * e); };
    // modes beyond the automatic cutoff contribute < e^{-45} relative
    ModeSum s = mode_sum(Boundary::Dirichlet, ell, std::min(e_max, auto_cutoff(beta, mu)), beta,
                         mu, kernel);
    return 2.0 / (beta * ell * ell * ell) * s.value;
}

double projected_density(double beta, double mu, double ell, double K, double rho0_ref) {
    check_box_args(beta, mu, ell);
    if (!(K > 0.0)) throw InvalidInput("projected_density: K must be > 0");
    if (!(rho0_ref > 0.0)) throw InvalidInput("projected_density: rho0_ref must be > 0");
    const double w = beta * mu;
    double e_proj = K * std::pow(rho0_ref, 2.0 / 3.0);
    // beyond the automatic cutoff the Fermi factor is < e^{-45} relative
    double e_max = std::min(e_proj, auto_cutoff(beta, mu));
    auto kernel = [&](double e) {
        double x = beta * e - w;
        return x > 36.0 ? std::exp(-x) : 1.0 / (1.0 + std::exp(x));
    };
    ModeSum s = mode_sum(Boundary::Dirichlet, ell, e_max, beta, mu, kernel);
    return 2.0 / (ell * ell * ell) * s.value;
}

SandwichReport mode_sum_sandwich(SandwichKind kind, double beta, double mu, double ell) {
    check_box_args(beta, mu, ell);
    SandwichReport rep{};
    if (kind == SandwichKind::ExpDecay) {
        // f(t) = e^{-beta t}: everything in closed or factorized form
        rep.integral = 1.0 / (8.0 * std::pow(M_PI, 1.5) * std::pow(beta, 1.5));
        // 1-D theta sum, factorized trace
        double h2 = (M_PI / ell) * (M_PI / ell) * beta;
        double s1 = 0.0;
        for (int n = 1; h2 * n * n < 700.0; ++n) s1 += std::exp(-h2 * n * n);
        rep.trace_density = s1 * s1 * s1 / (ell * ell * ell);
        // J = Int f/|p| d^3p = 2 pi / beta
        rep.lower_bound = rep.integral - 3.0 * M_PI / ell * std::pow(2.0 * M_PI, -3.0) * 2.0 * M_PI / beta;
    } else {
        rep.integral = ideal::density(beta, mu, 1);
        const double w = beta * mu;
        auto kernel = [&](double e) {
            double x = beta * e - w;
            return x > 36.0 ? std::exp(-x) : 1.0 / (1.0 + std::exp(x));
        };
        ModeSum s = mode_sum(Boundary::Dirichlet, ell, auto_cutoff(beta, mu), beta, mu, kernel);
        rep.trace_density = s.value / (ell * ell * ell);
        // J = 2 pi Int_0^inf dt/(1+e^{beta t - w}) = (2 pi / beta) ln(1+z)
        double J = 2.0 * M_PI / beta * quad::softplus(w);
        rep.lower_bound = rep.integral - 3.0 * M_PI / ell * std::pow(2.0 * M_PI, -3.0) * J;
        rep.slack = 1e-12 * rep.integral;
        // upper direction checked against sum + tail bound (omitted modes are
        // positive), lower direction against the computed sum alone
        double tail_density = s.tail_bound / (ell * ell * ell);
        rep.pass = (rep.integral >= rep.trace_density + tail_density - rep.slack) &&
                   (rep.trace_density >= rep.lower_bound - rep.slack);
        return rep;
    }
    rep.slack = 1e-12 * rep.integral;
    rep.pass = (rep.integral >= rep.trace_density - rep.slack) &&
               (rep.trace_density >= rep.lower_bound - rep.slack);
    return rep;
}

FiniteSizeGap finite_size_gap(double beta, double mu, double ell, double K) {
    check_box_args(beta, mu, ell);
    if (!(K > 0.0)) throw InvalidInput("finite_size_gap: K must be > 0");
    FiniteSizeGap rep{};
    double z = std::exp(beta * mu);
    if (!std::isfinite(z))
        throw InvalidInput("finite_size_gap: fugacity overflows; reduce beta*mu");
    double rho0 = ideal::density(beta, mu, 2);
    double g = 2.0 * M_PI * dilog_neg(z);
    double pref = 1.0 / (M_PI * M_PI * std::pow(beta, 2.5));
    rep.g_term = pref * 3.0 * std::sqrt(beta) / (4.0 * ell) * g;
    rep.exp_term = pref * z / std::sqrt(2.0) *
                   std::exp(-0.5 * beta * K * std::pow(rho0, 2.0 / 3.0));
    rep.gap = rep.g_term + rep.exp_term;
    rep.p0 = ideal::pressure(beta, mu, 2);
    rep.projected_pressure =
        box_pressure_projected(beta, mu, ell, K * std::pow(rho0, 2.0 / 3.0));
    rep.pass = rep.projected_pressure >= rep.p0 - rep.gap - 1e-12 * rep.p0;
    return rep;
}

CurvatureReport fermi_sea_curvature(double mu, double r, double s) {
    if (!(mu > 0.0)) throw InvalidInput("fermi_sea_curvature: mu must be > 0");
    if (!(r >= 0.0 && r <= mu)) throw InvalidInput("fermi_sea_curvature: need 0 <= r <= mu");
    if (!(s >= 0.0)) throw InvalidInput("fermi_sea_curvature: need s >= 0");
    const double c6 = 1.0 / (6.0 * M_PI * M_PI);
    const double c8 = 1.0 / (8.0 * M_PI * M_PI);
    CurvatureReport rep{};
    rep.lhs_r = c6 * (-0.4 * std::pow(mu - r, 2.5) + 0.4 * std::pow(mu, 2.5) -
                      r * std::pow(mu, 1.5));
    rep.rhs_r = -c8 * std::sqrt(mu) * r * r;
    rep.lhs_s = c6 * (-0.4 * std::pow(mu + s, 2.5) + 0.4 * std::pow(mu, 2.5) +
                      s * std::pow(mu, 1.5));
    rep.rhs_s = -c8 * std::sqrt(mu) * s * s * std::sqrt(1.0 + s / mu);
    double slack = 1e-12 * std::pow(mu, 2.5);
    rep.pass = (rep.lhs_r >= rep.rhs_r - slack) && (rep.lhs_s >= rep.rhs_s - slack);
    return rep;
}

PressureGapReport pressure_curvature_gap(double beta, double mu) {
    if (!(beta > 0.0)) throw InvalidInput("pressure_curvature_gap: beta must be > 0");
    if (!(mu > 0.0)) throw InvalidInput("pressure_curvature_gap: mu must be > 0");
    PressureGapReport rep{};

    auto edge_integrals = [&](double b, double& i1, double& i2) {
        const double w = b * mu;
        const double pmu = std::sqrt(mu);
        // I1 = 4 pi Int_0^sqrt(mu) p^2 ln(1 + e^{b p^2 - w}) dp
        auto f1 = [&](double p) { return p * p * quad::softplus(b * p * p - w); };
        i1 = 4.0 * M_PI * quad::integrate(f1, 0.0, pmu, 1e-12).value;
        // I2 = 4 pi Int_sqrt(mu)^inf p^2 ln(1 + e^{w - b p^2}) dp
        double p_hi = std::sqrt((w + 60.0) / b);
        auto f2 = [&](double p) { return p * p * quad::softplus(w - b * p * p); };
        i2 = 4.0 * M_PI * quad::integrate(f2, pmu, p_hi, 1e-12).value;
    };

    auto diff_from_edges = [&](double b) {
        double i1, i2;
        edge_integrals(b, i1, i2);
        return 2.0 / (std::pow(2.0 * M_PI, 3.0) * b) * (i1 + i2);
    };

    // dP0 via the edge-correction route
    double d_beta = diff_from_edges(beta);
    double d_half = diff_from_edges(0.5 * beta);
    rep.delta_p0 = d_half - 2.0 * d_beta;

    // independent cross-check from the pressure quadrature
    double p_inf = ideal::pressure_zero_temperature(mu, 2);
    rep.delta_p0_cross = -2.0 * ideal::pressure(beta, mu, 2) +
                         ideal::pressure(0.5 * beta, mu, 2) + p_inf;

    edge_integrals(0.5 * beta, rep.i1, rep.i2);
    double b = 0.5 * beta;
    double z_b = std::exp(b * mu);
    rep.i1_bound = 2.0 * M_PI * std::sqrt(mu) / b * (std::isfinite(z_b) ? (z_b - 1.0) / z_b : 1.0);
    rep.i2_bound = 2.0 * M_PI * std::sqrt(mu) / b * (1.0 + 1.0 / (b * mu));

    rep.stated_bound = 2.0 / (3.0 * M_PI * M_PI) * std::sqrt(mu) / (beta * beta) *
                       (1.0 + 1.0 / (beta * mu));
    rep.provable_bound = 4.0 / (M_PI * M_PI) * std::sqrt(mu) / (beta * beta) *
                         (1.0 + 1.0 / (beta * mu));

    double slack = 1e-10 * std::max(rep.delta_p0, std::abs(rep.stated_bound));
    rep.nonnegative = rep.delta_p0 >= -slack;
    rep.pass_stated = rep.nonnegative && rep.delta_p0 <= rep.stated_bound + slack;
    rep.pass_provable = rep.nonnegative && rep.delta_p0 <= rep.provable_bound + slack;
    rep.pass_intermediate = rep.i1 <= rep.i1_bound * (1.0 + 1e-10) &&
                            rep.i2 <= rep.i2_bound * (1.0 + 1e-10);
    return rep;
}

} // namespace fermieos::box
