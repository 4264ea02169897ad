#include "fermieos/error_budget.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/ideal_gas.hpp"
#include "fermieos/polylog.hpp"
#include "fermieos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fermieos::budget {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_positive(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0))
        throw InvalidInput(std::string("budget: ") + name + " must be positive");
}

} // namespace

double smoothstep_eta(double t) {
    if (t <= 1.0) return 0.0;
    if (t >= 2.0) return 1.0;
    double tau = t - 1.0;
    return tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
}

LowerSchedule LowerSchedule::make(double a, double rho0, double beta, double epsilon) {
    check_positive(a, "a");
    check_positive(rho0, "rho0");
    check_positive(beta, "beta");
    check_positive(epsilon, "epsilon");
    LowerSchedule s{a, rho0, beta, epsilon, 0, 0, 0, 0};
    double x3 = a * a * a * rho0;
    if (!(x3 < 1.0)) throw OutOfValidity("LowerSchedule: a^3 rho0 must be < 1");
    s.R = a * std::pow(x3, -1.0 / 81.0);
    s.s = a * std::pow(x3, -10.0 / 81.0);
    s.ell = std::pow(rho0, -1.0 / 3.0) * std::pow(x3, -28.0 / 81.0);
    s.K = std::pow(x3, -epsilon / 12.0);
    if (!(s.R < 0.5 * s.s && 0.5 * s.s < s.ell))
        throw OutOfValidity("LowerSchedule: ordering R < s/2 < ell fails (a^3 rho0 too large)");
    return s;
}

UpperSchedule UpperSchedule::make(double a, double rho0, double beta, double mu, double nu) {
    check_positive(a, "a");
    check_positive(rho0, "rho0");
    check_positive(beta, "beta");
    check_positive(nu, "nu");
    if (!std::isfinite(mu)) throw InvalidInput("UpperSchedule: mu must be finite");
    UpperSchedule s{a, rho0, beta, mu, nu, 0, 0, 0, 0, 0};
    double x = a * std::cbrt(rho0);
    if (!(x < 1.0)) throw OutOfValidity("UpperSchedule: a rho0^{1/3} must be < 1");
    double rm13 = std::pow(rho0, -1.0 / 3.0);
    s.R = rm13 * std::pow(x, 1.0 / 22.0);
    s.s = rm13 * std::pow(x, 1.0 / 66.0);
    s.eps = std::pow(x, 1.0 / 33.0);
    s.kappa = std::pow(x, 1.0 / 33.0 - nu);
    const double c_packing = 48.0; // nearest-neighbor kinetic constant, cited
    s.delta = 2.0 * M_PI * a * c_packing * rho0 * (2.0 * s.R) * (2.0 * s.R);
    if (!(s.kappa < 1.0)) throw OutOfValidity("UpperSchedule: kappa >= 1 (nu too large for x)");
    return s;
}

double error_sum(double R, double s, double n, double k, double ell, double a) {
    if (!(R > 0.0) || !(s > 0.0) || !(ell > 0.0) || n < 0.0 || k < 0.0 || a < 0.0)
        throw InvalidInput("error_sum: arguments must be positive (n, k, a >= 0)");
    double sl = s / ell;
    return a * R * R / (s * s * s) + s * s * k + a / R + std::pow(n, 8.0 / 3.0) * std::pow(sl, 5.0);
}

BudgetReport lower_bound_budget(const LowerSchedule& sc, double z, double r0) {
    check_positive(z, "z");
    if (r0 < 0.0) r0 = sc.a;
    BudgetReport rep;
    rep.x = sc.a * std::cbrt(sc.rho0);
    const double x = rep.x;
    const double eps = sc.epsilon;
    const double two_pi_a_rho2 = 2.0 * M_PI * sc.a * sc.rho0 * sc.rho0;
    const double a_rho2 = sc.a * sc.rho0 * sc.rho0;
    const double rho13 = std::cbrt(sc.rho0);
    const double rho23 = rho13 * rho13;

    auto bracket = [&](std::string name, double value, double exponent, bool exact) {
        rep.terms.push_back({std::move(name), value, value * a_rho2 / two_pi_a_rho2, exponent, exact});
        return value;
    };

    // bracket of the variational-energy estimate; every entry an exact power
    double total = 0.0;
    total += bracket("box_surface", 1.0 / (sc.ell * rho13), 28.0 / 27.0, true);
    total += bracket("spectral_spread",
                     sc.K * sc.K * rho13 * std::pow(sc.s, 1.5) / std::sqrt(sc.a),
                     4.0 / 9.0 - eps / 2.0, true);
    total += bracket("wave_distortion", sc.a * sc.R * sc.R / (sc.s * sc.s * sc.s), 28.0 / 27.0, true);
    double k_cut = sc.K * rho23; // kinetic-energy cutoff scale
    total += bracket("kinetic_cutoff", sc.s * sc.s * k_cut, 34.0 / 27.0 - eps / 4.0, true);
    total += bracket("core_size", sc.a / sc.R, 1.0 / 27.0, true);
    double n_occ = std::pow(sc.K, 1.5) * sc.rho0 * std::pow(sc.ell, 3.0);
    total += bracket("packing", std::pow(n_occ, 8.0 / 3.0) * std::pow(sc.s / sc.ell, 5.0),
                     1.0 / 27.0 - eps, true);
    rep.bracket_total = total;
    rep.target_scale = std::pow(x, 1.0 / 27.0 - eps);
    rep.bracket_over_target = total / rep.target_scale;

    // entropy-norm loss: per-particle and global factors of the overlap bound
    double t1 = sc.a * sc.R * sc.R / std::pow(sc.s, 3.0) + sc.s * sc.s * k_cut;
    double t2 = std::pow(sc.ell, 3.0) * std::pow(sc.K, 4.0) * sc.rho0 *
                std::pow(std::pow(sc.s, 3.0) * sc.rho0, 5.0 / 3.0);
    double ell3 = std::pow(sc.ell, 3.0);
    double entropy_rel;
    if (t1 < 1.0 && t2 < 1.0) {
        double ln_chi = n_occ * (-std::log1p(-t1)) + (-std::log1p(-t2));
        entropy_rel = ln_chi / (ell3 * sc.beta) / two_pi_a_rho2;
    } else {
        entropy_rel = kInf;
        rep.within_validity = false;
    }
    rep.terms.push_back({"entropy_norm", entropy_rel * two_pi_a_rho2, entropy_rel, 0.0, false});

    // finite-size corrections of the projected box pressure
    double g = 2.0 * M_PI * dilog_neg(z);
    double pref = 1.0 / (M_PI * M_PI * std::pow(sc.beta, 2.5));
    double g_term = pref * 3.0 * std::sqrt(sc.beta) / (4.0 * sc.ell) * g;
    rep.terms.push_back({"finite_size_g", g_term, g_term / two_pi_a_rho2, 0.0, false});
    double exp_term = pref * z / std::sqrt(2.0) * std::exp(-0.5 * sc.beta * sc.K * rho23);
    rep.terms.push_back({"finite_size_exp", exp_term, exp_term / two_pi_a_rho2, 0.0, false});

    // box-partition loss (1 - (1 + R0/ell)^-3) P0
    double p0 = std::pow(sc.beta, -2.5) * ideal::pressure(1.0, std::log(z), 2);
    double box_term = (1.0 - std::pow(1.0 + r0 / sc.ell, -3.0)) * p0;
    rep.terms.push_back({"box_partition", box_term, box_term / two_pi_a_rho2, 0.0, false});

    rep.total_relative = total * a_rho2 / two_pi_a_rho2 + entropy_rel +
                         (g_term + exp_term + box_term) / two_pi_a_rho2;
    return rep;
}

BudgetReport upper_bound_budget(const UpperSchedule& sc, double r0) {
    if (r0 < 0.0) r0 = sc.a;
    if (!(r0 < sc.R)) throw InvalidInput("upper_bound_budget: need r0 < R");
    BudgetReport rep;
    rep.x = sc.a * std::cbrt(sc.rho0);
    const double x = rep.x;
    const double two_pi_a_rho2 = 2.0 * M_PI * sc.a * sc.rho0 * sc.rho0;

    // `entry` is the dimensionless schedule expression; bracket entries sit
    // behind a C aq rho0^2 prefactor, the deficit entries behind 2 pi a rho0^2
    auto bracket_term = [&](std::string name, double entry, double exponent, bool exact) {
        rep.terms.push_back({std::move(name), entry, entry / (2.0 * M_PI), exponent, exact});
        return entry;
    };
    auto deficit_term = [&](std::string name, double entry, double exponent, bool exact) {
        rep.terms.push_back({std::move(name), entry, entry, exponent, exact});
        return entry;
    };

    double total = 0.0;
    total += bracket_term("momentum_window", sc.R * sc.R / (sc.eps * sc.s * sc.s), 1.0 / 33.0, true);
    total += bracket_term("density_matrix_drift", std::pow(x, 1.0 / 6.0 - sc.nu),
                          1.0 / 6.0 - sc.nu, true);
    double pack1 = 1.0 / (sc.rho0 * (std::pow(sc.R, 3.0) - std::pow(r0, 3.0)));
    double pack2 = 1.0 / (sc.rho0 * sc.eps * sc.R * sc.s * sc.s);
    bool branch1 = pack1 >= pack2;
    double pack_exp = branch1 ? (1.0 / 33.0 - sc.nu) : (2.0 / 33.0 - sc.nu);
    total += bracket_term(branch1 ? "drift_packing_volume" : "drift_packing_window",
                          std::max(pack1, pack2) * std::pow(x, 1.0 / 6.0 - sc.nu), pack_exp,
                          branch1 ? (r0 == 0.0) : true);
    rep.bracket_total = total;
    rep.target_scale = std::pow(x, 1.0 / 33.0 - sc.nu);
    rep.bracket_over_target = total / rep.target_scale;

    // direct pressure-deficit pieces of the main estimate
    deficit_term("delta", sc.delta, 12.0 / 11.0, true);
    deficit_term("eps", sc.eps, 1.0 / 33.0, true);
    deficit_term("kappa", sc.kappa, 1.0 / 33.0 - sc.nu, true);

    // dispersion rescaling: ((1-delta)^{-3/2} - 1) P0
    double scaling_rel;
    if (sc.delta < 1.0) {
        double p0 = ideal::pressure(sc.beta, sc.mu, 2);
        scaling_rel = (std::pow(1.0 - sc.delta, -1.5) - 1.0) * p0 / two_pi_a_rho2;
    } else {
        scaling_rel = kInf;
        rep.within_validity = false;
    }
    rep.terms.push_back(
        {"pressure_rescaling", scaling_rel * two_pi_a_rho2, scaling_rel, 0.0, false});

    // Gaussian tail of the cutoff dispersion
    double tail_rel;
    if (sc.delta < 0.5) {
        double expo = -sc.beta * ((0.5 - sc.delta) * sc.kappa / (sc.s * sc.s) - sc.mu);
        double tail = std::exp(std::min(expo, 700.0)) /
                      (std::sqrt(2.0) * M_PI * M_PI * std::pow(sc.beta, 2.5) *
                       (1.0 - 2.0 * sc.delta) * sc.kappa);
        tail_rel = tail / two_pi_a_rho2;
    } else {
        tail_rel = kInf;
        rep.within_validity = false;
    }
    rep.terms.push_back({"kinetic_tail", tail_rel * two_pi_a_rho2, tail_rel, 0.0, false});

    rep.total_relative = total + sc.delta + sc.eps + sc.kappa +
                         (std::isfinite(scaling_rel) ? scaling_rel : kInf) +
                         (std::isfinite(tail_rel) ? tail_rel : kInf);
    return rep;
}

namespace {

// s = 1 radial transform h1(u) = (2pi)^{-3/2} (4pi/u) Int_0^2 p (1-eta(p)) sin(p u) dp,
// panels split at the zeros of sin.
double h_profile(double u) {
    const double pmax = 2.0;
    auto integrand_0 = [](double p) { return p * p * (1.0 - smoothstep_eta(p)); };
    if (u < 1e-10) {
        return std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI *
               quad::gauss_legendre(integrand_0, 0.0, pmax, 31);
    }
    auto integrand = [&](double p) { return p * (1.0 - smoothstep_eta(p)) * std::sin(p * u); };
    double total = 0.0;
    double step = M_PI / u;
    double a = 0.0;
    while (a < pmax) {
        double b = std::min(a + step, pmax);
        total += quad::gauss_legendre(integrand, a, b, 20);
        a = b;
    }
    return std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI * total / u;
}

double sup_window(const std::vector<double>& u, const std::vector<double>& h, int i, double rho) {
    // sup over grid points inside [u_i - rho, u_i + rho] plus the exact endpoints
    const double du = u[1] - u[0];
    const int win = static_cast<int>(std::ceil(rho / du));
    const int n = static_cast<int>(u.size());
    double hi = h[i];
    double best = 0.0;
    for (int j = std::max(0, i - win); j <= std::min(n - 1, i + win); ++j) {
        if (std::abs(u[j] - u[i]) <= rho) best = std::max(best, std::abs(h[j] - hi));
    }
    double lo_pt = std::max(0.0, u[i] - rho);
    best = std::max(best, std::abs(h_profile(lo_pt) - hi));
    if (u[i] + rho <= u[n - 1] + du)
        best = std::max(best, std::abs(h_profile(u[i] + rho) - hi));
    return best;
}

double trapezoid_radial(const std::vector<double>& u, const std::vector<double>& f) {
    // 4 pi Int f(u) u^2 du on the uniform grid
    const double du = u[1] - u[0];
    double s = 0.0;
    for (size_t i = 0; i + 1 < u.size(); ++i) {
        double a = f[i] * u[i] * u[i], b = f[i + 1] * u[i + 1] * u[i + 1];
        s += 0.5 * (a + b) * du;
    }
    return 4.0 * M_PI * s;
}

} // namespace

SoftPotentialProfile soft_potential_profile(double s, double R, double r0, int grid_n,
                                            double u_max) {
    check_positive(s, "s");
    check_positive(R, "R");
    if (!(r0 >= 0.0 && r0 < R)) throw InvalidInput("soft_potential_profile: need 0 <= r0 < R");
    if (R > 0.25 * s * (1.0 + 1e-12))
        throw InvalidInput("soft_potential_profile: construction requires R <= s/4");

    SoftPotentialProfile prof;
    prof.s = s;
    prof.R = R;
    prof.r0 = r0;
    const double rho = R / s;

    auto build = [&](int n) {
        std::vector<double> u(n), h(n), f(n);
        for (int i = 0; i < n; ++i) u[i] = u_max * i / (n - 1);
        for (int i = 0; i < n; ++i) h[i] = h_profile(u[i]);
        for (int i = 0; i < n; ++i) f[i] = sup_window(u, h, i, rho);
        return std::tuple{u, h, f};
    };

    auto [u, h, f] = build(grid_n);
    auto [u2, h2, f2] = build(grid_n / 2 + 1);
    double max_f = *std::max_element(f.begin(), f.end());
    double max_f2 = *std::max_element(f2.begin(), f2.end());
    prof.resolution_error = std::abs(max_f - max_f2) / std::max(max_f, 1e-300);
    if (prof.resolution_error > 0.01)
        throw ResolutionError("soft_potential_profile: f_R supremum not converged to 1% "
                              "between grid refinements");

    prof.u = std::move(u);
    prof.h = std::move(h);
    prof.f = std::move(f);
    prof.integral_f = trapezoid_radial(prof.u, prof.f); // s-independent by scaling
    prof.w_inf = 2.0 / (M_PI * M_PI) * max_f * prof.integral_f / (s * s * s);
    prof.w_one = 2.0 / (M_PI * M_PI) * prof.integral_f * prof.integral_f;

    // annulus normalization check: U = 3 (R^3 - r0^3)^{-1} on [r0, R]
    double norm = 3.0 / (std::pow(R, 3.0) - std::pow(r0, 3.0));
    auto u_int = [&](double r) { return norm * r * r; };
    prof.u_integral = 4.0 * M_PI * quad::integrate(u_int, r0, R, 1e-10).value;
    return prof;
}

PackedSumReport packed_sum_bound(const SoftPotentialProfile& prof) {
    const double rho = prof.R / prof.s;
    const double spacing = 2.0 * rho; // scaled lattice constant
    const double u_max = prof.u.back();
    const double du = prof.u[1] - prof.u[0];
    const double c_w = 2.0 / (M_PI * M_PI) * prof.integral_f;

    auto w_scaled = [&](double d) {
        if (d >= u_max) return 0.0;
        int i = static_cast<int>(d / du);
        double t = d / du - i;
        double f = prof.f[i] * (1.0 - t) + prof.f[std::min<size_t>(i + 1, prof.f.size() - 1)] * t;
        return c_w * f;
    };

    auto lattice_sum = [&](double offset) {
        const int kmax = static_cast<int>(u_max / spacing) + 1;
        const double u2 = u_max * u_max;
        double sum = 0.0;
        for (int i = -kmax; i <= kmax; ++i) {
            double dx = i * spacing - offset, dx2 = dx * dx;
            if (dx2 > u2) continue;
            for (int j = -kmax; j <= kmax; ++j) {
                double dy = j * spacing - offset, dxy2 = dx2 + dy * dy;
                if (dxy2 > u2) continue;
                for (int k = -kmax; k <= kmax; ++k) {
                    double dz = k * spacing - offset, d2 = dxy2 + dz * dz;
                    if (d2 <= u2) sum += w_scaled(std::sqrt(d2));
                }
            }
        }
        return sum;
    };

    PackedSumReport rep{};
    // scaled sums; the true sum is s^-3 times these, and the true bound scale
    // 1/(R s^2) is s^-3 / rho, so the ratio is scale-free
    rep.sum_mid = lattice_sum(0.5 * spacing) / (prof.s * prof.s * prof.s);
    rep.sum_lattice = lattice_sum(0.0) / (prof.s * prof.s * prof.s);
    rep.max_sum = std::max(rep.sum_mid, rep.sum_lattice);
    rep.bound_scale = 1.0 / (prof.R * prof.s * prof.s);
    rep.ratio = rep.max_sum / rep.bound_scale;
    return rep;
}

KineticTailReport kinetic_tail_comparison(double beta, double mu, double s, double delta,
                                          double kappa) {
    check_positive(beta, "beta");
    check_positive(s, "s");
    if (!(delta > 0.0 && delta < 1.0 && kappa > 0.0 && kappa < 1.0))
        throw InvalidInput("kinetic_tail_comparison: need 0 < delta, kappa < 1");
    if (!std::isfinite(mu)) throw InvalidInput("kinetic_tail_comparison: mu must be finite");

    KineticTailReport rep{};
    const double w = beta * mu;
    auto chi = [&](double p) { return smoothstep_eta(s * p); };
    // ln((1+A)/(1+B)) with B = e^{w - beta(1-delta)p^2}, A = B e^{gap}, where
    // gap = beta(1-delta)(1-kappa) p^2 chi^2 is formed as a product (the
    // difference of the two dispersions cancels catastrophically otherwise)
    auto integrand = [&](double p) {
        double c = chi(p);
        double full = beta * (1.0 - delta) * p * p;
        double gap = full * (1.0 - kappa) * c * c;
        double x2 = w - full; // ln B
        double la = x2 + gap; // ln A
        if (la > 30.0)
            return p * p * (la + std::log1p(std::exp(-la)) - quad::softplus(x2));
        double b_val = std::exp(x2);
        double t = (gap > 40.0) ? std::exp(la) / (1.0 + b_val)
                                : b_val * std::expm1(gap) / (1.0 + b_val);
        return p * p * std::log1p(t);
    };
    double p_lo = 1.0 / s;
    double p_hi = std::sqrt((std::max(w, 0.0) + 80.0) / (beta * (1.0 - delta) * kappa));
    double integral = quad::integrate(integrand, p_lo, std::max(p_hi, p_lo * 2.0), 1e-11, 1e-300,
                                      {2.0 / s})
                          .value;
    rep.integral = 2.0 / (std::pow(2.0 * M_PI, 3.0) * beta) * 4.0 * M_PI * integral;

    rep.delta_valid = delta < 0.5;
    if (rep.delta_valid) {
        double expo = -beta * ((0.5 - delta) * kappa / (s * s) - mu);
        rep.bound = std::exp(std::min(expo, 700.0)) /
                    (std::sqrt(2.0) * M_PI * M_PI * std::pow(beta, 2.5) *
                     (1.0 - 2.0 * delta) * kappa);
        rep.pass = rep.integral <= rep.bound * (1.0 + 1e-10) + 1e-300;
    } else {
        rep.bound = kInf;
        rep.pass = false;
    }
    return rep;
}

} // namespace fermieos::budget
