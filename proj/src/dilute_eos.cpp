#include "fermieos/dilute_eos.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/ideal_gas.hpp"

#include <cmath>

namespace fermieos::eos {

namespace {

void check_common(double beta, double a, int q, double alpha) {
    if (!std::isfinite(beta) || !(beta > 0.0)) throw InvalidInput("eos: beta must be > 0");
    if (!std::isfinite(a) || a < 0.0) throw InvalidInput("eos: scattering length a must be >= 0");
    if (q < 1) throw InvalidInput("eos: q must be >= 1");
    if (!(alpha > 0.0) || !(alpha < 1.0 / 33.0))
        throw InvalidInput("eos: alpha must lie in (0, 1/33)");
}

void fill_diagnostics(EosReport& r, double alpha, const ValidityThresholds& th) {
    r.z = std::exp(r.beta * r.mu); // may be +inf; reported as-is
    r.x = r.a * std::cbrt(r.rho0);
    r.a3rho = r.a * r.a * r.a * r.rho0;
    r.t_over_tf = 1.0 / (r.beta * ideal::fermi_temperature(r.rho0, r.q));
    r.envelope_scale = r.a * r.rho0 * r.rho0 * std::pow(r.x, alpha);
    r.flag_a3rho_large = r.a3rho > th.a3rho_max;
    r.flag_z_small = !(r.beta * r.mu >= std::log(th.z_min));
}

} // namespace

EosReport pressure_report(double beta, double mu, double a, int q, double alpha,
                          const ValidityThresholds& th) {
    check_common(beta, a, q, alpha);
    if (!std::isfinite(mu)) throw InvalidInput("eos: mu must be finite");
    EosReport r;
    r.beta = beta;
    r.mu = mu;
    r.q = q;
    r.a = a;
    r.p0 = ideal::pressure(beta, mu, q);
    r.rho0 = ideal::density(beta, mu, q);
    r.p = r.p0 - 4.0 * M_PI * a * (1.0 - 1.0 / q) * r.rho0 * r.rho0;
    fill_diagnostics(r, alpha, th);
    return r;
}

EosReport free_energy_report(double beta, double rho, double a, int q, double alpha,
                             const ValidityThresholds& th) {
    check_common(beta, a, q, alpha);
    if (!std::isfinite(rho) || !(rho > 0.0)) throw InvalidInput("eos: rho must be > 0");
    double mu0 = ideal::mu_from_density(beta, rho, q);
    EosReport r = pressure_report(beta, mu0, a, q, alpha, th);
    r.rho0 = rho; // inversion target is the reference density
    r.f0 = mu0 * rho - r.p0;
    r.f = r.f0 + 4.0 * M_PI * a * (1.0 - 1.0 / q) * rho * rho;
    fill_diagnostics(r, alpha, th);
    return r;
}

double polarized_pressure(double beta, double mu, double m, double a, PolarizedPoint* out) {
    if (!std::isfinite(beta) || !(beta > 0.0)) throw InvalidInput("eos: beta must be > 0");
    if (!std::isfinite(mu) || !std::isfinite(m)) throw InvalidInput("eos: non-finite mu or m");
    if (!std::isfinite(a) || a < 0.0) throw InvalidInput("eos: a must be >= 0");
    double mu_up = mu - 0.5 * m;
    double mu_dn = mu + 0.5 * m;
    double rho_up = ideal::density(beta, mu_up, 1);
    double rho_dn = ideal::density(beta, mu_dn, 1);
    double p = ideal::pressure(beta, mu_up, 1) + ideal::pressure(beta, mu_dn, 1) -
               8.0 * M_PI * a * rho_up * rho_dn;
    if (out) *out = {beta, mu, m, rho_up, rho_dn};
    return p;
}

double ground_state_energy_density(double rho, double a, int q) {
    if (!std::isfinite(rho) || !(rho > 0.0)) throw InvalidInput("eos: rho must be > 0");
    if (!std::isfinite(a) || a < 0.0) throw InvalidInput("eos: a must be >= 0");
    if (q < 1) throw InvalidInput("eos: q must be >= 1");
    double kinetic = 0.6 * std::pow(6.0 * M_PI * M_PI / q, 2.0 / 3.0) * std::pow(rho, 5.0 / 3.0);
    return kinetic + 4.0 * M_PI * a * rho * rho * (1.0 - 1.0 / q);
}

double interaction_energy_2d(double rho, double a) {
    if (!std::isfinite(rho) || !(rho > 0.0)) throw InvalidInput("eos: rho must be > 0");
    if (!std::isfinite(a) || !(a > 0.0)) throw InvalidInput("eos: a must be > 0");
    double a2rho = a * a * rho;
    if (a2rho > 0.1)
        throw OutOfValidity("interaction_energy_2d: a^2 rho > 0.1, too close to the log zero");
    return 2.0 * M_PI * rho * rho / std::abs(std::log(a2rho));
}

DensityEnvelope density_envelope(double beta, double mu, double a, int q, double alpha) {
    check_common(beta, a, q, alpha);
    if (!std::isfinite(mu)) throw InvalidInput("eos: mu must be finite");
    DensityEnvelope env;
    double rho0 = ideal::density(beta, mu, q);
    double x = a * std::cbrt(rho0);
    env.scale = (a == 0.0) ? 0.0 : std::pow(x, 0.5 * (1.0 + alpha));
    env.probe_delta = env.scale * std::max(mu, 1.0 / beta);
    env.conjectured_density_shift = -2.0 * M_PI * a * ideal::density_dmu(beta, mu, q);
    env.conjectural = true;
    return env;
}

} // namespace fermieos::eos
