#ifndef FERMIEOS_DILUTE_EOS_HPP
#define FERMIEOS_DILUTE_EOS_HPP

#include <cmath>

namespace fermieos::eos {

/// Interaction-corrected state-point report. Pressure-parameterized calls
/// leave f0/f as NaN; density-parameterized calls fill every field.
/// `z` may be +inf deep in the degenerate regime (beta*mu > ~709).
struct EosReport {
    double beta = 0.0;
    double mu = 0.0;
    int q = 2;
    double a = 0.0;
    double z = 0.0;
    double rho0 = 0.0;           // reference ideal density
    double x = 0.0;              // diluteness a * rho0^{1/3}
    double a3rho = 0.0;          // a^3 * rho0
    double t_over_tf = 0.0;      // 1/(beta T_F)
    double p0 = 0.0;
    double p = 0.0;
    double f0 = std::nan("");
    double f = std::nan("");
    double envelope_scale = 0.0; // a * rho0^2 * x^alpha (scale only, no constant)
    bool flag_a3rho_large = false; // a^3 rho0 > threshold
    bool flag_z_small = false;     // z < threshold
};

struct ValidityThresholds {
    double a3rho_max = 1e-2;
    double z_min = 0.1;
};

/// P = P0(beta,mu) - 4 pi a (1 - 1/q) rho0(beta,mu)^2 with diagnostics.
EosReport pressure_report(double beta, double mu, double a, int q, double alpha = 1.0 / 34.0,
                          const ValidityThresholds& th = {});

/// f = f0(beta,rho) + 4 pi a (1 - 1/q) rho^2, with f0 = mu0 rho - P0(beta,mu0)
/// and mu0 the ideal inversion of rho. Also fills the pressure fields at mu0.
EosReport free_energy_report(double beta, double rho, double a, int q, double alpha = 1.0 / 34.0,
                             const ValidityThresholds& th = {});

struct PolarizedPoint {
    double beta = 0.0;
    double mu = 0.0;
    double m = 0.0; // spin-field coupling; mu_up = mu - m/2, mu_down = mu + m/2
    double rho_up = 0.0;
    double rho_down = 0.0;
};

/// Two single-species gases at shifted chemical potentials:
/// P = P0_up + P0_down - 8 pi a rho_up rho_down.
double polarized_pressure(double beta, double mu, double m, double a, PolarizedPoint* out = nullptr);

/// (3/5)(6 pi^2/q)^{2/3} rho^{5/3} + 4 pi a rho^2 (1 - 1/q).
double ground_state_energy_density(double rho, double a, int q);

/// 2 pi rho^2 / |ln(a^2 rho)|; requires a^2 rho <= 0.1.
double interaction_energy_2d(double rho, double a);

struct DensityEnvelope {
    double scale = 0.0;       // (a rho0^{1/3})^{(1+alpha)/2}
    double probe_delta = 0.0; // scale * max(mu, 1/beta)
    /// -2 pi a dRho0/dmu: the conjectured leading density shift. Not proven;
    /// consumers must treat it as a conjecture, never as a bound.
    double conjectured_density_shift = 0.0;
    bool conjectural = true;
};

DensityEnvelope density_envelope(double beta, double mu, double a, int q, double alpha = 1.0 / 34.0);

} // namespace fermieos::eos

#endif
