#ifndef FERMIEOS_IDEAL_GAS_HPP
#define FERMIEOS_IDEAL_GAS_HPP

namespace fermieos::ideal {

// Units: hbar = 1, 2m = 1, k_B = 1. Single-particle energy is p^2, so beta
// carries dimension length^2 and mu length^-2. All functions below work in
// log-fugacity w = beta*mu internally and are safe arbitrarily deep in the
// degenerate regime where z = e^{beta*mu} overflows.

/// A grand-canonical state point with spin multiplicity q. Stores the
/// fugacity; construction rejects parameters for which z is not finite.
struct ThermoPoint {
    double beta;
    double mu;
    int q;
    double z;

    ThermoPoint(double beta, double mu, int q);
    /// |z - exp(beta*mu)| / z, for points restored from serialized data.
    double fugacity_residual() const;
};

struct Values {
    double p0;   // pressure
    double rho0; // number density
    double u0;   // energy density, u0 = (3/2) p0
    double s0;   // entropy density, s0 = beta (u0 + p0 - mu rho0)
};

/// Pressure of the free spin-q gas: (q/beta) (2pi)^-3 Int dp ln(1+z e^{-beta p^2}).
double pressure(double beta, double mu, int q);
double pressure(const ThermoPoint& pt);

/// Density: q (2pi)^-3 Int dp (1 + z^-1 e^{beta p^2})^-1 = dP/dmu.
double density(double beta, double mu, int q);
double density(const ThermoPoint& pt);

/// dRho/dmu > 0 (compressibility integral), used by the mu inversion.
double density_dmu(double beta, double mu, int q);

/// Unique mu with density(beta, mu, q) = rho. Bisection bracket, then
/// safeguarded Newton; relative residual <= 1e-10.
double mu_from_density(double beta, double rho, int q);

/// T_F = (6 pi^2 / q)^{2/3} rho^{2/3}.
double fermi_temperature(double rho, int q);

/// Pressure, density, energy and entropy densities at one state point.
Values thermo_values(double beta, double mu, int q);
Values thermo_values(const ThermoPoint& pt);

/// T = 0 limit of the pressure: (q/(15 pi^2)) max(mu, 0)^{5/2}.
double pressure_zero_temperature(double mu, int q);

} // namespace fermieos::ideal

#endif
