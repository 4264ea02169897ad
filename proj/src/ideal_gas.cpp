#include "fermieos/ideal_gas.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/quadrature.hpp"

#include <cmath>
#include <string>

namespace fermieos::ideal {

namespace {

void check_point(double beta, double mu, int q) {
    if (!std::isfinite(beta) || !(beta > 0.0))
        throw InvalidInput("ideal: beta must be positive and finite");
    if (!std::isfinite(mu)) throw InvalidInput("ideal: mu must be finite");
    if (q < 1) throw InvalidInput("ideal: spin multiplicity q must be >= 1");
}

// One-dimensional reduced integrals in t = beta p^2, log-fugacity w = beta mu:
//   pressure:  I_P(w) = Int_0^inf sqrt(t) ln(1 + e^{w-t}) dt
//   density:   I_D(w) = Int_0^inf sqrt(t) / (1 + e^{t-w}) dt
//   dmu:       I_D'(w) = Int_0^inf sqrt(t) / (4 cosh^2((t-w)/2)) dt
// The sqrt singularity at t = 0 is absorbed by t = y^2 on [0, 1]; beyond
// T = max(50, w + 50) the integrand is below e^{-50} of its scale.
enum class Kernel { Pressure, Density, DensityDmu };

double kernel(Kernel k, double t, double w) {
    switch (k) {
        case Kernel::Pressure: return quad::softplus(w - t);
        case Kernel::Density: {
            double x = t - w;
            if (x > 36.0) return std::exp(-x);
            return 1.0 / (1.0 + std::exp(x));
        }
        case Kernel::DensityDmu: {
            double x = 0.5 * (t - w);
            if (std::abs(x) > 20.0) return std::exp(-2.0 * std::abs(x));
            double c = std::cosh(x);
            return 0.25 / (c * c);
        }
    }
    return 0.0;
}

double reduced_integral(Kernel k, double w) {
    const double T = std::max(50.0, w + 50.0);
    std::vector<double> brk;
    if (w > 0.0) brk = {w - 10.0, w - 1.0, w, w + 1.0, w + 10.0};
    auto head = [&](double y) { return 2.0 * y * y * kernel(k, y * y, w); };
    auto tail = [&](double t) { return std::sqrt(t) * kernel(k, t, w); };
    double v = quad::integrate(head, 0.0, 1.0, 1e-13).value;
    v += quad::integrate(tail, 1.0, T, 1e-13, 1e-300 * std::abs(v) + 1e-320, brk).value;
    return v;
}

} // namespace

ThermoPoint::ThermoPoint(double beta_, double mu_, int q_) : beta(beta_), mu(mu_), q(q_) {
    check_point(beta, mu, q);
    z = std::exp(beta * mu);
    if (!(z > 0.0) || !std::isfinite(z))
        throw InvalidInput("ThermoPoint: fugacity exp(beta*mu) is not representable");
}

double ThermoPoint::fugacity_residual() const {
    return std::abs(z - std::exp(beta * mu)) / z;
}

double pressure(double beta, double mu, int q) {
    check_point(beta, mu, q);
    double w = beta * mu;
    return q / (4.0 * M_PI * M_PI * std::pow(beta, 2.5)) * reduced_integral(Kernel::Pressure, w);
}

double pressure(const ThermoPoint& pt) { return pressure(pt.beta, pt.mu, pt.q); }

double density(double beta, double mu, int q) {
    check_point(beta, mu, q);
    double w = beta * mu;
    return q / (4.0 * M_PI * M_PI * std::pow(beta, 1.5)) * reduced_integral(Kernel::Density, w);
}

double density(const ThermoPoint& pt) { return density(pt.beta, pt.mu, pt.q); }

double density_dmu(double beta, double mu, int q) {
    check_point(beta, mu, q);
    double w = beta * mu;
    return q / (4.0 * M_PI * M_PI * std::sqrt(beta)) * reduced_integral(Kernel::DensityDmu, w);
}

double mu_from_density(double beta, double rho, int q) {
    if (!std::isfinite(beta) || !(beta > 0.0)) throw InvalidInput("mu_from_density: beta <= 0");
    if (!std::isfinite(rho) || !(rho > 0.0)) throw InvalidInput("mu_from_density: rho <= 0");
    if (q < 1) throw InvalidInput("mu_from_density: q < 1");

    // classical and degenerate guesses bracket the monotone density
    double z_cl = rho * std::pow(4.0 * M_PI * beta, 1.5) / q;
    double mu_lo = std::log(z_cl) / beta - 10.0 / beta;
    double mu_hi = std::pow(6.0 * M_PI * M_PI * rho / q, 2.0 / 3.0) + 10.0 / beta;
    for (int it = 0; density(beta, mu_lo, q) > rho; ++it) {
        if (it > 200) throw NumericError("mu_from_density: no lower bracket");
        mu_lo -= std::max(10.0 / beta, std::abs(mu_lo));
    }
    for (int it = 0; density(beta, mu_hi, q) < rho; ++it) {
        if (it > 200) throw NumericError("mu_from_density: no upper bracket");
        mu_hi += std::max(10.0 / beta, std::abs(mu_hi));
    }

    double mu = 0.5 * (mu_lo + mu_hi);
    for (int it = 0; it < 200; ++it) {
        double r = density(beta, mu, q);
        if (std::abs(r - rho) <= 1e-11 * rho) return mu;
        if (r < rho) mu_lo = mu; else mu_hi = mu;
        double step = (r - rho) / density_dmu(beta, mu, q);
        double next = mu - step;
        if (!(next > mu_lo && next < mu_hi)) next = 0.5 * (mu_lo + mu_hi);
        mu = next;
    }
    double res = std::abs(density(beta, mu, q) - rho) / rho;
    if (res > 1e-10)
        throw NumericError("mu_from_density: Newton/bisection did not converge", res);
    return mu;
}

double fermi_temperature(double rho, int q) {
    if (!std::isfinite(rho) || !(rho > 0.0)) throw InvalidInput("fermi_temperature: rho <= 0");
    if (q < 1) throw InvalidInput("fermi_temperature: q < 1");
    return std::pow(6.0 * M_PI * M_PI / q, 2.0 / 3.0) * std::pow(rho, 2.0 / 3.0);
}

Values thermo_values(double beta, double mu, int q) {
    Values v;
    v.p0 = pressure(beta, mu, q);
    v.rho0 = density(beta, mu, q);
    v.u0 = 1.5 * v.p0;
    v.s0 = beta * (v.u0 + v.p0 - mu * v.rho0);
    return v;
}

Values thermo_values(const ThermoPoint& pt) { return thermo_values(pt.beta, pt.mu, pt.q); }

double pressure_zero_temperature(double mu, int q) {
    if (q < 1) throw InvalidInput("pressure_zero_temperature: q < 1");
    if (mu <= 0.0) return 0.0;
    return q / (15.0 * M_PI * M_PI) * std::pow(mu, 2.5);
}

} // namespace fermieos::ideal
