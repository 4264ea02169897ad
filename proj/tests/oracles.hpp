// Test-side reference values and brute-force oracles. Everything here is
// independent of the library's evaluation paths: plain alternating partial
// sums, closed-form constants, and finite differences only.
#ifndef FERMIEOS_TEST_ORACLES_HPP
#define FERMIEOS_TEST_ORACLES_HPP

#include <cmath>
#include <stdexcept>

namespace oracle {

// eta(s) = (1 - 2^{1-s}) zeta(s); the z = 1 values of the alternating series
inline constexpr double kEta52 = 0.86719988901218414; // sum (-1)^{k+1} k^{-5/2}
inline constexpr double kEta32 = 0.76514702462540795; // sum (-1)^{k+1} k^{-3/2}
inline constexpr double kEta2 = M_PI * M_PI / 12.0;

// plain partial sums of sum_{k>=1} (-1)^{k+1} z^k / k^s for z < 1; the first
// omitted term bounds the error, so the tolerance is explicit
inline double alt_series(double s, double z, double tol = 1e-13) {
    if (z >= 1.0) throw std::invalid_argument("alt_series oracle needs z < 1");
    double sum = 0.0, sign = 1.0;
    double zk = 1.0;
    for (int k = 1; k < 2000000; ++k) {
        zk *= z;
        double term = zk / std::pow(static_cast<double>(k), s);
        if (term < tol) return sum; // alternating: error < first omitted term
        sum += sign * term;
        sign = -sign;
    }
    throw std::runtime_error("alt_series oracle did not reach tolerance");
}

// -Li_s(-z) for the acceptance grid: series for z < 1, eta constants at z = 1
inline double fd_polylog_ref(double s, double z) {
    if (z == 1.0) {
        if (s == 2.5) return kEta52;
        if (s == 1.5) return kEta32;
        if (s == 2.0) return kEta2;
        throw std::invalid_argument("no frozen eta for this order");
    }
    return alt_series(s, z);
}

// ideal-gas reference values through the series route only:
// P0 = q (4 pi beta)^{-3/2} beta^{-1} (-Li_{5/2}(-z)),
// rho0 = q (4 pi beta)^{-3/2} (-Li_{3/2}(-z))
inline double pressure_ref(double beta, double z, int q) {
    return q * std::pow(4.0 * M_PI * beta, -1.5) / beta * fd_polylog_ref(2.5, z);
}
inline double density_ref(double beta, double z, int q) {
    return q * std::pow(4.0 * M_PI * beta, -1.5) * fd_polylog_ref(1.5, z);
}

// frozen module-level constants (30-digit arithmetic upstream)
inline constexpr double kP0_beta1_z1_q2 = 0.0389344830937405;
inline constexpr double kRho0_beta1_z1_q2 = 0.034352638038777741;
inline constexpr double kEF = 9.5707800006273061;          // (3 pi^2)^{2/3}
inline constexpr double kGroundE = 5.7424680003763836;     // (3/5)(3 pi^2)^{2/3}
inline constexpr double kRhoT0_mu1 = 0.033773727880779257; // 1/(3 pi^2)

} // namespace oracle

#endif
