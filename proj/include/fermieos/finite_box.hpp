#ifndef FERMIEOS_FINITE_BOX_HPP
#define FERMIEOS_FINITE_BOX_HPP

namespace fermieos::box {

enum class Boundary { Dirichlet, Periodic };

/// Cubic box of side ell. Mode sums enumerate the exact lattice spectrum
/// ((pi/ell) N)^3 resp. ((2pi/ell) Z)^3 up to an energy cutoff chosen so the
/// analytic Gaussian tail bound is below 1e-13 of the sum; an explicit
/// energy_cutoff override is honored but rejected if its tail bound is too
/// large (never truncate silently).
struct BoxSpec {
    double side;
    Boundary boundary = Boundary::Dirichlet;
    double energy_cutoff = -1.0; // < 0: automatic
};

/// (2/(beta ell^3)) sum_modes ln(1 + z e^{-beta e}); spin factor 2.
double box_pressure(double beta, double mu, const BoxSpec& box);

/// Same sum restricted to modes with e <= e_max (Dirichlet).
double box_pressure_projected(double beta, double mu, double ell, double e_max);

/// (2/ell^3) sum over Dirichlet modes with e <= K rho0_ref^{2/3} of the
/// Fermi factor. Satisfies the result <= ideal density for the same (beta, mu).
double projected_density(double beta, double mu, double ell, double K, double rho0_ref);

enum class SandwichKind { ExpDecay, Fermi };

/// Both inequalities of the monotone-function sandwich
///   (2pi)^-3 Int f(p^2) >= ell^-3 Tr f(-Lap_D) >= (2pi)^-3 Int f(p^2)(1 - 3pi/(ell |p|))
/// for f(t) = exp(-beta t) or the Fermi factor at (beta, mu).
struct SandwichReport {
    double integral;
    double trace_density;
    double lower_bound;
    double slack; // allowed: 1e-12 * integral
    bool pass;
};
SandwichReport mode_sum_sandwich(SandwichKind kind, double beta, double mu, double ell);

/// Finite-size correction to the projected box pressure:
///   gap = (1/(pi^2 beta^{5/2})) [ (3 sqrt(beta)/(4 ell)) g(z) + (z/sqrt2) e^{-beta K rho0^{2/3}/2} ]
/// with g(z) = Int dp ln(1+z e^{-p^2})/|p| = 2 pi (-Li2(-z)). Also evaluates
/// the projected box pressure and asserts it stays above P0 - gap.
struct FiniteSizeGap {
    double g_term;
    double exp_term;
    double gap;
    double projected_pressure;
    double p0;
    bool pass;
};
FiniteSizeGap finite_size_gap(double beta, double mu, double ell, double K);

/// Closed-form Fermi-sea perturbation bounds: for 0 <= r <= mu and s >= 0,
///   (1/6pi^2)[-(2/5)(mu-r)^{5/2} + (2/5)mu^{5/2} - r mu^{3/2}] >= -(1/8pi^2) mu^{1/2} r^2
/// and the s-counterpart with (1+s/mu)^{1/2} on the right.
struct CurvatureReport {
    double lhs_r, rhs_r, lhs_s, rhs_s;
    bool pass;
};
CurvatureReport fermi_sea_curvature(double mu, double r, double s);

/// dP0 = -2 P0(beta,mu) + P0(beta/2,mu) + P0(inf,mu) >= 0 (convexity in T),
/// evaluated two independent ways: from the edge-correction integrals
///   P0(b) - P0(inf) = (2/((2pi)^3 b)) (I1 + I2),
///   I1 = Int_{p^2<=mu} ln(1+z^-1 e^{b p^2}),  I2 = Int_{p^2>=mu} ln(1+z e^{-b p^2}),
/// and from the pressure quadrature directly. stated_bound is
/// (2/3pi^2)(mu^{1/2}/beta^2)(1+1/(beta mu)); it is NOT attainable (it fails
/// by a factor approaching pi^2/4 in the degenerate limit — see the module
/// tests). provable_bound uses the same chain with the provable constants:
/// I1 <= 2pi (sqrt(mu)/b)(z-1)/z, I2 <= 2pi (sqrt(mu)/b)(1+1/(b mu)), giving
/// dP0 <= (4/pi^2)(mu^{1/2}/beta^2)(1+1/(beta mu)).
struct PressureGapReport {
    double delta_p0;
    double delta_p0_cross; // independent quadrature route
    double stated_bound;
    double provable_bound;
    double i1, i2;            // edge integrals at beta/2
    double i1_bound, i2_bound; // provable intermediate bounds at beta/2
    bool pass_stated;
    bool pass_provable;
    bool pass_intermediate;
    bool nonnegative;
};
PressureGapReport pressure_curvature_gap(double beta, double mu);

} // namespace fermieos::box

#endif
