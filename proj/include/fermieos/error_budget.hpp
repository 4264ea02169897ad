#ifndef FERMIEOS_ERROR_BUDGET_HPP
#define FERMIEOS_ERROR_BUDGET_HPP

#include <string>
#include <vector>

namespace fermieos::budget {

// Scalar evaluation of the trial-state and soft-potential error budgets under
// the published parameter schedules, with every unnamed constant set to 1
// (reports carry constants_as_one = true). Budgets certify exponents in the
// diluteness x = a rho0^{1/3}, not constants.

/// Lower-bound schedule: R = a (a^3 rho0)^{-1/81}, s = a (a^3 rho0)^{-10/81},
/// ell = rho0^{-1/3} (a^3 rho0)^{-28/81}, K = (a^3 rho0)^{-eps/12}.
struct LowerSchedule {
    double a, rho0, beta, epsilon;
    double R, s, ell, K; // derived
    static LowerSchedule make(double a, double rho0, double beta, double epsilon);
};

/// Upper-bound schedule: R = rho0^{-1/3} x^{1/22}, s = rho0^{-1/3} x^{1/66},
/// eps = x^{1/33}, kappa = x^{1/33 - nu}, delta = 2 pi a c rho0 (2R)^2, c = 48.
struct UpperSchedule {
    double a, rho0, beta, mu, nu;
    double R, s, eps, kappa, delta; // derived
    static UpperSchedule make(double a, double rho0, double beta, double mu, double nu);
};

/// a R^2/s^3 + s^2 k + a/R + n^{8/3} (s/ell)^5.
double error_sum(double R, double s, double n, double k, double ell, double a);

struct BudgetTerm {
    std::string name;
    double value;        // raw value of the term
    double relative;     // contribution relative to 2 pi a rho0^2
    double exponent;     // algebraic power of x (when exact_power)
    bool exact_power;
};

struct BudgetReport {
    std::vector<BudgetTerm> terms;
    double x;                  // a rho0^{1/3}
    double bracket_total;      // sum of the schedule bracket terms
    double target_scale;       // x^{1/27-eps} (lower) or x^{1/33-nu} (upper)
    double bracket_over_target;
    double total_relative;     // all terms relative to 2 pi a rho0^2
    bool constants_as_one = true;
    bool within_validity = true;
};

/// Per-term lower-bound budget at fugacity z; r0 < 0 means r0 = a.
BudgetReport lower_bound_budget(const LowerSchedule& sched, double z, double r0 = -1.0);

/// Per-term upper-bound budget; r0 < 0 means r0 = a, r0 = 0 keeps every
/// bracket term an exact power law.
BudgetReport upper_bound_budget(const UpperSchedule& sched, double r0 = -1.0);

/// Numerical construction of the momentum-cutoff convolution kernel:
/// h = FT(1 - chi) with chi(p) = eta(s p) (quintic smoothstep on [1,2]),
/// f_R(x) = sup_{|y|<=R} |h(x-y) - h(x)|, w_R = (2/pi^2) f_R Int f_R.
/// Profiles are computed at s = 1 and rescaled (h_s(r) = s^-3 h_1(r/s)).
struct SoftPotentialProfile {
    double s, R, r0;
    std::vector<double> u;  // scaled radius grid (r/s)
    std::vector<double> h;  // s = 1 transform profile
    std::vector<double> f;  // scaled f_R
    double integral_f;      // Int f_R d^3x (s-independent)
    double w_inf;           // ||w_R||_inf  ~ R^2/s^5 at fixed R/s
    double w_one;           // ||w_R||_1    ~ R^2/s^2
    double u_integral;      // Int U d^3x (= 4 pi for the annulus profile)
    double resolution_error; // relative drift of ||f||_inf under grid refinement
};
SoftPotentialProfile soft_potential_profile(double s, double R, double r0, int grid_n = 6000,
                                            double u_max = 120.0);

/// Worst-case-style packing: centers on a cubic lattice of spacing 2R;
/// evaluates sum_k w_R(x - y_k) at a lattice point and at a cell midpoint
/// and compares with the 1/(R s^2) scale.
struct PackedSumReport {
    double sum_mid, sum_lattice, max_sum;
    double bound_scale; // 1/(R s^2)
    double ratio;       // max_sum / bound_scale
};
PackedSumReport packed_sum_bound(const SoftPotentialProfile& profile);

/// Difference integral between the cutoff dispersion
/// Ups(p) = (1-delta) p^2 (1 - (1-kappa) chi(p)^2) and (1-delta) p^2 inside
/// the pressure integrand, against the closed-form Gaussian-tail bound
/// (1/(sqrt2 pi^2 beta^{5/2} (1-2 delta) kappa)) e^{-beta((1/2-delta) kappa/s^2 - mu)}.
struct KineticTailReport {
    double integral;
    double bound;
    bool pass;
    bool delta_valid; // bound requires delta < 1/2
};
KineticTailReport kinetic_tail_comparison(double beta, double mu, double s, double delta,
                                          double kappa);

/// Quintic smoothstep used as the reference cutoff: 0 on [0,1], 1 on [2,inf).
double smoothstep_eta(double t);

} // namespace fermieos::budget

#endif
