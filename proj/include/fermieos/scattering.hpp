#ifndef FERMIEOS_SCATTERING_HPP
#define FERMIEOS_SCATTERING_HPP

#include <string>
#include <vector>

namespace fermieos::scatter {

struct Segment {
    double r_start;
    double r_end;
    double value; // v >= 0
};

/// Finite-range repulsive radial pair potential: optional hard core of
/// radius r_c, then contiguous piecewise-constant segments up to the range
/// R0 (v = 0 beyond R0). A pure hard core has r_c == R0 and no segments.
struct RadialPotential {
    double core_radius = 0.0;
    double range = 0.0;
    std::vector<Segment> segments;

    /// Throws InvalidInput unless segments are contiguous, non-negative and
    /// cover [core_radius, range].
    void validate() const;
    double value_at(double r) const; // 0 beyond range; +inf inside the core
};

enum class Method { ExactSegment, Ode };

struct ScatteringResult {
    double a = 0.0;              // s-wave scattering length
    double range = 0.0;          // R0
    Method method = Method::ExactSegment;
    double error_estimate = 0.0; // 0 for the exact path (fp rounding only)
    std::vector<double> u_r;     // radial samples of u(r) = r*phi(r)*u'(R0)
    std::vector<double> u_val;
};

/// Solve u'' = (1/2) v u with u(r_c) = 0, u'(r_c) = 1 and return
/// a = R0 - u(R0)/u'(R0). Piecewise-constant potentials propagate exactly
/// via sinh/cosh transfer matrices; `force_ode` switches to the adaptive
/// RK45 path (relative tolerance 1e-10) used for cross-checks.
ScatteringResult scattering_length(const RadialPotential& v, bool force_ode = false);

/// phi(r) = u(r)/(u'(R0) r), normalized so phi(r) = 1 - a/r for r >= R0;
/// phi = 0 inside a hard core. Grid points must be positive.
std::vector<double> wavefunction(const RadialPotential& v, const std::vector<double>& grid);

/// Parse the plain-text potential format:
///   core_radius = <len>
///   range = <len>
///   segment = <r_start> <r_end> <value>     (repeated)
/// '#' starts a comment. Errors cite the offending line number.
RadialPotential parse_potential(const std::string& text);
RadialPotential load_potential_file(const std::string& path);

} // namespace fermieos::scatter

#endif
