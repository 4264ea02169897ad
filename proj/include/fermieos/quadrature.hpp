#ifndef FERMIEOS_QUADRATURE_HPP
#define FERMIEOS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace fermieos::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;   // absolute error estimate
    int panels = 0;
};

/// Fixed-order Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order);

/// Adaptive panel-based Gauss-Legendre on [a, b]. Panels are bisected until
/// the summed error estimate is below max(rel_tol*|value|, abs_tol).
/// Initial panel edges may be seeded with breakpoints (e.g. Fermi edges,
/// kinks); edges outside (a, b) are ignored.
/// Throws NumericError (carrying the achieved estimate) if the panel budget
/// is exhausted first.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0,
                 const std::vector<double>& breakpoints = {},
                 int max_panels = 4000);

/// ln(1 + e^x) without overflow.
double softplus(double x);

} // namespace fermieos::quad

#endif
