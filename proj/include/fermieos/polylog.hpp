#ifndef FERMIEOS_POLYLOG_HPP
#define FERMIEOS_POLYLOG_HPP

namespace fermieos {

/// -Li_s(-z) for s in {3/2, 5/2} and z > 0, to relative accuracy ~1e-13.
/// For z <= 1 this sums the alternating series sum_{k>=1} (-1)^{k+1} z^k/k^s
/// (accelerated near z = 1); for z > 1 it evaluates the Fermi-Dirac integral
/// representation (1/Gamma(s)) int_0^inf t^{s-1}/(e^t/z + 1) dt.
double fd_polylog(double order, double z);

/// -Li_2(-z) for z > 0 (series for z <= 1, inversion formula above).
double dilog_neg(double z);

} // namespace fermieos

#endif
