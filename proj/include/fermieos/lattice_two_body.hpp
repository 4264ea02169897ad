#ifndef FERMIEOS_LATTICE_TWO_BODY_HPP
#define FERMIEOS_LATTICE_TWO_BODY_HPP

#include "fermieos/scattering.hpp"

namespace fermieos::box {

/// Relative-coordinate two-body problem on a periodic n^3 lattice of side L:
/// H = -2 Lap + v(r_min_image), second-order stencil. The lowest eigenvalue
/// is the finite-volume interaction shift; dE L^3/(8 pi a) -> 1 as the grid
/// refines (up to O(a/L)).
struct LatticeTwoBody {
    double box_side;
    int n_grid;
    scatter::RadialPotential potential; // soft: no hard core
    double eig_tol = 1e-9;              // residual tolerance relative to ||H||
    double resolution_limit = 50.0;     // hard error when v h^2 exceeds this
};

struct TwoBodyShift {
    double delta_e = 0.0;
    double a = 0.0;
    double luscher_ratio = 0.0;
    bool zero_potential = false; // v == 0: shift is exactly 0, ratio undefined
    bool resolution_warning = false; // v h^2 > 1 somewhere: sampled potential is crude
    int iterations = 0;
    double residual = 0.0;
};

TwoBodyShift two_body_shift(const LatticeTwoBody& cfg);

} // namespace fermieos::box

#endif
