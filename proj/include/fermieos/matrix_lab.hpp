#ifndef FERMIEOS_MATRIX_LAB_HPP
#define FERMIEOS_MATRIX_LAB_HPP

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace fermieos::mat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Finite-dimensional certification of the entropy/trace inequalities used in
// the coexistence proofs. All matrices are real symmetric; generators are
// seeded and reproducible. Tolerance policy: inequalities carry an absolute
// slack of 1e-10 scaled by the dominant magnitude; a violation beyond slack
// is a hard failure.

/// -Tr rho ln rho for a unit-trace PSD matrix (0 ln 0 = 0).
/// Throws InvalidInput for non-symmetric input, eigenvalues < -1e-12 or
/// trace away from 1 by more than 1e-12.
double vn_entropy(const Matrix& rho);

/// Tr[-g ln g - (1-g) ln(1-g)] for 0 <= g <= 1 (spectrum tolerance 1e-12).
double fermi_entropy(const Matrix& gamma);

struct GibbsState {
    Matrix gamma_h; // (1 + e^h)^-1
    double f_h;     // -Tr ln(1 + e^-h)
};
GibbsState gibbs_state(const Matrix& h);

/// Tr(h gamma) - fermi_entropy(gamma).
double grand_potential(const Matrix& h, const Matrix& gamma);

/// gap = E_h[gamma] - f(h) against its two lower bounds:
///   gap >= 2 Tr (gamma - gamma_h)^2
///   gap >= (1/2) T^2 / (T + Tr gamma_h),  T = |Tr(gamma - gamma_h)|
struct VariationalGapReport {
    double gap, rhs_hs, rhs_trace, slack;
    bool pass;
};
VariationalGapReport variational_gap_check(const Matrix& h, const Matrix& gamma);

/// Scalar relative-entropy kernel g(x,y) = x ln(x/y) + (1-x) ln((1-x)/(1-y))
/// with its quadratic and trace-style lower bounds. May return +inf when
/// y is at an endpoint and x is not.
struct KleinReport {
    double g, lb_quadratic, lb_trace;
    bool pass;
};
KleinReport klein_kernel(double x, double y);

/// Entropy of a mixture over non-orthogonal unit vectors against the
/// spectral entropy: S[sum_i w_i v_i v_i^T] >= -sum w ln w - ln||sum_i P_i||.
struct MixtureEntropyReport {
    double s_hat, s, log_norm, slack;
    bool pass;
};
MixtureEntropyReport mixture_entropy_check(const std::vector<double>& weights,
                                           const std::vector<Vector>& vectors);

/// ||A-B||_1 <= ||P||_2 ||A-B||_2
///            + 2 (||B||_1 + |Tr(A-B)|)^{1/2} (Tr QBQ + |Tr(A-B)| + ||P||_2 ||A-B||_2)^{1/2}
/// for PSD A, B and an orthogonal projection P, Q = 1 - P.
struct TraceChainReport {
    double lhs, rhs, slack;
    bool pass;
};
TraceChainReport trace_norm_chain_check(const Matrix& A, const Matrix& B, const Matrix& P);

/// Measured-basis refinement of subadditivity on C^{da} (x) C^{db}: for a
/// state block-diagonal in a fixed basis of the second factor,
///   S(rho) <= S(rho_B) + sum_b p_b S(rho_A|b)   (an identity for exact blocks)
/// and the right side never exceeds S(rho_B) + S(rho_A).
struct SubadditivityReport {
    double s_joint, s_a, s_b, cond_avg;
    double refined_rhs, plain_rhs;
    double projection_residual; // Frobenius mass removed by block projection
    double slack;
    bool pass_refined;
    bool pass_tighter;
};
SubadditivityReport refined_subadditivity_check(const Matrix& joint, int dim_a, int dim_b,
                                                bool project = false);

// --- seeded instance generators -------------------------------------------
Matrix random_symmetric(int n, std::mt19937_64& rng);                  // iid Gaussian, symmetrized
Matrix random_density_matrix(int n, std::mt19937_64& rng);             // Wishart, normalized
Matrix random_one_body(int n, std::mt19937_64& rng);                   // spectrum in [0,1], Haar basis
Matrix random_projection(int n, int rank, std::mt19937_64& rng);       // rank-dim orthogonal projection
Matrix random_block_diagonal_state(int dim_a, int dim_b, std::mt19937_64& rng);

} // namespace fermieos::mat

#endif
