#include "fermieos/lattice_two_body.hpp"
#include "fermieos/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace fermieos::box {

namespace {

using Eigen::VectorXd;

class StencilHamiltonian {
public:
    StencilHamiltonian(int n, double h, std::vector<double> v)
        : n_(n), inv_h2_(1.0 / (h * h)), v_(std::move(v)) {}

    int dim() const { return n_ * n_ * n_; }

    void apply(const double* u, double* out) const {
        const int n = n_;
        const double k = 2.0 * inv_h2_; // kinetic prefactor of -2*Lap
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1 == n) ? 0 : i + 1, im = (i == 0) ? n - 1 : i - 1;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + 1 == n) ? 0 : j + 1, jm = (j == 0) ? n - 1 : j - 1;
                const std::size_t base = (static_cast<std::size_t>(i) * n + j) * n;
                const std::size_t bip = (static_cast<std::size_t>(ip) * n + j) * n;
                const std::size_t bim = (static_cast<std::size_t>(im) * n + j) * n;
                const std::size_t bjp = (static_cast<std::size_t>(i) * n + jp) * n;
                const std::size_t bjm = (static_cast<std::size_t>(i) * n + jm) * n;
                for (int l = 0; l < n; ++l) {
                    const int lp = (l + 1 == n) ? 0 : l + 1, lm = (l == 0) ? n - 1 : l - 1;
                    double lap = 6.0 * u[base + l] - u[bip + l] - u[bim + l] - u[bjp + l] -
                                 u[bjm + l] - u[base + lp] - u[base + lm];
                    out[base + l] = k * lap + v_[base + l] * u[base + l];
                }
            }
        }
    }

    double norm_estimate() const {
        double vmax = 0.0;
        for (double v : v_) vmax = std::max(vmax, v);
        return 24.0 * 0.5 * 2.0 * inv_h2_ + vmax; // 12/h^2 * 2 + vmax
    }

private:
    int n_;
    double inv_h2_;
    std::vector<double> v_;
};

// Lanczos with full reorthogonalization for the lowest eigenpair of a
// symmetric PSD operator.
struct LanczosResult {
    double eigenvalue;
    double residual;
    int iterations;
};

LanczosResult lowest_eigenvalue(const StencilHamiltonian& H, double tol_abs, int max_iter) {
    const int N = H.dim();
    std::vector<VectorXd> V;
    std::vector<double> alpha, beta;
    VectorXd v = VectorXd::Ones(N);
    // a deterministic asymmetric perturbation so the Krylov space is not
    // accidentally orthogonal to corrections of the constant mode
    for (int i = 0; i < N; ++i) v[i] += 1e-3 * std::sin(0.7 * i + 0.3);
    v.normalize();
    V.push_back(v);

    VectorXd w(N);
    double best = 0.0, res = 1e300;
    int it = 0;
    for (it = 0; it < max_iter; ++it) {
        H.apply(V.back().data(), w.data());
        double a = V.back().dot(w);
        alpha.push_back(a);
        w -= a * V.back();
        if (V.size() > 1) w -= beta.back() * V[V.size() - 2];
        // full reorthogonalization (two passes)
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : V) w -= q.dot(w) * q;
        double b = w.norm();

        // Ritz values of the tridiagonal every few steps
        if ((it > 0 && it % 5 == 0) || b < 1e-14 || it == max_iter - 1) {
            const int m = static_cast<int>(alpha.size());
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) {
                T(i, i) = alpha[i];
                if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            int idx = 0;
            es.eigenvalues().minCoeff(&idx);
            best = es.eigenvalues()[idx];
            res = std::abs(b * es.eigenvectors()(m - 1, idx));
            if (res < tol_abs || b < 1e-14) return {best, res, it + 1};
        }
        beta.push_back(b);
        V.push_back(w / b);
    }
    throw NumericError("two_body_shift: Lanczos did not converge", res);
}

} // namespace

TwoBodyShift two_body_shift(const LatticeTwoBody& cfg) {
    cfg.potential.validate();
    if (cfg.n_grid < 16) throw InvalidInput("two_body_shift: n_grid must be >= 16");
    if (!(cfg.box_side > 0.0)) throw InvalidInput("two_body_shift: box_side must be > 0");
    if (cfg.potential.core_radius > 0.0)
        throw InvalidInput("two_body_shift: hard cores cannot be represented on the lattice");
    if (!(cfg.potential.range < 0.5 * cfg.box_side))
        throw InvalidInput("two_body_shift: potential range must be < L/2");

    TwoBodyShift out;
    scatter::ScatteringResult sc = scatter::scattering_length(cfg.potential);
    out.a = sc.a;
    if (out.a == 0.0) {
        out.zero_potential = true;
        return out;
    }
    if (!(out.a / cfg.box_side <= 0.05))
        throw InvalidInput("two_body_shift: a/L must be <= 0.05 for the dilute-shift regime");

    const int n = cfg.n_grid;
    const double L = cfg.box_side, h = L / n;
    std::vector<double> v(static_cast<std::size_t>(n) * n * n, 0.0);
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = i * h;
        if (x > 0.5 * L) x -= L;
        for (int j = 0; j < n; ++j) {
            double y = j * h;
            if (y > 0.5 * L) y -= L;
            for (int l = 0; l < n; ++l) {
                double zc = l * h;
                if (zc > 0.5 * L) zc -= L;
                double r = std::sqrt(x * x + y * y + zc * zc);
                double val = (r <= cfg.potential.range) ? cfg.potential.value_at(r) : 0.0;
                v[(static_cast<std::size_t>(i) * n + j) * n + l] = val;
                vmax = std::max(vmax, val);
            }
        }
    }
    if (vmax * h * h > cfg.resolution_limit)
        throw ResolutionError("two_body_shift: v h^2 exceeds the resolution limit");
    out.resolution_warning = vmax * h * h > 1.0;

    StencilHamiltonian H(n, h, std::move(v));
    double tol = cfg.eig_tol * H.norm_estimate();
    LanczosResult lr = lowest_eigenvalue(H, tol, 400);
    out.delta_e = lr.eigenvalue;
    out.residual = lr.residual;
    out.iterations = lr.iterations;
    out.luscher_ratio = out.delta_e * L * L * L / (8.0 * M_PI * out.a);
    return out;
}

} // namespace fermieos::box
