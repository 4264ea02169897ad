#include "fermieos/matrix_lab.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fermieos::mat {

namespace {

constexpr double kSpectrumTol = 1e-12;

void require_symmetric(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) throw InvalidInput(std::string(who) + ": matrix not square");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidInput(std::string(who) + ": matrix not symmetric");
}

Eigen::SelfAdjointEigenSolver<Matrix> eig(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    return es;
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_entropy(double lam) {
    double l = std::clamp(lam, 0.0, 1.0);
    return -xlogx(l) - xlogx(1.0 - l);
}

} // namespace

double vn_entropy(const Matrix& rho) {
    require_symmetric(rho, "vn_entropy");
    if (std::abs(rho.trace() - 1.0) > kSpectrumTol * std::max<double>(1, rho.rows()))
        throw InvalidInput("vn_entropy: trace must be 1");
    auto es = eig(rho);
    double s = 0.0;
    for (double lam : es.eigenvalues()) {
        if (lam < -kSpectrumTol) throw InvalidInput("vn_entropy: negative eigenvalue");
        s -= xlogx(lam);
    }
    return s;
}

double fermi_entropy(const Matrix& gamma) {
    require_symmetric(gamma, "fermi_entropy");
    auto es = eig(gamma);
    double s = 0.0;
    for (double lam : es.eigenvalues()) {
        if (lam < -kSpectrumTol || lam > 1.0 + kSpectrumTol)
            throw InvalidInput("fermi_entropy: spectrum must lie in [0, 1]");
        s += binary_entropy(lam);
    }
    return s;
}

GibbsState gibbs_state(const Matrix& h) {
    require_symmetric(h, "gibbs_state");
    auto es = eig(h);
    Vector occ(h.rows());
    double f = 0.0;
    for (int i = 0; i < h.rows(); ++i) {
        double d = es.eigenvalues()[i];
        occ[i] = d > 0 ? std::exp(-d) / (1.0 + std::exp(-d)) : 1.0 / (1.0 + std::exp(d));
        f -= quad::softplus(-d);
    }
    GibbsState g;
    g.gamma_h = es.eigenvectors() * occ.asDiagonal() * es.eigenvectors().transpose();
    g.f_h = f;
    return g;
}

double grand_potential(const Matrix& h, const Matrix& gamma) {
    require_symmetric(h, "grand_potential");
    if (h.rows() != gamma.rows()) throw InvalidInput("grand_potential: dimension mismatch");
    return (h * gamma).trace() - fermi_entropy(gamma);
}

VariationalGapReport variational_gap_check(const Matrix& h, const Matrix& gamma) {
    GibbsState g = gibbs_state(h);
    VariationalGapReport rep{};
    rep.gap = grand_potential(h, gamma) - g.f_h;
    Matrix d = gamma - g.gamma_h;
    rep.rhs_hs = 2.0 * (d * d).trace();
    double t = std::abs(d.trace());
    rep.rhs_trace = t > 0.0 ? 0.5 * t * t / (t + g.gamma_h.trace()) : 0.0;
    rep.slack = 1e-10 * std::max({1.0, rep.gap, rep.rhs_hs, rep.rhs_trace});
    rep.pass = rep.gap >= rep.rhs_hs - rep.slack && rep.gap >= rep.rhs_trace - rep.slack;
    return rep;
}

KleinReport klein_kernel(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw InvalidInput("klein_kernel: x, y must lie in [0, 1]");
    KleinReport rep{};
    auto rel = [](double p, double q) {
        if (p == 0.0) return 0.0;
        if (q == 0.0) return std::numeric_limits<double>::infinity();
        return p * std::log(p / q);
    };
    rep.g = rel(x, y) + rel(1.0 - x, 1.0 - y);
    double d = x - y;
    rep.lb_quadratic = 2.0 * d * d;
    rep.lb_trace = (d != 0.0) ? 0.5 * d * d / (std::abs(d) + y) : 0.0;
    double slack = 1e-14 * std::max(1.0, std::abs(rep.g));
    rep.pass = rep.g >= rep.lb_quadratic - slack && rep.g >= rep.lb_trace - slack;
    return rep;
}

MixtureEntropyReport mixture_entropy_check(const std::vector<double>& weights,
                                           const std::vector<Vector>& vectors) {
    if (weights.size() != vectors.size() || weights.empty())
        throw InvalidInput("mixture_entropy_check: weights/vectors size mismatch");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidInput("mixture_entropy_check: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-10)
        throw InvalidInput("mixture_entropy_check: weights must sum to 1");
    const auto n = vectors.front().size();
    Matrix gamma_hat = Matrix::Zero(n, n);
    Matrix proj_sum = Matrix::Zero(n, n);
    double s = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        if (vectors[i].size() != n) throw InvalidInput("mixture_entropy_check: ragged vectors");
        Vector v = vectors[i].normalized();
        gamma_hat += weights[i] * v * v.transpose();
        proj_sum += v * v.transpose();
        s -= xlogx(weights[i]);
    }
    MixtureEntropyReport rep{};
    rep.s = s;
    rep.s_hat = vn_entropy(gamma_hat);
    rep.log_norm = std::log(eig(proj_sum).eigenvalues().maxCoeff());
    rep.slack = 1e-10 * std::max(1.0, rep.s);
    rep.pass = rep.s_hat >= rep.s - rep.log_norm - rep.slack;
    return rep;
}

TraceChainReport trace_norm_chain_check(const Matrix& A, const Matrix& B, const Matrix& P) {
    require_symmetric(A, "trace_norm_chain_check");
    require_symmetric(B, "trace_norm_chain_check");
    require_symmetric(P, "trace_norm_chain_check");
    double pscale = std::max(1.0, P.cwiseAbs().maxCoeff());
    if ((P * P - P).cwiseAbs().maxCoeff() > 1e-10 * pscale)
        throw InvalidInput("trace_norm_chain_check: P is not a projection");
    if (eig(A).eigenvalues().minCoeff() < -1e-10 || eig(B).eigenvalues().minCoeff() < -1e-10)
        throw InvalidInput("trace_norm_chain_check: A, B must be PSD");

    Matrix d = A - B;
    auto esd = eig(d);
    TraceChainReport rep{};
    rep.lhs = esd.eigenvalues().cwiseAbs().sum();
    double d2 = std::sqrt((d * d).trace());
    double p2 = std::sqrt(P.trace());
    double tr_abs = std::abs(d.trace());
    Matrix Q = Matrix::Identity(P.rows(), P.cols()) - P;
    double qbq = (Q * B * Q).trace();
    rep.rhs = p2 * d2 +
              2.0 * std::sqrt(B.trace() + tr_abs) * std::sqrt(qbq + tr_abs + p2 * d2);
    rep.slack = 1e-10 * std::max(1.0, rep.lhs);
    rep.pass = rep.lhs <= rep.rhs + rep.slack;
    return rep;
}

SubadditivityReport refined_subadditivity_check(const Matrix& joint, int dim_a, int dim_b,
                                                bool project) {
    require_symmetric(joint, "refined_subadditivity_check");
    if (joint.rows() != static_cast<long>(dim_a) * dim_b)
        throw InvalidInput("refined_subadditivity_check: dimensions do not factor the matrix");

    // index convention: row = ia*dim_b + ib
    Matrix blocked = Matrix::Zero(joint.rows(), joint.cols());
    double off_mass = 0.0;
    for (int ia = 0; ia < dim_a; ++ia)
        for (int ib = 0; ib < dim_b; ++ib)
            for (int ja = 0; ja < dim_a; ++ja)
                for (int jb = 0; jb < dim_b; ++jb) {
                    double v = joint(ia * dim_b + ib, ja * dim_b + jb);
                    if (ib == jb)
                        blocked(ia * dim_b + ib, ja * dim_b + jb) = v;
                    else
                        off_mass += v * v;
                }
    off_mass = std::sqrt(off_mass);
    if (!project && off_mass > 1e-10)
        throw InvalidInput("refined_subadditivity_check: state is not block-diagonal in the "
                           "measured basis (pass project=true to project)");

    SubadditivityReport rep{};
    rep.projection_residual = off_mass;
    rep.s_joint = vn_entropy(blocked);

    Matrix rho_a = Matrix::Zero(dim_a, dim_a);
    double cond_avg = 0.0, s_b = 0.0;
    for (int b = 0; b < dim_b; ++b) {
        Matrix m(dim_a, dim_a);
        for (int ia = 0; ia < dim_a; ++ia)
            for (int ja = 0; ja < dim_a; ++ja) m(ia, ja) = blocked(ia * dim_b + b, ja * dim_b + b);
        double pb = m.trace();
        rho_a += m;
        if (pb > 1e-300) {
            Matrix cond = m / pb;
            auto es = eig(cond);
            double sc = 0.0;
            for (double lam : es.eigenvalues()) sc -= xlogx(std::max(lam, 0.0));
            cond_avg += pb * sc;
            s_b -= xlogx(pb);
        }
    }
    rep.s_b = s_b; // rho_B is diagonal for a blocked state
    rep.cond_avg = cond_avg;
    rep.s_a = vn_entropy(rho_a);
    rep.refined_rhs = rep.s_b + rep.cond_avg;
    rep.plain_rhs = rep.s_b + rep.s_a;
    rep.slack = 1e-10 * std::max(1.0, rep.s_joint);
    rep.pass_refined = rep.s_joint <= rep.refined_rhs + rep.slack;
    rep.pass_tighter = rep.refined_rhs <= rep.plain_rhs + rep.slack;
    return rep;
}

Matrix random_symmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    return 0.5 * (m + m.transpose());
}

Matrix random_density_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = g(rng);
    Matrix rho = w * w.transpose();
    return rho / rho.trace();
}

Matrix random_one_body(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g;
    Vector spec(n);
    for (int i = 0; i < n; ++i) spec[i] = u(rng);
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = g(rng);
    Eigen::HouseholderQR<Matrix> qr(w); // Haar orthogonal basis
    Matrix q = qr.householderQ();
    return q * spec.asDiagonal() * q.transpose();
}

Matrix random_projection(int n, int rank, std::mt19937_64& rng) {
    if (rank <= 0) return Matrix::Zero(n, n);
    if (rank >= n) return Matrix::Identity(n, n);
    std::normal_distribution<double> g;
    Matrix w(n, rank);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < rank; ++j) w(i, j) = g(rng);
    Eigen::HouseholderQR<Matrix> qr(w);
    Matrix q = Matrix(qr.householderQ()).leftCols(rank);
    return q * q.transpose();
}

Matrix random_block_diagonal_state(int dim_a, int dim_b, std::mt19937_64& rng) {
    Matrix joint = Matrix::Zero(static_cast<long>(dim_a) * dim_b, static_cast<long>(dim_a) * dim_b);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<double> pb(dim_b);
    double tot = 0.0;
    for (int b = 0; b < dim_b; ++b) tot += (pb[b] = u(rng));
    for (int b = 0; b < dim_b; ++b) {
        Matrix block = random_density_matrix(dim_a, rng) * (pb[b] / tot);
        for (int ia = 0; ia < dim_a; ++ia)
            for (int ja = 0; ja < dim_a; ++ja)
                joint(ia * dim_b + b, ja * dim_b + b) = block(ia, ja);
    }
    return joint;
}

} // namespace fermieos::mat
