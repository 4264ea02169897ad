#include "fermieos/polylog.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/quadrature.hpp"

#include <cmath>

namespace fermieos {

namespace {

// Alternating-series acceleration of Cohen, Rodriguez Villegas and Zagier.
// Sums sum_{k>=0} (-1)^k a(k) for a totally monotone a; error ~ (3+sqrt8)^-n.
template <typename F>
double cvz_alternating(F a, int n) {
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * a(k);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

double series_path(double s, double z) {
    // plain partial sums while they converge fast
    if (z <= 0.75) {
        double sum = 0.0, sign = 1.0;
        double zk = 1.0;
        for (int k = 1; k <= 400; ++k) {
            zk *= z;
            double term = zk / std::pow(static_cast<double>(k), s);
            sum += sign * term;
            sign = -sign;
            if (term < 1e-16 * std::abs(sum)) return sum;
        }
        return sum;
    }
    return cvz_alternating(
        [&](int k) { return std::pow(z, k + 1.0) / std::pow(k + 1.0, s); }, 36);
}

double quadrature_path(double s, double z) {
    // (1/Gamma(s)) int_0^inf t^{s-1} / (e^{t-w} + 1) dt, w = ln z
    const double w = std::log(z);
    const double gamma_s = std::tgamma(s);
    const double T = std::max(50.0, w + 50.0);
    auto fermi = [&](double t) { return 1.0 / (1.0 + std::exp(t - w)); };
    // t in [0,1] with t = y^2 to absorb the t^{s-1} endpoint behaviour
    auto f_head = [&](double y) { return 2.0 * std::pow(y, 2.0 * s - 1.0) * fermi(y * y); };
    auto f_tail = [&](double t) { return std::pow(t, s - 1.0) * fermi(t); };
    double v = quad::integrate(f_head, 0.0, 1.0, 1e-13).value;
    v += quad::integrate(f_tail, 1.0, T, 1e-13, 0.0, {w - 5.0, w, w + 5.0}).value;
    // omitted tail <= e^{w-T} * int t^{s-1} e^{T-t}: negligible by construction
    return v / gamma_s;
}

} // namespace

double fd_polylog(double order, double z) {
    if (!(order == 1.5 || order == 2.5))
        throw InvalidInput("fd_polylog: order must be 3/2 or 5/2");
    if (!(z > 0.0) || !std::isfinite(z))
        throw InvalidInput("fd_polylog: z must be positive and finite");
    if (z <= 1.0) return series_path(order, z);
    return quadrature_path(order, z);
}

double dilog_neg(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw InvalidInput("dilog_neg: z must be positive");
    if (z <= 0.75) {
        double sum = 0.0, sign = 1.0, zk = 1.0;
        for (int k = 1; k <= 400; ++k) {
            zk *= z;
            double term = zk / (static_cast<double>(k) * k);
            sum += sign * term;
            sign = -sign;
            if (term < 1e-16 * std::abs(sum)) break;
        }
        return sum;
    }
    if (z <= 1.0)
        return cvz_alternating(
            [&](int k) { return std::pow(z, k + 1.0) / ((k + 1.0) * (k + 1.0)); }, 36);
    // Li2(-z) + Li2(-1/z) = -pi^2/6 - ln(z)^2/2
    double lz = std::log(z);
    return M_PI * M_PI / 6.0 + 0.5 * lz * lz - dilog_neg(1.0 / z);
}

} // namespace fermieos
