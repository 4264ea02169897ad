#include "fermieos/quadrature.hpp"
#include "fermieos/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace fermieos::quad {

namespace {

struct Rule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

// Nodes by Newton iteration on Legendre polynomials.
Rule make_rule(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const Rule& rule(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double apply(const std::function<double(double)>& f, double a, double b, const Rule& r) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

struct Panel {
    double a, b, value, error;
};

Panel make_panel(const std::function<double(double)>& f, double a, double b,
                 const Rule& lo, const Rule& hi) {
    Panel p{a, b, 0.0, 0.0};
    double v1 = apply(f, a, b, lo);
    double v2 = apply(f, a, b, hi);
    p.value = v2;
    p.error = std::abs(v2 - v1);
    // estimates at the rounding floor of the panel value carry no
    // information; splitting further only accumulates noise
    if (p.error <= 32.0 * 2.2e-16 * (std::abs(v1) + std::abs(v2))) p.error = 0.0;
    return p;
}

} // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    return apply(f, a, b, rule(order));
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol,
                 const std::vector<double>& breakpoints, int max_panels) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw InvalidInput("quad::integrate: non-finite interval");
    if (a == b) return {0.0, 0.0, 0};
    const Rule& lo = rule(15);
    const Rule& hi = rule(31);

    std::vector<double> edges{a, b};
    for (double c : breakpoints)
        if (c > a && c < b) edges.push_back(c);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Panel> panels;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(make_panel(f, edges[i], edges[i + 1], lo, hi));

    auto total = [&] {
        Result r;
        for (const auto& p : panels) {
            r.value += p.value;
            r.error += p.error;
        }
        r.panels = static_cast<int>(panels.size());
        return r;
    };

    for (;;) {
        Result t = total();
        double goal = std::max(rel_tol * std::abs(t.value), abs_tol);
        if (t.error <= goal || goal == 0.0) {
            if (t.error <= goal) return t;
        }
        if (static_cast<int>(panels.size()) >= max_panels) {
            throw NumericError("quad::integrate: panel budget exhausted", t.error);
        }
        // split the worst panel
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        Panel p = panels[worst];
        if (p.b - p.a < 1e-300)
            throw NumericError("quad::integrate: interval collapsed", t.error);
        double m = 0.5 * (p.a + p.b);
        panels[worst] = make_panel(f, p.a, m, lo, hi);
        panels.push_back(make_panel(f, m, p.b, lo, hi));
    }
}

double softplus(double x) {
    if (x > 36.0) return x + std::exp(-x);
    if (x < -36.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

} // namespace fermieos::quad
