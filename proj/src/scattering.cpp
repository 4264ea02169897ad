#include "fermieos/scattering.hpp"
#include "fermieos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fermieos::scatter {

namespace {

constexpr double kSegTol = 1e-12;

struct State {
    double u;
    double du;
    double log_scale = 0.0; // true u = u * exp(log_scale); keeps u/du exact
    void normalize() {
        double m = std::max(std::abs(u), std::abs(du));
        if (m > 1e100) {
            u /= m;
            du /= m;
            log_scale += std::log(m);
        }
    }
};

// exact propagation across one constant-v segment
State propagate_exact(State s, double v, double len) {
    if (len <= 0.0) return s;
    if (v == 0.0) return {s.u + len * s.du, s.du, s.log_scale};
    double kappa = std::sqrt(0.5 * v);
    double x = kappa * len;
    // split long segments so sinh/cosh stay in range
    if (x > 350.0) {
        int parts = static_cast<int>(x / 300.0) + 1;
        double sub = len / parts;
        for (int i = 0; i < parts; ++i) {
            s = propagate_exact(s, v, sub);
            s.normalize();
        }
        return s;
    }
    double ch = std::cosh(x), sh = std::sinh(x);
    return {s.u * ch + s.du * sh / kappa, s.u * kappa * sh + s.du * ch, s.log_scale};
}

// Cash-Karp RK45 on (u, u')' = (u', v(r)/2 u) with constant v per call
State rk45_segment(State s, double v, double r0, double r1, double rel_tol, double& err_acc) {
    auto rhs = [&](double /*r*/, const State& y) { return State{y.du, 0.5 * v * y.u}; };
    double h = (r1 - r0) / 8.0;
    double r = r0;
    while (r < r1 - 1e-15 * (1.0 + std::abs(r1))) {
        h = std::min(h, r1 - r);
        // Cash-Karp coefficients
        State k1 = rhs(r, s);
        auto lin = [&](double c1, const State& a1, double c2 = 0, const State& a2 = {0, 0},
                       double c3 = 0, const State& a3 = {0, 0}, double c4 = 0,
                       const State& a4 = {0, 0}, double c5 = 0, const State& a5 = {0, 0}) {
            return State{s.u + h * (c1 * a1.u + c2 * a2.u + c3 * a3.u + c4 * a4.u + c5 * a5.u),
                         s.du + h * (c1 * a1.du + c2 * a2.du + c3 * a3.du + c4 * a4.du + c5 * a5.du)};
        };
        State k2 = rhs(r + h / 5, lin(1.0 / 5, k1));
        State k3 = rhs(r + 3 * h / 10, lin(3.0 / 40, k1, 9.0 / 40, k2));
        State k4 = rhs(r + 3 * h / 5, lin(3.0 / 10, k1, -9.0 / 10, k2, 6.0 / 5, k3));
        State k5 = rhs(r + h, lin(-11.0 / 54, k1, 5.0 / 2, k2, -70.0 / 27, k3, 35.0 / 27, k4));
        State k6 = rhs(r + 7 * h / 8, lin(1631.0 / 55296, k1, 175.0 / 512, k2, 575.0 / 13824, k3,
                                          44275.0 / 110592, k4, 253.0 / 4096, k5));
        auto comb = [&](double c1, double c3, double c4, double c5, double c6) {
            return State{s.u + h * (c1 * k1.u + c3 * k3.u + c4 * k4.u + c5 * k5.u + c6 * k6.u),
                         s.du + h * (c1 * k1.du + c3 * k3.du + c4 * k4.du + c5 * k5.du + c6 * k6.du),
                         s.log_scale};
        };
        State y5 = comb(37.0 / 378, 250.0 / 621, 125.0 / 594, 0.0, 512.0 / 1771);
        State y4 = comb(2825.0 / 27648, 18575.0 / 48384, 13525.0 / 55296, 277.0 / 14336, 1.0 / 4);
        double scale = std::max({std::abs(y5.u), std::abs(y5.du), 1e-30});
        double err = std::max(std::abs(y5.u - y4.u), std::abs(y5.du - y4.du)) / scale;
        if (err <= rel_tol || h < 1e-14 * (r1 - r0)) {
            r += h;
            s = y5;
            err_acc += err;
            s.normalize();
            h *= std::min(5.0, 0.9 * std::pow(rel_tol / std::max(err, 1e-300), 0.2));
        } else {
            h *= std::max(0.1, 0.9 * std::pow(rel_tol / err, 0.25));
        }
    }
    return s;
}

} // namespace

void RadialPotential::validate() const {
    if (!(core_radius >= 0.0) || !std::isfinite(core_radius))
        throw InvalidInput("potential: core_radius must be >= 0");
    if (!(range >= core_radius) || !std::isfinite(range))
        throw InvalidInput("potential: range must be >= core_radius");
    if (segments.empty()) {
        if (std::abs(range - core_radius) > kSegTol * std::max(1.0, range))
            throw InvalidInput("potential: segments must cover [core_radius, range]");
        return;
    }
    double cursor = core_radius;
    for (size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!(s.value >= 0.0) || !std::isfinite(s.value))
            throw InvalidInput("potential: segment value must be >= 0");
        if (std::abs(s.r_start - cursor) > kSegTol * std::max(1.0, range))
            throw InvalidInput("potential: segments must be contiguous from core_radius");
        if (!(s.r_end > s.r_start)) throw InvalidInput("potential: empty segment");
        cursor = s.r_end;
    }
    if (std::abs(cursor - range) > kSegTol * std::max(1.0, range))
        throw InvalidInput("potential: last segment must end at range");
}

double RadialPotential::value_at(double r) const {
    if (r < core_radius) return std::numeric_limits<double>::infinity();
    for (const auto& s : segments)
        if (r >= s.r_start && r < s.r_end) return s.value;
    return 0.0;
}

ScatteringResult scattering_length(const RadialPotential& v, bool force_ode) {
    v.validate();
    ScatteringResult res;
    res.range = v.range;
    res.method = force_ode ? Method::Ode : Method::ExactSegment;

    if (v.range == v.core_radius) {
        // pure hard core (or free particle when both are 0): u = r - r_c
        res.a = v.core_radius;
        res.u_r = {v.range};
        res.u_val = {0.0};
        return res;
    }

    State s{0.0, 1.0};
    double err_acc = 0.0;
    res.u_r.push_back(v.core_radius);
    res.u_val.push_back(0.0);
    std::vector<double> sample_log; // log_scale at the time each sample was taken
    sample_log.push_back(0.0);
    for (const auto& seg : v.segments) {
        if (force_ode)
            s = rk45_segment(s, seg.value, seg.r_start, seg.r_end, 1e-12, err_acc);
        else
            s = propagate_exact(s, seg.value, seg.r_end - seg.r_start);
        s.normalize();
        res.u_r.push_back(seg.r_end);
        res.u_val.push_back(s.u);
        sample_log.push_back(s.log_scale);
    }
    if (!(s.du > 0.0))
        throw NumericError("scattering_length: u'(R0) <= 0 for a repulsive potential");
    res.a = v.range - s.u / s.du;
    // samples normalized to u'(R0) = 1 (exp underflows to 0 deep inside a
    // near-impenetrable barrier, which is the honest value at this scale)
    for (size_t i = 0; i < res.u_val.size(); ++i)
        res.u_val[i] = res.u_val[i] / s.du * std::exp(sample_log[i] - s.log_scale);
    res.error_estimate = force_ode ? err_acc * 1e-1 + 1e-14 : 5e-16 * (1.0 + std::abs(res.a));
    return res;
}

std::vector<double> wavefunction(const RadialPotential& v, const std::vector<double>& grid) {
    v.validate();
    for (double r : grid)
        if (!(r > 0.0)) throw InvalidInput("wavefunction: grid points must be > 0");
    ScatteringResult sr = scattering_length(v);
    std::vector<double> phi(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        double r = grid[i];
        if (r <= v.core_radius) {
            phi[i] = 0.0;
        } else if (r >= v.range) {
            phi[i] = 1.0 - sr.a / r;
        } else {
            // re-propagate to r (exact path), normalized by u'(R0)
            State s{0.0, 1.0};
            for (const auto& seg : v.segments) {
                if (r <= seg.r_start) break;
                double end = std::min(r, seg.r_end);
                s = propagate_exact(s, seg.value, end - seg.r_start);
                s.normalize();
            }
            State full{0.0, 1.0};
            for (const auto& seg : v.segments) {
                full = propagate_exact(full, seg.value, seg.r_end - seg.r_start);
                full.normalize();
            }
            phi[i] = s.u / (full.du * r) * std::exp(s.log_scale - full.log_scale);
        }
    }
    return phi;
}

RadialPotential parse_potential(const std::string& text) {
    RadialPotential pot;
    bool have_core = false, have_range = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq;
        if (!(ls >> eq) || eq != "=")
            throw InvalidInput("potential file line " + std::to_string(lineno) + ": expected '='");
        if (key == "core_radius") {
            if (!(ls >> pot.core_radius))
                throw InvalidInput("potential file line " + std::to_string(lineno) +
                                   ": bad core_radius");
            have_core = true;
        } else if (key == "range") {
            if (!(ls >> pot.range))
                throw InvalidInput("potential file line " + std::to_string(lineno) + ": bad range");
            have_range = true;
        } else if (key == "segment") {
            Segment s;
            if (!(ls >> s.r_start >> s.r_end >> s.value))
                throw InvalidInput("potential file line " + std::to_string(lineno) +
                                   ": segment needs r_start r_end value");
            pot.segments.push_back(s);
        } else {
            throw InvalidInput("potential file line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
        }
        std::string extra;
        if (ls >> extra)
            throw InvalidInput("potential file line " + std::to_string(lineno) +
                               ": trailing input '" + extra + "'");
    }
    if (!have_core) throw InvalidInput("potential file: missing core_radius");
    if (!have_range) throw InvalidInput("potential file: missing range");
    pot.validate();
    return pot;
}

RadialPotential load_potential_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open potential file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_potential(ss.str());
}

} // namespace fermieos::scatter
