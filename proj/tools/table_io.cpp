#include "table_io.hpp"

#include "fermieos/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cli {

using fermieos::InvalidInput;
using nlohmann::ordered_json;

std::vector<double> parse_grid(const std::string& text) {
    if (text.empty()) throw InvalidInput("empty grid specification");
    std::vector<double> out;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t pos = 0;
            double v = std::stod(tok, &pos);
            if (pos != tok.size()) throw InvalidInput("bad grid value: " + tok);
            out.push_back(v);
        }
        return out;
    }
    auto colons = std::count(text.begin(), text.end(), ':');
    if (colons == 0) {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw InvalidInput("bad scalar: " + text);
        return {v};
    }
    if (colons != 2) throw InvalidInput("grid must be scalar, comma list or start:stop:count");
    std::stringstream ss(text);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    double start = std::stod(a), stop = std::stod(b);
    long count = std::stol(c);
    if (count < 1) throw InvalidInput("grid count must be >= 1");
    if (count == 1) return {start};
    for (long i = 0; i < count; ++i)
        out.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* kEosCsvHeader = "beta,mu,q,a,z,rho0,x,a3rho,p0,p,f0,f,envelope_scale,flags";

std::string flags_string(const fermieos::eos::EosReport& r) {
    std::string s;
    if (r.flag_a3rho_large) s += "a3rho_large";
    if (r.flag_z_small) {
        if (!s.empty()) s += "|";
        s += "z_small";
    }
    return s;
}

std::string eos_csv_row(const fermieos::eos::EosReport& r) {
    std::ostringstream os;
    os << format_double(r.beta) << ',' << format_double(r.mu) << ',' << r.q << ','
       << format_double(r.a) << ',' << format_double(r.z) << ',' << format_double(r.rho0) << ','
       << format_double(r.x) << ',' << format_double(r.a3rho) << ',' << format_double(r.p0) << ','
       << format_double(r.p) << ',' << format_double(r.f0) << ',' << format_double(r.f) << ','
       << format_double(r.envelope_scale) << ',' << flags_string(r);
    return os.str();
}

namespace {
ordered_json num_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}
} // namespace

ordered_json eos_json_row(const fermieos::eos::EosReport& r) {
    ordered_json j;
    j["beta"] = r.beta;
    j["mu"] = r.mu;
    j["q"] = r.q;
    j["a"] = r.a;
    j["z"] = std::isfinite(r.z) ? ordered_json(r.z) : ordered_json(nullptr);
    j["rho0"] = r.rho0;
    j["x"] = r.x;
    j["a3rho"] = r.a3rho;
    j["p0"] = r.p0;
    j["p"] = r.p;
    j["f0"] = num_or_null(r.f0);
    j["f"] = num_or_null(r.f);
    j["envelope_scale"] = r.envelope_scale;
    ordered_json flags = ordered_json::array();
    if (r.flag_a3rho_large) flags.push_back("a3rho_large");
    if (r.flag_z_small) flags.push_back("z_small");
    j["flags"] = flags;
    return j;
}

std::string budget_csv_header(const fermieos::budget::BudgetReport& first) {
    std::string h = "x";
    for (const auto& t : first.terms) h += ",term:" + t.name;
    h += ",bracket_total,target_scale,bracket_over_target,total_relative,within_validity";
    return h;
}

std::string budget_csv_row(const fermieos::budget::BudgetReport& r) {
    std::ostringstream os;
    os << format_double(r.x);
    for (const auto& t : r.terms) os << ',' << format_double(t.value);
    os << ',' << format_double(r.bracket_total) << ',' << format_double(r.target_scale) << ','
       << format_double(r.bracket_over_target) << ',' << format_double(r.total_relative) << ','
       << (r.within_validity ? 1 : 0);
    return os.str();
}

ordered_json budget_json(const fermieos::budget::BudgetReport& r) {
    ordered_json j;
    j["x"] = r.x;
    ordered_json terms = ordered_json::array();
    for (const auto& t : r.terms) {
        ordered_json tj;
        tj["name"] = t.name;
        tj["value"] = std::isfinite(t.value) ? ordered_json(t.value) : ordered_json(nullptr);
        tj["relative"] = std::isfinite(t.relative) ? ordered_json(t.relative) : ordered_json(nullptr);
        if (t.exact_power) tj["exact_exponent"] = t.exponent;
        tj["exact_power"] = t.exact_power;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    j["bracket_total"] = r.bracket_total;
    j["target_scale"] = r.target_scale;
    j["bracket_over_target"] = r.bracket_over_target;
    j["total_relative"] =
        std::isfinite(r.total_relative) ? ordered_json(r.total_relative) : ordered_json(nullptr);
    j["constants_as_one"] = r.constants_as_one;
    j["within_validity"] = r.within_validity;
    return j;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = x.size();
    for (size_t i = 0; i < n; ++i) {
        double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw InvalidInput("cannot open output file: " + out_path);
    f << content;
    if (!content.empty() && content.back() != '\n') f << '\n';
}

} // namespace cli
