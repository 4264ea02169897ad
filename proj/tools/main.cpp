#include "table_io.hpp"
#include "verify_suites.hpp"

#include "fermieos/dilute_eos.hpp"
#include "fermieos/error_budget.hpp"
#include "fermieos/errors.hpp"
#include "fermieos/lattice_two_body.hpp"
#include "fermieos/scattering.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

enum ExitCode { kOk = 0, kVerifyFailure = 1, kConfigError = 2, kNumericFailure = 3 };

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void attach_meta(ordered_json& j, bool no_meta) {
    j["schema_version"] = kSchemaVersion;
    if (!no_meta) j["meta"] = {{"timestamp", iso_timestamp()}};
}

struct CommonOpts {
    std::string format = "csv";
    std::string out;
    bool no_meta = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out, "write output to this path instead of stdout");
    cmd->add_flag("--no-meta", opts.no_meta, "omit timestamps for byte-reproducible output");
}

int emit_rows(const std::vector<fermieos::eos::EosReport>& rows, const CommonOpts& opts,
              const std::string& command) {
    if (opts.format == "csv") {
        std::ostringstream os;
        os << cli::kEosCsvHeader << '\n';
        for (const auto& r : rows) os << cli::eos_csv_row(r) << '\n';
        cli::emit(opts.out, os.str());
    } else {
        ordered_json j;
        attach_meta(j, opts.no_meta);
        j["command"] = command;
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(cli::eos_json_row(r));
        j["rows"] = arr;
        cli::emit(opts.out, j.dump(2));
    }
    return kOk;
}

int cmd_eos_table(const std::string& beta_s, const std::string& mu_s, const std::string& m_s,
                  double a, int q, double alpha, double a3rho_max, double z_min,
                  const CommonOpts& opts) {
    auto ms = cli::parse_grid(m_s);
    bool polarized = false;
    for (double m : ms) polarized = polarized || m != 0.0;

    if (!polarized) {
        fermieos::eos::ValidityThresholds th{a3rho_max, z_min};
        std::vector<fermieos::eos::EosReport> rows;
        for (double beta : cli::parse_grid(beta_s))
            for (double mu : cli::parse_grid(mu_s))
                rows.push_back(fermieos::eos::pressure_report(beta, mu, a, q, alpha, th));
        return emit_rows(rows, opts, "eos-table");
    }

    // spin-field sweep: two single-species gases at mu -/+ m/2
    if (q != 2)
        throw fermieos::InvalidInput("eos-table: --m describes the two-species gas; use --q 2");
    std::ostringstream csv;
    csv << "beta,mu,m,a,z,rho_up,rho_down,p0,p\n";
    ordered_json arr = ordered_json::array();
    for (double beta : cli::parse_grid(beta_s))
        for (double mu : cli::parse_grid(mu_s))
            for (double m : ms) {
                fermieos::eos::PolarizedPoint pt;
                double p = fermieos::eos::polarized_pressure(beta, mu, m, a, &pt);
                double p0 = p + 8.0 * M_PI * a * pt.rho_up * pt.rho_down;
                double z = std::exp(beta * mu);
                csv << cli::format_double(beta) << ',' << cli::format_double(mu) << ','
                    << cli::format_double(m) << ',' << cli::format_double(a) << ','
                    << cli::format_double(z) << ',' << cli::format_double(pt.rho_up) << ','
                    << cli::format_double(pt.rho_down) << ',' << cli::format_double(p0) << ','
                    << cli::format_double(p) << '\n';
                ordered_json r;
                r["beta"] = beta;
                r["mu"] = mu;
                r["m"] = m;
                r["a"] = a;
                r["z"] = std::isfinite(z) ? ordered_json(z) : ordered_json(nullptr);
                r["rho_up"] = pt.rho_up;
                r["rho_down"] = pt.rho_down;
                r["p0"] = p0;
                r["p"] = p;
                arr.push_back(r);
            }
    if (opts.format == "csv") {
        cli::emit(opts.out, csv.str());
    } else {
        ordered_json j;
        attach_meta(j, opts.no_meta);
        j["command"] = "eos-table";
        j["rows"] = arr;
        cli::emit(opts.out, j.dump(2));
    }
    return kOk;
}

int cmd_free_energy(const std::string& beta_s, const std::string& rho_s, double a, int q,
                    double alpha, double a3rho_max, double z_min, const CommonOpts& opts) {
    fermieos::eos::ValidityThresholds th{a3rho_max, z_min};
    std::vector<fermieos::eos::EosReport> rows;
    for (double beta : cli::parse_grid(beta_s))
        for (double rho : cli::parse_grid(rho_s))
            rows.push_back(fermieos::eos::free_energy_report(beta, rho, a, q, alpha, th));
    return emit_rows(rows, opts, "free-energy");
}

int cmd_scattering(const std::string& potential_path, const std::string& wf_out,
                   const std::string& grid_s, const CommonOpts& opts) {
    auto pot = fermieos::scatter::load_potential_file(potential_path);
    auto res = fermieos::scatter::scattering_length(pot);
    ordered_json j;
    attach_meta(j, opts.no_meta);
    j["command"] = "scattering";
    j["a"] = res.a;
    j["range"] = res.range;
    j["method"] = res.method == fermieos::scatter::Method::ExactSegment ? "exact-segment" : "ode";
    j["error_estimate"] = res.error_estimate;
    if (!wf_out.empty()) {
        auto grid = cli::parse_grid(grid_s.empty() ? "0.1:5:50" : grid_s);
        auto phi = fermieos::scatter::wavefunction(pot, grid);
        std::ostringstream os;
        os << "r,phi\n";
        for (size_t i = 0; i < grid.size(); ++i)
            os << cli::format_double(grid[i]) << ',' << cli::format_double(phi[i]) << '\n';
        cli::emit(wf_out, os.str());
        j["wavefunction_out"] = wf_out;
    }
    if (opts.format == "csv") {
        std::ostringstream os;
        os << "a,range,method,error_estimate\n"
           << cli::format_double(res.a) << ',' << cli::format_double(res.range) << ','
           << j["method"].get<std::string>() << ',' << cli::format_double(res.error_estimate)
           << '\n';
        cli::emit(opts.out, os.str());
    } else {
        cli::emit(opts.out, j.dump(2));
    }
    return kOk;
}

int cmd_verify(const std::string& suite, int instances, std::uint64_t seed, bool inject_failure,
               const CommonOpts& opts) {
    if (!suite.empty()) {
        const auto& names = cli::suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end())
            throw fermieos::InvalidInput("unknown suite: " + suite);
    }
    auto results = cli::run_verify_suites(suite, instances, seed, inject_failure);
    int total_failures = 0;
    ordered_json j;
    attach_meta(j, opts.no_meta);
    j["command"] = "verify";
    j["seed"] = seed;
    ordered_json suites = ordered_json::array();
    for (const auto& r : results) {
        total_failures += r.failures;
        ordered_json s;
        s["check"] = r.check;
        s["instances"] = r.instances;
        s["failures"] = r.failures;
        s["worst_slack"] = r.worst_slack;
        s["seed"] = r.seed;
        if (!r.failing_seeds.empty()) s["failing_seeds"] = r.failing_seeds;
        if (!r.notes.empty()) s["notes"] = r.notes;
        suites.push_back(s);
    }
    j["suites"] = suites;
    j["failures_total"] = total_failures;
    cli::emit(opts.out, j.dump(2));
    return total_failures == 0 ? kOk : kVerifyFailure;
}

int cmd_budget(const std::string& x_s, double rho0, double beta, double z, double epsilon,
               double nu, double mu, double r0, const std::string& mode, const CommonOpts& opts) {
    auto xs = cli::parse_grid(x_s);
    bool lower = mode == "lower" || mode == "both";
    bool upper = mode == "upper" || mode == "both";

    auto sweep = [&](bool is_lower) {
        std::vector<fermieos::budget::BudgetReport> reps;
        for (double x : xs) {
            double a = x / std::cbrt(rho0);
            if (is_lower) {
                auto sc = fermieos::budget::LowerSchedule::make(a, rho0, beta, epsilon);
                reps.push_back(fermieos::budget::lower_bound_budget(sc, z, r0 >= 0 ? r0 : -1.0));
            } else {
                auto sc = fermieos::budget::UpperSchedule::make(a, rho0, beta, mu, nu);
                reps.push_back(fermieos::budget::upper_bound_budget(sc, r0 >= 0 ? r0 : -1.0));
            }
        }
        return reps;
    };

    auto fitted = [&](const std::vector<fermieos::budget::BudgetReport>& reps) {
        ordered_json fits = ordered_json::array();
        if (reps.size() < 2) return fits;
        for (size_t t = 0; t < reps.front().terms.size(); ++t) {
            if (!reps.front().terms[t].exact_power) continue;
            std::vector<double> vx, vy;
            for (const auto& r : reps) {
                vx.push_back(r.x);
                vy.push_back(r.terms[t].value);
            }
            ordered_json f;
            f["name"] = reps.front().terms[t].name;
            f["fitted_exponent"] = cli::fit_log_slope(vx, vy);
            f["exact_exponent"] = reps.front().terms[t].exponent;
            fits.push_back(f);
        }
        return fits;
    };

    if (opts.format == "csv") {
        std::ostringstream os;
        auto dump = [&](const std::vector<fermieos::budget::BudgetReport>& reps) {
            os << cli::budget_csv_header(reps.front()) << '\n';
            for (const auto& r : reps) os << cli::budget_csv_row(r) << '\n';
        };
        if (lower) dump(sweep(true));
        if (upper) dump(sweep(false));
        cli::emit(opts.out, os.str());
        return kOk;
    }
    ordered_json j;
    attach_meta(j, opts.no_meta);
    j["command"] = "budget";
    if (lower) {
        auto reps = sweep(true);
        ordered_json arr = ordered_json::array();
        for (const auto& r : reps) arr.push_back(cli::budget_json(r));
        j["lower"] = {{"rows", arr}, {"fitted_exponents", fitted(reps)}};
    }
    if (upper) {
        auto reps = sweep(false);
        ordered_json arr = ordered_json::array();
        for (const auto& r : reps) arr.push_back(cli::budget_json(r));
        j["upper"] = {{"rows", arr}, {"fitted_exponents", fitted(reps)}};
    }
    cli::emit(opts.out, j.dump(2));
    return kOk;
}

int cmd_two_body(const std::string& potential_path, double box_side, const std::string& n_grid_s,
                 double eig_tol, const CommonOpts& opts) {
    auto pot = fermieos::scatter::load_potential_file(potential_path);
    auto grids = cli::parse_grid(n_grid_s);
    ordered_json j;
    attach_meta(j, opts.no_meta);
    j["command"] = "two-body";
    j["box_side"] = box_side;
    ordered_json runs = ordered_json::array();
    std::ostringstream csv;
    csv << "n_grid,delta_e,a,luscher_ratio,resolution_warning,iterations\n";
    for (double ng : grids) {
        fermieos::box::LatticeTwoBody cfg{box_side, static_cast<int>(ng), pot, eig_tol};
        auto res = fermieos::box::two_body_shift(cfg);
        ordered_json r;
        r["n_grid"] = static_cast<int>(ng);
        r["delta_e"] = res.delta_e;
        r["a"] = res.a;
        r["zero_potential"] = res.zero_potential;
        r["luscher_ratio"] =
            res.zero_potential ? ordered_json(nullptr) : ordered_json(res.luscher_ratio);
        r["resolution_warning"] = res.resolution_warning;
        r["iterations"] = res.iterations;
        runs.push_back(r);
        csv << static_cast<int>(ng) << ',' << cli::format_double(res.delta_e) << ','
            << cli::format_double(res.a) << ','
            << (res.zero_potential ? "nan" : cli::format_double(res.luscher_ratio)) << ','
            << (res.resolution_warning ? 1 : 0) << ',' << res.iterations << '\n';
    }
    j["runs"] = runs;
    if (opts.format == "csv")
        cli::emit(opts.out, csv.str());
    else
        cli::emit(opts.out, j.dump(2));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilute Fermi gas equation-of-state toolkit"};
    app.require_subcommand(1);

    CommonOpts eos_opts, fe_opts, sc_opts, vf_opts, bu_opts, tb_opts;

    // eos-table
    auto* eos = app.add_subcommand("eos-table", "pressure table over (beta, mu) grids");
    std::string eos_beta = "1", eos_mu = "0", eos_m = "0";
    double eos_a = 0.0, eos_alpha = 1.0 / 34.0, eos_a3max = 1e-2, eos_zmin = 0.1;
    int eos_q = 2;
    eos->add_option("--beta", eos_beta, "beta grid (scalar, list or start:stop:count)");
    eos->add_option("--mu", eos_mu, "mu grid");
    eos->add_option("--m", eos_m, "spin-field grid; nonzero switches to the two-species table");
    eos->add_option("--a", eos_a, "s-wave scattering length");
    eos->add_option("--q", eos_q, "spin multiplicity");
    eos->add_option("--alpha", eos_alpha, "envelope exponent (0, 1/33)");
    eos->add_option("--a3rho-max", eos_a3max, "diluteness flag threshold");
    eos->add_option("--z-min", eos_zmin, "fugacity flag threshold");
    add_common(eos, eos_opts);

    // free-energy
    auto* fe = app.add_subcommand("free-energy", "free-energy table over (beta, rho) grids");
    std::string fe_beta = "1", fe_rho = "0.03";
    double fe_a = 0.0, fe_alpha = 1.0 / 34.0, fe_a3max = 1e-2, fe_zmin = 0.1;
    int fe_q = 2;
    fe->add_option("--beta", fe_beta, "beta grid");
    fe->add_option("--rho", fe_rho, "density grid");
    fe->add_option("--a", fe_a, "s-wave scattering length");
    fe->add_option("--q", fe_q, "spin multiplicity");
    fe->add_option("--alpha", fe_alpha, "envelope exponent (0, 1/33)");
    fe->add_option("--a3rho-max", fe_a3max, "diluteness flag threshold");
    fe->add_option("--z-min", fe_zmin, "fugacity flag threshold");
    add_common(fe, fe_opts);

    // scattering
    auto* sc = app.add_subcommand("scattering", "scattering length of a potential file");
    std::string sc_pot, sc_wf_out, sc_grid;
    sc->add_option("--potential", sc_pot, "potential spec file")->required();
    sc->add_option("--wavefunction-out", sc_wf_out, "write phi(r) samples to this file");
    sc->add_option("--grid", sc_grid, "radial grid for the samples");
    add_common(sc, sc_opts);

    // verify
    auto* vf = app.add_subcommand("verify", "run the inequality suites");
    std::string vf_suite;
    int vf_instances = 0;
    std::uint64_t vf_seed = 0;
    bool vf_inject = false;
    vf->add_option("--suite", vf_suite, "run a single suite");
    vf->add_option("--instances", vf_instances, "override instance counts");
    vf->add_option("--seed", vf_seed, "base seed");
    vf->add_flag("--inject-failure", vf_inject, "add a synthetic failing suite (self test)");
    add_common(vf, vf_opts);

    // budget
    auto* bu = app.add_subcommand("budget", "error-budget sweeps over the diluteness x");
    std::string bu_x = "1e-4,1e-3,1e-2", bu_mode = "lower";
    double bu_rho0 = 1.0, bu_beta = 1.0, bu_z = 1.0, bu_eps = 0.01, bu_nu = 0.005, bu_mu = 0.0,
           bu_r0 = -1.0;
    bu->add_option("--x", bu_x, "diluteness grid a rho0^{1/3}");
    bu->add_option("--rho0", bu_rho0, "reference density");
    bu->add_option("--beta", bu_beta, "inverse temperature");
    bu->add_option("--z", bu_z, "fugacity (lower budget)");
    bu->add_option("--epsilon", bu_eps, "lower-schedule exponent parameter");
    bu->add_option("--nu", bu_nu, "upper-schedule exponent parameter");
    bu->add_option("--mu", bu_mu, "chemical potential (upper budget)");
    bu->add_option("--r0", bu_r0, "potential range (default: a)");
    bu->add_option("--mode", bu_mode, "lower|upper|both")
        ->check(CLI::IsMember({"lower", "upper", "both"}));
    add_common(bu, bu_opts);

    // two-body
    auto* tb = app.add_subcommand("two-body", "finite-volume two-body shift on a lattice");
    std::string tb_pot, tb_n = "32";
    double tb_L = 50.0, tb_tol = 1e-9;
    tb->add_option("--potential", tb_pot, "potential spec file (soft, no core)")->required();
    tb->add_option("--box-size", tb_L, "box side L");
    tb->add_option("--n-grid", tb_n, "grid points per axis (list for a refinement study)");
    tb->add_option("--eig-tol", tb_tol, "eigensolver residual tolerance relative to ||H||");
    add_common(tb, tb_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints usage or the error message
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (eos->parsed())
            return cmd_eos_table(eos_beta, eos_mu, eos_m, eos_a, eos_q, eos_alpha, eos_a3max,
                                 eos_zmin, eos_opts);
        if (fe->parsed())
            return cmd_free_energy(fe_beta, fe_rho, fe_a, fe_q, fe_alpha, fe_a3max, fe_zmin,
                                   fe_opts);
        if (sc->parsed()) return cmd_scattering(sc_pot, sc_wf_out, sc_grid, sc_opts);
        if (vf->parsed()) return cmd_verify(vf_suite, vf_instances, vf_seed, vf_inject, vf_opts);
        if (bu->parsed())
            return cmd_budget(bu_x, bu_rho0, bu_beta, bu_z, bu_eps, bu_nu, bu_mu, bu_r0, bu_mode,
                              bu_opts);
        if (tb->parsed()) return cmd_two_body(tb_pot, tb_L, tb_n, tb_tol, tb_opts);
    } catch (const fermieos::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const fermieos::OutOfValidity& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const fermieos::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const fermieos::ResolutionError& e) {
        std::cerr << "resolution error: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kConfigError;
}
