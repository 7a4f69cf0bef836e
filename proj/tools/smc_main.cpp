// Command-line front end: deterministic closed-loop simulation, convergence
// verification, bound tables, and worst-case witness searches.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or config error, 3 runtime (divergence / assumption) error.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "smc/bounds.hpp"
#include "smc/csv.hpp"
#include "smc/scenario_config.hpp"
#include "smc/verify.hpp"
#include "smc/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct RunOverrides {
    double dt = 0.0;
    double t_end = 0.0;
    std::string out;
    std::string smoothing;
    std::string envelope_csv;
    std::string region_csv;
};

smc::Scenario load_with_overrides(const std::string& path, const RunOverrides& ov) {
    smc::Scenario sc = smc::load_scenario(path);
    if (ov.dt > 0.0) sc.dt = ov.dt;
    if (ov.t_end > 0.0) sc.t_end = ov.t_end;
    if (!ov.smoothing.empty()) {
        const auto kind = smc::parse_smoothing(ov.smoothing);
        if (!kind) {
            throw smc::ConfigError("unknown smoothing '" + ov.smoothing + "' (sign | sat | tanh)");
        }
        sc.cfg.smoothing = *kind;
    }
    if (!ov.envelope_csv.empty()) sc.envelope_csv_path = ov.envelope_csv;
    if (!ov.region_csv.empty()) sc.region_csv_path = ov.region_csv;
    if (sc.dt <= 0.0) sc.dt = smc::default_dt(sc.cfg, sc.x0, sc.bench.trajectory);
    return sc;
}

smc::TrajectoryLog run_scenario(const smc::Scenario& sc) {
    return smc::simulate(sc.bench.plant, sc.cfg, sc.bench.trajectory, sc.x0, sc.t_end, sc.dt);
}

void emit_side_outputs(const smc::Scenario& sc, const smc::TrajectoryLog& log) {
    if (!sc.envelope_csv_path.empty()) {
        smc::write_file(sc.envelope_csv_path, smc::envelope_csv(log, sc.cfg.eta));
        std::cout << "wrote " << sc.envelope_csv_path << "\n";
    }
    if (!sc.region_csv_path.empty()) {
        smc::write_file(sc.region_csv_path, smc::region_csv(smc::region(sc.cfg.surface, sc.cfg.phi)));
        std::cout << "wrote " << sc.region_csv_path << "\n";
    }
}

int cmd_simulate(const std::string& config_path, const RunOverrides& ov) {
    const smc::Scenario sc = load_with_overrides(config_path, ov);
    const smc::TrajectoryLog log = run_scenario(sc);

    std::string csv_path = !ov.out.empty() ? ov.out : sc.csv_path;
    if (csv_path.empty()) csv_path = sc.name + ".csv";
    smc::write_file(csv_path, smc::trajectory_csv(log));
    emit_side_outputs(sc, log);

    const smc::ReachRecord reach = smc::check_reaching(log, sc.cfg.eta, 1e-4);
    std::cout << "scenario " << sc.name << ": " << log.rows.size() << " rows at dt = " << sc.dt
              << ", wrote " << csv_path << "\n";
    std::cout << "  |s_phi(0)| = " << std::abs(log.rows.front().s_phi) << ", reach bound "
              << reach.t_reach_bound << " s, observed "
              << (reach.t_reach_observed ? std::to_string(*reach.t_reach_observed) : "never")
              << " s\n";
    std::cout << "  final |s| = " << std::abs(log.rows.back().s) << " (phi = " << sc.cfg.phi
              << ")\n";
    return kExitOk;
}

int cmd_verify(const std::string& config_path, const RunOverrides& ov) {
    smc::Scenario sc = load_with_overrides(config_path, ov);
    const smc::TrajectoryLog log = run_scenario(sc);

    smc::ReportTolerances tols;
    tols.tail_fraction = sc.tail_fraction;
    const smc::ConvergenceReport report = smc::make_report(log, sc.cfg, sc.name, tols);
    std::cout << smc::report_text(report);

    std::string report_path = !ov.out.empty() ? ov.out : sc.report_path;
    if (!report_path.empty()) {
        smc::write_file(report_path, smc::report_keyvalue(report));
        std::cout << "wrote " << report_path << "\n";
    }
    if (!sc.csv_path.empty()) smc::write_file(sc.csv_path, smc::trajectory_csv(log));
    emit_side_outputs(sc, log);
    return report.all_pass() ? kExitOk : kExitVerifyFail;
}

int cmd_zeta_table(int n, const std::string& out_path) {
    const smc::ZetaTable table = smc::zeta_table(n);
    std::cout << std::setw(4) << "i" << std::setw(24) << "zeta_i" << std::setw(24) << "2^i"
              << "\n";
    for (int i = 0; i < n; ++i) {
        std::cout << std::setw(4) << i << std::setw(24)
                  << smc::zeta_to_string(table.zeta[static_cast<std::size_t>(i)]) << std::setw(24)
                  << smc::zeta_to_string(table.slotine[static_cast<std::size_t>(i)]) << "\n";
    }
    const int divergent = table.first_divergent_index();
    if (divergent >= 0) {
        std::cout << "sequences diverge from index " << divergent << "\n";
    } else {
        std::cout << "sequences agree for every index\n";
    }
    if (!out_path.empty()) {
        std::string csv = "i,zeta,two_pow_i\n";
        for (int i = 0; i < n; ++i) {
            csv += std::to_string(i) + "," +
                   smc::zeta_to_string(table.zeta[static_cast<std::size_t>(i)]) + "," +
                   smc::zeta_to_string(table.slotine[static_cast<std::size_t>(i)]) + "\n";
        }
        smc::write_file(out_path, csv);
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_search_witness(const smc::WitnessParams& params, const std::string& out_path) {
    const smc::WitnessResult result = smc::search_witness(params);
    std::cout << "witness search: n = " << params.order_n << ", lambda = " << params.lambda
              << ", phi = " << params.phi << ", derivative " << params.derivative_index << "\n";
    std::cout << "  evaluations      " << result.evaluations << "\n";
    std::cout << "  best excursion   " << smc::format_double(result.best_excursion) << "\n";
    std::cout << "  corrected bound  " << smc::format_double(result.corrected_bound) << "\n";
    std::cout << "  classical bound  " << smc::format_double(result.slotine_bound) << "\n";
    if (result.exceeds_slotine()) {
        std::cout << "  classical 2^i bound exceeded: violation demonstrated\n";
    } else {
        std::cout << "  classical 2^i bound not exceeded within budget (gap "
                  << smc::format_double(result.slotine_bound - result.best_excursion) << ")\n";
    }
    std::cout << "  switch times    ";
    for (double tau : result.best_schedule.switch_times) std::cout << " " << tau;
    std::cout << "\n";
    if (!out_path.empty()) {
        smc::write_file(out_path,
                        smc::witness_trace_csv(smc::trace_schedule(params, result.best_schedule)));
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smooth sliding mode controller: simulation and convergence verification"};
    app.require_subcommand(1);

    RunOverrides overrides;

    auto* sim = app.add_subcommand("simulate", "run a scenario and write the trajectory CSV");
    std::string sim_config;
    sim->add_option("config", sim_config, "scenario file")->required();
    sim->add_option("--dt", overrides.dt, "override integration step");
    sim->add_option("--t-end", overrides.t_end, "override run length");
    sim->add_option("--out", overrides.out, "trajectory CSV path");
    sim->add_option("--smoothing", overrides.smoothing, "sign | sat | tanh");
    sim->add_option("--envelope-csv", overrides.envelope_csv, "write t,|s_phi|,envelope CSV");
    sim->add_option("--region-csv", overrides.region_csv, "write region polygon CSV (n = 2)");

    auto* ver = app.add_subcommand("verify-bounds", "run a scenario and check both theorems");
    std::string ver_config;
    ver->add_option("config", ver_config, "scenario file")->required();
    ver->add_option("--dt", overrides.dt, "override integration step");
    ver->add_option("--t-end", overrides.t_end, "override run length");
    ver->add_option("--out", overrides.out, "report key=value path");

    auto* zt = app.add_subcommand("zeta-table", "print corrected vs classical multipliers");
    int zeta_n = 0;
    std::string zeta_out;
    zt->add_option("--n", zeta_n, "system order")->required();
    zt->add_option("--out", zeta_out, "CSV path");

    auto* wit = app.add_subcommand("search-witness", "worst-case bang-bang excursion search");
    smc::WitnessParams wp;
    std::string wit_out;
    wit->add_option("--n", wp.order_n, "system order")->required();
    wit->add_option("--lambda", wp.lambda, "surface slope")->required();
    wit->add_option("--phi", wp.phi, "boundary layer thickness")->required();
    wit->add_option("--i", wp.derivative_index, "derivative index to maximize")->required();
    wp.budget = 20000;
    wit->add_option("--budget", wp.budget, "schedule evaluation budget");
    wit->add_option("--switches", wp.switches, "schedule dimension (switch count)");
    wit->add_option("--seed", wp.seed, "restart seed");
    wit->add_option("--jobs", wp.jobs, "parallel restarts (0 = all cores)");
    wit->add_option("--out", wit_out, "witness trajectory CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_config, overrides);
        if (ver->parsed()) return cmd_verify(ver_config, overrides);
        if (zt->parsed()) return cmd_zeta_table(zeta_n, zeta_out);
        if (wit->parsed()) return cmd_search_witness(wp, wit_out);
    } catch (const smc::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const smc::ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitRuntime;
    } catch (const smc::DivergenceError& e) {
        std::cerr << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
