#include "pdm/config.hpp"
#include "pdm/csv.hpp"
#include "pdm/errors.hpp"
#include "pdm/integrator.hpp"
#include "pdm/reports.hpp"
#include "pdm/trajectories.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("PDM_LOG");
        if (!env) return 0;
        const std::string v(env);
        if (v == "debug") return 2;
        if (v == "info" || v == "1") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "pdm: " << msg << "\n";
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pdm::ConfigError("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw pdm::ConfigError("failed writing output file '" + path + "'");
}

std::string render_csv(const pdm::Trajectory& traj) {
    std::ostringstream buf;
    pdm::write_trajectory_csv(buf, traj);
    return buf.str();
}

/// Initial condition for numeric runs: explicit initial {x, v} wins;
/// otherwise the analytic state at t0 (which needs the bound regime).
std::pair<double, double> initial_condition(const pdm::RunConfig& cfg,
                                            const pdm::System& sys) {
    if (cfg.x0 && cfg.v0) return {*cfg.x0, *cfg.v0};
    if (cfg.E) {
        const pdm::TrajectorySpec spec(sys, *cfg.E, cfg.phi0);
        const pdm::PhaseState st = pdm::analytic_state(spec, cfg.t0);
        return {st.x, st.v};
    }
    throw pdm::ConfigError(
        "simulate needs either an initial {x, v} section or trajectory.E");
}

int run_analytic(const std::string& config_path, const std::string& output_path) {
    const pdm::RunConfig cfg = pdm::load_config(config_path);
    const pdm::System sys = pdm::build_system(cfg);
    if (!cfg.E) throw pdm::ConfigError("analytic requires trajectory.E");
    const pdm::TrajectorySpec spec(sys, *cfg.E, cfg.phi0);
    const auto [t0, t1] = pdm::resolve_window(cfg, sys);
    const pdm::Trajectory traj =
        pdm::sample_trajectory(spec, t0, t1, cfg.samples);
    log_info("analytic trajectory: " + std::to_string(traj.samples.size()) +
             " samples, period " + std::to_string(traj.period));
    write_text(output_path, render_csv(traj));
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& output_path) {
    if (output_path.empty())
        throw pdm::ConfigError(
            "simulate requires --output (CSV plus drift-report sidecar)");
    const pdm::RunConfig cfg = pdm::load_config(config_path);
    const pdm::System sys = pdm::build_system(cfg);
    const auto [x0, v0] = initial_condition(cfg, sys);
    const auto [t0, t1] = pdm::resolve_window(cfg, sys);
    const pdm::Trajectory traj = pdm::integrate_picture(
        sys, cfg.picture, x0, v0, t0, t1, cfg.samples, cfg.integrator);
    if (traj.domain_exit)
        log_info("domain exit at t = " + std::to_string(traj.exit_time) +
                 "; trajectory is partial");
    write_text(output_path, render_csv(traj));
    const pdm::DriftReport rep = pdm::drift_report(sys, traj);
    write_text(output_path + ".drift.json", pdm::to_json_string(rep));
    return 0;
}

int run_compare(const std::string& config_path, const std::string& output_path,
                double threshold) {
    pdm::RunConfig cfg = pdm::load_config(config_path);
    const pdm::System sys = pdm::build_system(cfg);
    if (!cfg.E) throw pdm::ConfigError("compare requires trajectory.E");
    if (!cfg.t1 && !cfg.periods) cfg.periods = 1.0;
    const pdm::TrajectorySpec spec(sys, *cfg.E, cfg.phi0);
    const auto [t0, t1] = pdm::resolve_window(cfg, sys);

    const pdm::Trajectory analytic =
        pdm::sample_trajectory(spec, t0, t1, cfg.samples);
    const pdm::PhaseState& start = analytic.samples.front().state;
    const pdm::Trajectory numeric =
        pdm::integrate_picture(sys, pdm::Picture::Invariant, start.x, start.v,
                               t0, t1, cfg.samples, cfg.integrator);

    pdm::CompareReport rep;
    rep.threshold = threshold;
    rep.period = analytic.period;
    rep.energy = spec.E;
    rep.domain_exit = numeric.domain_exit || analytic.domain_exit;
    std::size_t n = std::min(analytic.samples.size(), numeric.samples.size());
    if (numeric.domain_exit && n > 0) --n; // final point is off the sample grid
    rep.samples = static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        rep.max_abs_dx = std::max(rep.max_abs_dx,
                                  std::abs(analytic.samples[i].state.x -
                                           numeric.samples[i].state.x));
        rep.max_abs_dpi = std::max(rep.max_abs_dpi,
                                   std::abs(analytic.samples[i].state.pi -
                                            numeric.samples[i].state.pi));
    }
    rep.pass = !rep.domain_exit && rep.max_abs_dx < threshold &&
               rep.max_abs_dpi < threshold;
    write_text(output_path, pdm::to_json_string(rep));
    log_info("compare: max |dx| = " + std::to_string(rep.max_abs_dx) +
             ", max |dpi| = " + std::to_string(rep.max_abs_dpi));
    return rep.pass ? 0 : 1;
}

int run_verify_algebra(const std::string& config_path,
                       const std::string& output_path, double threshold) {
    const pdm::RunConfig cfg = pdm::load_config(config_path);
    const pdm::System sys = pdm::build_system(cfg);
    pdm::AlgebraGrid grid;
    if (cfg.region_energy)
        grid.region_energy = *cfg.region_energy;
    else if (cfg.E)
        grid.region_energy = *cfg.E;
    else
        throw pdm::ConfigError(
            "verify-algebra requires grid.region_energy or trajectory.E");
    grid.n_x = cfg.grid_n_x;
    grid.n_momentum = cfg.grid_n_momentum;
    grid.step = cfg.grid_step;

    const pdm::AlgebraReport rep = pdm::verify_algebra(sys, grid);
    write_text(output_path, pdm::to_json_string(rep));
    const bool pass = rep.max_factorization_residual < threshold &&
                      rep.max_bracket1_residual < threshold &&
                      rep.max_bracket2_residual < threshold;
    log_info("verify-algebra: factorization " +
             std::to_string(rep.max_factorization_residual) + ", brackets " +
             std::to_string(rep.max_bracket1_residual) + " / " +
             std::to_string(rep.max_bracket2_residual));
    return pass ? 0 : 1;
}

int dispatch(const std::function<int()>& body) {
    try {
        return body();
    } catch (const pdm::ConfigError& e) {
        std::cerr << "pdm: config error: " << e.what() << "\n";
        return 2;
    } catch (const pdm::RegimeError& e) {
        std::cerr << "pdm: regime error: " << e.what() << "\n";
        return 3;
    } catch (const pdm::DomainError& e) {
        std::cerr << "pdm: domain error: " << e.what() << "\n";
        return 3;
    } catch (const pdm::NumericalError& e) {
        std::cerr << "pdm: numerical error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "pdm: error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"position-dependent-mass dynamics: analytic trajectories, "
                 "numeric integration and algebra verification"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    double threshold = 1e-6;

    auto* analytic = app.add_subcommand(
        "analytic", "sample the closed-form trajectory to CSV");
    analytic->add_option("--config", config_path, "JSON config path")->required();
    analytic->add_option("--output", output_path, "CSV path (default stdout)");

    auto* simulate = app.add_subcommand(
        "simulate", "integrate one picture numerically to CSV + drift sidecar");
    simulate->add_option("--config", config_path, "JSON config path")->required();
    simulate->add_option("--output", output_path, "CSV path (sidecar: <path>.drift.json)");

    auto* compare = app.add_subcommand(
        "compare", "integrate from the analytic start and report deviations");
    compare->add_option("--config", config_path, "JSON config path")->required();
    compare->add_option("--output", output_path, "JSON report path (default stdout)");
    compare->add_option("--threshold", threshold, "pass bound on |dx|, |dpi|");

    auto* verify = app.add_subcommand(
        "verify-algebra", "check the factorization and bracket closures on a grid");
    verify->add_option("--config", config_path, "JSON config path")->required();
    verify->add_option("--output", output_path, "JSON report path (default stdout)");
    verify->add_option("--threshold", threshold, "pass bound on the residuals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analytic->parsed())
        return dispatch([&] { return run_analytic(config_path, output_path); });
    if (simulate->parsed())
        return dispatch([&] { return run_simulate(config_path, output_path); });
    if (compare->parsed())
        return dispatch([&] { return run_compare(config_path, output_path, threshold); });
    return dispatch(
        [&] { return run_verify_algebra(config_path, output_path, threshold); });
}
