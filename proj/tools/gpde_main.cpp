// gpde: batch front-end for the obstacle-PDE / BSDE-lattice laboratory.
//
// Subcommands:
//   validate <config>                  regularity + covariance band checks
//   solve    <config> [--epsilon E | --averaged] [--export-lattice]
//   sweep    <config>                  epsilon ladder against the averaged field
//   fk-check <config>                  grid vs lattice cross-check
//   penalize <config>                  penalization ladder on the lattice
//
// <config> is a JSON file path or a bundled preset name (g_heat,
// obstacle_basic, averaging_trig, penalization_demo).

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gpde/config.hpp"
#include "gpde/errors.hpp"
#include "gpde/runner.hpp"

namespace {

using namespace gpde;

struct GlobalArgs {
    std::string out_dir;
    int threads = 1;
    std::optional<uint64_t> seed;
};

std::string out_path(const ExperimentConfig& cfg, const GlobalArgs& args,
                     const std::string& file) {
    const std::string dir = args.out_dir.empty() ? cfg.output_dir : args.out_dir;
    return (std::filesystem::path(dir) / file).string();
}

ExperimentConfig load(const std::string& source, const GlobalArgs& args) {
    ExperimentConfig cfg = load_config(source);
    if (args.seed) cfg.seed = *args.seed;
    return cfg;
}

int cmd_validate(const std::string& source, const GlobalArgs& args) {
    ExperimentConfig cfg = load(source, args);
    const ValidationOutcome outcome = run_validation(cfg);
    write_validation_json(outcome, cfg, out_path(cfg, args, "validation.json"));
    std::printf("validate %s: nondegenerate=%s assumptions=%s -> %s\n", cfg.name.c_str(),
                outcome.nondegeneracy.pass ? "pass" : "FAIL",
                outcome.assumptions.pass ? "pass" : "FAIL", outcome.pass ? "PASS" : "FAIL");
    for (const auto& c : outcome.assumptions.checks) {
        if (!c.pass)
            std::printf("  failed check %s: observed %.6g vs bound %.6g\n", c.name.c_str(),
                        c.observed, c.bound);
    }
    return outcome.exit_code;
}

int cmd_solve(const std::string& source, const GlobalArgs& args, std::optional<double> eps_flag,
              bool averaged_flag, bool export_lattice) {
    ExperimentConfig cfg = load(source, args);

    SolutionField field;
    if (averaged_flag || (!eps_flag && !cfg.problem.epsilon)) {
        AveragedDriver averaged(cfg.problem, cfg.averaging);
        field = solve_obstacle_pde(cfg.problem, cfg.sigma, cfg.grid,
                                   AveragedDriverRef{&averaged});
        std::printf("solve %s (averaged, mode=%s): nt=%d u(0,%.4g)=%.10g\n", cfg.name.c_str(),
                    to_string(averaged.mode()), field.nt, 0.5 * (cfg.grid.x_min + cfg.grid.x_max),
                    field.probe0(0.5 * (cfg.grid.x_min + cfg.grid.x_max)));
    } else {
        const double eps = eps_flag ? *eps_flag : *cfg.problem.epsilon;
        field = solve_obstacle_pde(cfg.problem, cfg.sigma, cfg.grid, OscillatingDriver{eps});
        std::printf("solve %s (epsilon=%.4g): nt=%d u(0,%.4g)=%.10g\n", cfg.name.c_str(), eps,
                    field.nt, 0.5 * (cfg.grid.x_min + cfg.grid.x_max),
                    field.probe0(0.5 * (cfg.grid.x_min + cfg.grid.x_max)));
    }
    const std::string path = out_path(cfg, args, "solution.csv");
    write_solution_csv(field, path);
    std::printf("  wrote %s\n", path.c_str());

    if (export_lattice) {
        if (!cfg.lattice) throw ConfigError("--export-lattice: config has no lattice section");
        LatticeSolveOptions opts;
        opts.keep_fields = true;
        opts.epsilon = cfg.problem.epsilon.value_or(1.0);
        const LatticeSolution sol =
            solve_reflected_bsde(cfg.problem, cfg.sigma, *cfg.lattice, opts);
        const std::string lpath = out_path(cfg, args, "lattice.csv");
        write_lattice_csv(sol, lpath);
        std::printf("  lattice Y0=%.10g Z0=%.10g, wrote %s\n", sol.y0, sol.z0, lpath.c_str());
    }
    return kOk;
}

int cmd_sweep(const std::string& source, const GlobalArgs& args) {
    ExperimentConfig cfg = load(source, args);
    const SweepReport report = run_epsilon_sweep(cfg, args.threads);
    write_sweep_csv(report, out_path(cfg, args, "sweep.csv"));
    write_sweep_verdict_json(report, cfg, out_path(cfg, args, "verdict.json"));

    std::printf("sweep %s: averaging=%s nt_bar=%d richardson=%.3e\n", cfg.name.c_str(),
                report.averaging_mode.c_str(), report.nt_averaged, report.richardson_estimate);
    for (const SweepRow& row : report.rows)
        std::printf("  eps=%-6.4g err=%.6e at (t=%.4g, x=%.4g) nt=%d growth=%.4g lip=%.4g "
                    "[%.2fs]\n",
                    row.epsilon, row.sup_error, row.argmax_t, row.argmax_x, row.nt,
                    row.growth_ratio, row.lipschitz_modulus, row.wall_seconds);
    std::printf("  verdict: %s\n", report.verdict.c_str());
    if (!report.error.empty()) std::printf("  error: %s\n", report.error.c_str());
    return report.exit_code;
}

int cmd_fk_check(const std::string& source, const GlobalArgs& args) {
    ExperimentConfig cfg = load(source, args);
    const FkReport report = run_feynman_kac_check(cfg, args.threads);
    write_fk_verdict_json(report, cfg, out_path(cfg, args, "verdict.json"));
    for (const FkLevel& lvl : report.levels)
        std::printf("fk-check %s: nx=%d N=%d u=%.8g y0=%.8g gap=%.3e\n", cfg.name.c_str(),
                    lvl.nx, lvl.lattice_steps, lvl.u_at_x0, lvl.y0, lvl.gap);
    std::printf("  pass=%s (shrinks=%s, tol=%.2e)\n", report.pass ? "yes" : "NO",
                report.gap_shrinks ? "yes" : "NO", report.tolerance);
    return report.exit_code;
}

int cmd_penalize(const std::string& source, const GlobalArgs& args) {
    ExperimentConfig cfg = load(source, args);
    const PenalizationReport report = run_penalization_sweep(cfg);
    write_penalization_csv(report, out_path(cfg, args, "penalization.csv"));
    write_penalization_verdict_json(report, cfg, out_path(cfg, args, "verdict.json"));
    for (size_t i = 0; i < report.sweep.n_list.size(); ++i)
        std::printf("penalize %s: n=%-6g y0=%.10g gap=%.3e\n", cfg.name.c_str(),
                    report.sweep.n_list[i], report.sweep.y0[i],
                    report.sweep.gap_to_reflected[i]);
    std::printf("  reflected y0=%.10g final_gap=%.3e pass=%s\n", report.sweep.reflected_y0,
                report.sweep.final_gap, report.pass ? "yes" : "NO");
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for obstacle PDEs under volatility uncertainty"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalArgs args;
    app.add_option("--out", args.out_dir, "output directory (overrides the config)");
    app.add_option("--threads", args.threads, "worker threads for independent solves")
        ->check(CLI::PositiveNumber);
    uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "seed override for sampling");

    std::string config_source;
    std::optional<double> eps_flag;
    bool averaged_flag = false;
    bool export_lattice = false;

    auto* validate = app.add_subcommand("validate", "check the problem data assumptions");
    validate->add_option("config", config_source)->required();

    auto* solve = app.add_subcommand("solve", "single obstacle-PDE solve");
    solve->add_option("config", config_source)->required();
    double eps_value = 0.0;
    auto* eps_opt = solve->add_option("--epsilon", eps_value, "oscillation scale in (0,1]");
    solve->add_flag("--averaged", averaged_flag, "solve the averaged problem");
    solve->add_flag("--export-lattice", export_lattice, "also export the reflected lattice");

    auto* sweep = app.add_subcommand("sweep", "epsilon sweep against the averaged field");
    sweep->add_option("config", config_source)->required();

    auto* fk = app.add_subcommand("fk-check", "grid vs lattice consistency check");
    fk->add_option("config", config_source)->required();

    auto* penalize = app.add_subcommand("penalize", "penalization ladder on the lattice");
    penalize->add_option("config", config_source)->required();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count() > 0) args.seed = seed_value;
    if (eps_opt->count() > 0) eps_flag = eps_value;

    try {
        if (app.got_subcommand(validate)) return cmd_validate(config_source, args);
        if (app.got_subcommand(solve))
            return cmd_solve(config_source, args, eps_flag, averaged_flag, export_lattice);
        if (app.got_subcommand(sweep)) return cmd_sweep(config_source, args);
        if (app.got_subcommand(fk)) return cmd_fk_check(config_source, args);
        if (app.got_subcommand(penalize)) return cmd_penalize(config_source, args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const BlowUpError& e) {
        std::fprintf(stderr, "solver blow-up: %s\n", e.what());
        return kSolverBlowUp;
    } catch (const AveragingFailure& e) {
        std::fprintf(stderr, "averaging failure: %s (residuals:", e.what());
        for (double r : e.residual_trace()) std::fprintf(stderr, " %.3e", r);
        std::fprintf(stderr, ")\n");
        return kAveragingFailed;
    } catch (const PropertyFailure& e) {
        std::fprintf(stderr, "property failure: %s\n", e.what());
        return kPenalizationFailed;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInternalError;
    }
    return kInternalError;
}
