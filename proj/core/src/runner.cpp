#include "gpde/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>

#include <json.hpp>

#include "gpde/driver.hpp"
#include "gpde/errors.hpp"

namespace gpde {

namespace {

using nlohmann::json;

constexpr double kNoiseFloor = 1e-9;    // comparisons below this are rounding noise
constexpr double kMonotoneSlack = 1.1;  // 10% slack on the error ladder

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);  // binary: byte-stable newlines
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

json sigma_echo(const CovarianceSet& sigma) {
    return json{{"lower", sigma.lower}, {"upper", sigma.upper}};
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// sup over the window of |coarse - fine| where `fine` lives on the
/// spatially refined grid (node 2j matches node j) with 4x the time steps.
double refinement_gap(const SolutionField& coarse, const SolutionField& fine,
                      const GridWindow& window) {
    if (fine.nx != 2 * coarse.nx + 1 || fine.nt % coarse.nt != 0)
        throw DimensionError("refinement_gap: fields are not a 2x refinement pair");
    const int ratio = fine.nt / coarse.nt;
    double best = 0.0;
    for (int k = window.k_lo; k <= std::min(window.k_hi, coarse.nt); ++k)
        for (int j = window.j_lo; j <= window.j_hi; ++j)
            best = std::max(best, std::fabs(coarse.at(k, j) - fine.at(k * ratio, 2 * j)));
    return best;
}

}  // namespace

SweepReport run_epsilon_sweep(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    if (cfg.epsilons.empty()) throw ConfigError("sweep: config lists no epsilons");

    SweepReport report;
    AveragedDriver averaged(cfg.problem, cfg.averaging);
    report.averaging_mode = to_string(averaged.mode());
    report.averaging_period = averaged.period();

    const int nt_bar = cfg.grid.nt ? *cfg.grid.nt : stable_nt(cfg.problem, cfg.sigma, cfg.grid);
    report.nt_averaged = nt_bar;

    SolveOptions avg_opts;
    avg_opts.nt_override = nt_bar;
    const DriverChoice avg_choice = AveragedDriverRef{&averaged};

    Grid1D fine_grid = cfg.grid.refined();
    SolveOptions fine_opts;
    fine_opts.nt_override = 4 * nt_bar;

    SolutionField u_bar, u_bar_fine;
    if (threads > 1) {
        auto base = std::async(std::launch::async, [&] {
            return solve_obstacle_pde(cfg.problem, cfg.sigma, cfg.grid, avg_choice, avg_opts);
        });
        auto fine = std::async(std::launch::async, [&] {
            return solve_obstacle_pde(cfg.problem, cfg.sigma, fine_grid, avg_choice, fine_opts);
        });
        u_bar = base.get();
        u_bar_fine = fine.get();
    } else {
        u_bar = solve_obstacle_pde(cfg.problem, cfg.sigma, cfg.grid, avg_choice, avg_opts);
        u_bar_fine = solve_obstacle_pde(cfg.problem, cfg.sigma, fine_grid, avg_choice, fine_opts);
    }
    report.averaging_residual = averaged.last_residual();

    const GridWindow window = GridWindow::inner(cfg.grid.nx, nt_bar, cfg.window);
    // first-order-in-dt scheme under dt ~ dx^2: one (dx,dt)->(dx/2,dt/4)
    // refinement shrinks the error ~4x, so the measured gap underestimates
    // the coarse error by the factor 4/3
    report.richardson_estimate = refinement_gap(u_bar, u_bar_fine, window) * (4.0 / 3.0);
    report.ubar_growth_ratio = growth_ratio(u_bar, cfg.problem.growth_m, window);
    report.ubar_lipschitz_modulus = lipschitz_modulus(u_bar, window);

    auto solve_one = [&](double eps) {
        SolveOptions opts;
        const int wanted = resolve_nt(cfg.problem, cfg.sigma, cfg.grid, OscillatingDriver{eps});
        const int nt_eps = nt_bar * ((wanted + nt_bar - 1) / nt_bar);
        opts.nt_override = nt_eps;
        return solve_obstacle_pde(cfg.problem, cfg.sigma, cfg.grid, OscillatingDriver{eps}, opts);
    };

    try {
        std::vector<SolutionField> fields(cfg.epsilons.size());
        std::vector<double> walls(cfg.epsilons.size(), 0.0);
        if (threads > 1) {
            std::vector<std::future<std::pair<SolutionField, double>>> futures;
            for (double eps : cfg.epsilons)
                futures.push_back(std::async(std::launch::async, [&, eps] {
                    const auto t0 = std::chrono::steady_clock::now();
                    SolutionField f = solve_one(eps);
                    return std::make_pair(std::move(f), wall_since(t0));
                }));
            for (size_t i = 0; i < futures.size(); ++i) {
                auto pair = futures[i].get();
                fields[i] = std::move(pair.first);
                walls[i] = pair.second;
            }
        } else {
            for (size_t i = 0; i < cfg.epsilons.size(); ++i) {
                const auto t0 = std::chrono::steady_clock::now();
                fields[i] = solve_one(cfg.epsilons[i]);
                walls[i] = wall_since(t0);
            }
        }

        for (size_t i = 0; i < cfg.epsilons.size(); ++i) {
            const SolutionField& u_eps = fields[i];
            const SupNormResult err = sup_norm_diff(u_eps, u_bar, window);
            SweepRow row;
            row.epsilon = cfg.epsilons[i];
            row.sup_error = err.value;
            row.argmax_t = err.t;
            row.argmax_x = err.x;
            row.argmax_k = err.k;
            row.argmax_j = err.j;
            row.nt = u_eps.nt;
            row.wall_seconds = walls[i];
            const GridWindow own = GridWindow::inner(cfg.grid.nx, u_eps.nt, cfg.window);
            row.growth_ratio = growth_ratio(u_eps, cfg.problem.growth_m, own);
            row.lipschitz_modulus = lipschitz_modulus(u_eps, own);
            report.rows.push_back(row);
        }
    } catch (const BlowUpError& e) {
        report.verdict = "failed";
        report.error = e.what();
        report.exit_code = kSolverBlowUp;
        return report;
    } catch (const AveragingFailure& e) {
        report.verdict = "failed";
        report.error = e.what();
        report.exit_code = kAveragingFailed;
        return report;
    }

    report.errors_nonincreasing = true;
    for (size_t i = 1; i < report.rows.size(); ++i) {
        if (report.rows[i].sup_error >
            kMonotoneSlack * report.rows[i - 1].sup_error + kNoiseFloor)
            report.errors_nonincreasing = false;
    }
    const double final_error = report.rows.back().sup_error;
    report.final_within_scheme_error =
        final_error <= std::max(3.0 * report.richardson_estimate, kNoiseFloor);

    if (!report.errors_nonincreasing) {
        report.verdict = "non-monotone";
        report.exit_code = kSweepNotConverged;
    } else if (!report.final_within_scheme_error) {
        report.verdict = "failed";
        report.exit_code = kSweepNotConverged;
    } else {
        report.verdict = "converged";
        report.exit_code = kOk;
    }
    return report;
}

ValidationOutcome run_validation(const ExperimentConfig& cfg) {
    cfg.validate();
    ValidationOutcome out;
    out.nondegeneracy = check_nondegenerate(cfg.sigma);
    out.assumptions = validate_assumptions(cfg.problem, cfg.validation.box_lo,
                                           cfg.validation.box_hi, cfg.validation.samples,
                                           cfg.seed);
    out.pass = out.nondegeneracy.pass && out.assumptions.pass;
    out.exit_code = out.pass ? kOk : kValidationFailed;
    return out;
}

FkReport run_feynman_kac_check(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    if (!cfg.lattice) throw ConfigError("fk-check: config has no lattice section");

    FkReport report;
    report.tolerance = cfg.fk_tolerance;
    const double eps = cfg.problem.epsilon.value_or(1.0);

    auto level = [&](const Grid1D& grid, int lattice_steps, std::optional<int> nt_override) {
        FkLevel lvl;
        lvl.nx = grid.nx;
        lvl.lattice_steps = lattice_steps;
        SolveOptions opts;
        opts.keep_history = false;
        opts.nt_override = nt_override;
        Lattice lat{cfg.lattice->x0, lattice_steps};
        LatticeSolveOptions lopts;
        lopts.epsilon = eps;
        if (threads > 1) {
            auto pde = std::async(std::launch::async, [&] {
                return solve_obstacle_pde(cfg.problem, cfg.sigma, grid, OscillatingDriver{eps},
                                          opts);
            });
            auto tree = std::async(std::launch::async, [&] {
                return solve_reflected_bsde(cfg.problem, cfg.sigma, lat, lopts);
            });
            const SolutionField field = pde.get();
            const LatticeSolution sol = tree.get();
            lvl.nt = field.nt;
            lvl.u_at_x0 = field.probe0(cfg.lattice->x0);
            lvl.y0 = sol.y0;
        } else {
            const SolutionField field =
                solve_obstacle_pde(cfg.problem, cfg.sigma, grid, OscillatingDriver{eps}, opts);
            const LatticeSolution sol = solve_reflected_bsde(cfg.problem, cfg.sigma, lat, lopts);
            lvl.nt = field.nt;
            lvl.u_at_x0 = field.probe0(cfg.lattice->x0);
            lvl.y0 = sol.y0;
        }
        lvl.gap = std::fabs(lvl.y0 - lvl.u_at_x0);
        return lvl;
    };

    const int nt0 = resolve_nt(cfg.problem, cfg.sigma, cfg.grid, OscillatingDriver{eps});
    report.levels.push_back(level(cfg.grid, cfg.lattice->steps, nt0));
    report.levels.push_back(level(cfg.grid.refined(), 4 * cfg.lattice->steps, 4 * nt0));

    const double g0 = report.levels[0].gap;
    const double g1 = report.levels[1].gap;
    report.gap_shrinks = g1 <= g0 + 1e-9;  // slack for gaps at rounding level
    report.within_tolerance = g1 <= report.tolerance;
    report.pass = report.gap_shrinks && report.within_tolerance;
    report.exit_code = report.pass ? kOk : kFkFailed;
    return report;
}

PenalizationReport run_penalization_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.lattice) throw ConfigError("penalize: config has no lattice section");
    if (cfg.penalty.n_list.empty()) throw ConfigError("penalize: config has no penalty.n_list");

    PenalizationReport report;
    report.gap_tolerance = cfg.penalty.gap_tolerance;
    report.sweep =
        penalization_sweep(cfg.problem, cfg.sigma, *cfg.lattice, cfg.penalty.n_list);
    report.pass = report.sweep.monotone && report.sweep.gaps_shrink &&
                  report.sweep.final_gap <= report.gap_tolerance;
    report.exit_code = report.pass ? kOk : kPenalizationFailed;
    return report;
}

void write_sweep_csv(const SweepReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "epsilon,sup_norm_error,argmax_t,argmax_x,argmax_k,argmax_j,nt,growth_ratio,"
           "lipschitz_modulus\n";
    for (const SweepRow& row : report.rows) {
        out << fmt(row.epsilon) << ',' << fmt(row.sup_error) << ',' << fmt(row.argmax_t) << ','
            << fmt(row.argmax_x) << ',' << row.argmax_k << ',' << row.argmax_j << ',' << row.nt
            << ',' << fmt(row.growth_ratio) << ',' << fmt(row.lipschitz_modulus) << '\n';
    }
}

void write_sweep_verdict_json(const SweepReport& report, const ExperimentConfig& cfg,
                              const std::string& path) {
    json rows = json::array();
    for (const SweepRow& row : report.rows) {
        rows.push_back(json{{"epsilon", row.epsilon},
                            {"sup_norm_error", row.sup_error},
                            {"argmax_t", row.argmax_t},
                            {"argmax_x", row.argmax_x},
                            {"nt", row.nt},
                            {"growth_ratio", row.growth_ratio},
                            {"lipschitz_modulus", row.lipschitz_modulus}});
    }
    json doc{
        {"command", "sweep"},
        {"config", cfg.name},
        {"seed", cfg.seed},
        {"sigma", sigma_echo(cfg.sigma)},
        {"window", cfg.window},
        {"averaging",
         {{"mode", report.averaging_mode},
          {"period", report.averaging_period},
          {"residual", report.averaging_residual}}},
        {"nt_averaged", report.nt_averaged},
        {"richardson_estimate", report.richardson_estimate},
        {"ubar_growth_ratio", report.ubar_growth_ratio},
        {"ubar_lipschitz_modulus", report.ubar_lipschitz_modulus},
        {"errors_nonincreasing", report.errors_nonincreasing},
        {"final_within_scheme_error", report.final_within_scheme_error},
        {"rows", rows},
        {"verdict", report.verdict},
    };
    if (!report.error.empty()) doc["error"] = report.error;
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_validation_json(const ValidationOutcome& outcome, const ExperimentConfig& cfg,
                           const std::string& path) {
    json axes = json::array();
    for (const AxisReport& ax : outcome.nondegeneracy.axes) {
        axes.push_back(json{{"axis", ax.axis},
                            {"lower", ax.lower},
                            {"upper", ax.upper},
                            {"pass", ax.pass},
                            {"note", ax.note}});
    }
    json checks = json::array();
    for (const AssumptionCheck& c : outcome.assumptions.checks) {
        checks.push_back(json{{"name", c.name},
                              {"observed", c.observed},
                              {"bound", c.bound},
                              {"kind", c.lower_bound ? "at_least" : "at_most"},
                              {"pass", c.pass}});
    }
    json doc{
        {"command", "validate"},
        {"config", cfg.name},
        {"seed", outcome.assumptions.seed},
        {"samples", outcome.assumptions.samples},
        {"box", {outcome.assumptions.box_lo, outcome.assumptions.box_hi}},
        {"sigma", sigma_echo(cfg.sigma)},
        {"nondegenerate",
         {{"pass", outcome.nondegeneracy.pass},
          {"min_lower", outcome.nondegeneracy.min_lower},
          {"max_upper", outcome.nondegeneracy.max_upper},
          {"axes", axes}}},
        {"assumptions", {{"pass", outcome.assumptions.pass}, {"checks", checks}}},
        {"pass", outcome.pass},
    };
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_fk_verdict_json(const FkReport& report, const ExperimentConfig& cfg,
                           const std::string& path) {
    json levels = json::array();
    for (const FkLevel& lvl : report.levels) {
        levels.push_back(json{{"nx", lvl.nx},
                              {"nt", lvl.nt},
                              {"lattice_steps", lvl.lattice_steps},
                              {"u_at_x0", lvl.u_at_x0},
                              {"y0", lvl.y0},
                              {"gap", lvl.gap}});
    }
    json doc{
        {"command", "fk-check"},
        {"config", cfg.name},
        {"sigma", sigma_echo(cfg.sigma)},
        {"tolerance", report.tolerance},
        {"levels", levels},
        {"gap_shrinks", report.gap_shrinks},
        {"within_tolerance", report.within_tolerance},
        {"pass", report.pass},
    };
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_penalization_csv(const PenalizationReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "n,y0,gap_to_reflected\n";
    for (size_t i = 0; i < report.sweep.n_list.size(); ++i) {
        out << fmt(report.sweep.n_list[i]) << ',' << fmt(report.sweep.y0[i]) << ','
            << fmt(report.sweep.gap_to_reflected[i]) << '\n';
    }
}

void write_penalization_verdict_json(const PenalizationReport& report,
                                     const ExperimentConfig& cfg, const std::string& path) {
    json doc{
        {"command", "penalize"},
        {"config", cfg.name},
        {"sigma", sigma_echo(cfg.sigma)},
        {"n_list", report.sweep.n_list},
        {"y0", report.sweep.y0},
        {"reflected_y0", report.sweep.reflected_y0},
        {"monotone", report.sweep.monotone},
        {"max_monotonicity_violation", report.sweep.max_monotonicity_violation},
        {"gaps_shrink", report.sweep.gaps_shrink},
        {"final_gap", report.sweep.final_gap},
        {"gap_tolerance", report.gap_tolerance},
        {"pass", report.pass},
    };
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
}

void write_solution_csv(const SolutionField& field, const std::string& path) {
    auto out = open_out(path);
    out << "t,x,u,obstacle_active\n";
    const int k_hi = field.full_history ? field.nt : 0;
    for (int k = 0; k <= k_hi; ++k) {
        for (int j = 0; j <= field.nx + 1; ++j) {
            out << fmt(field.t_at(k)) << ',' << fmt(field.x_at(j)) << ',' << fmt(field.at(k, j))
                << ',' << (field.active(k, j) ? 1 : 0) << '\n';
        }
    }
}

void write_lattice_csv(const LatticeSolution& sol, const std::string& path) {
    if (sol.y.empty()) throw ConfigError("lattice CSV export needs keep_fields");
    auto out = open_out(path);
    out << "k,j,t,x,y,z,a\n";
    for (int k = 0; k <= sol.steps; ++k) {
        const auto& row = sol.y[static_cast<size_t>(k)];
        for (int idx = 0; idx < static_cast<int>(row.size()); ++idx) {
            const int j = idx - k;
            out << k << ',' << j << ',' << fmt(sol.t_at(k)) << ',' << fmt(sol.x_at(k, idx))
                << ',' << fmt(row[static_cast<size_t>(idx)]) << ','
                << fmt(sol.z[static_cast<size_t>(k)][static_cast<size_t>(idx)]) << ','
                << fmt(sol.a[static_cast<size_t>(k)][static_cast<size_t>(idx)]) << '\n';
        }
    }
}

}  // namespace gpde
