#ifndef GPDE_RUNNER_HPP
#define GPDE_RUNNER_HPP

#include <string>
#include <vector>

#include "gpde/assumptions.hpp"
#include "gpde/config.hpp"
#include "gpde/lattice.hpp"
#include "gpde/pde_solver.hpp"

namespace gpde {

/// Exit codes enumerate the first failing stage; 0 means every requested
/// verdict passed.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kValidationFailed = 2,
    kSolverBlowUp = 3,
    kAveragingFailed = 4,
    kSweepNotConverged = 5,
    kFkFailed = 6,
    kPenalizationFailed = 7,
    kInternalError = 9,
};

struct SweepRow {
    double epsilon = 0.0;
    double sup_error = 0.0;
    double argmax_t = 0.0, argmax_x = 0.0;
    int argmax_k = 0, argmax_j = 0;
    int nt = 0;
    double wall_seconds = 0.0;  // console-only; never serialized (see README)
    double growth_ratio = 0.0;
    double lipschitz_modulus = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::string averaging_mode;
    double averaging_period = 0.0;
    double averaging_residual = 0.0;
    double richardson_estimate = 0.0;
    int nt_averaged = 0;
    double ubar_growth_ratio = 0.0;
    double ubar_lipschitz_modulus = 0.0;
    bool errors_nonincreasing = false;
    bool final_within_scheme_error = false;
    std::string verdict;  // converged | non-monotone | failed
    std::string error;    // populated when a solve aborted the sweep
    int exit_code = kOk;
};

struct ValidationOutcome {
    NondegeneracyReport nondegeneracy;
    AssumptionReport assumptions;
    bool pass = false;
    int exit_code = kOk;
};

struct FkLevel {
    int nx = 0;
    int nt = 0;
    int lattice_steps = 0;
    double u_at_x0 = 0.0;
    double y0 = 0.0;
    double gap = 0.0;
};

struct FkReport {
    std::vector<FkLevel> levels;
    double tolerance = 0.0;
    bool gap_shrinks = false;
    bool within_tolerance = false;
    bool pass = false;
    int exit_code = kOk;
};

struct PenalizationReport {
    PenalizationSweepResult sweep;
    double gap_tolerance = 0.0;
    bool pass = false;
    int exit_code = kOk;
};

/// Certifies the averaging limit: solves the averaged field once, each
/// oscillating field on the shared spatial grid (nt rounded up to a multiple
/// of the averaged nt), measures the windowed sup-norm gap per epsilon and
/// compares the last gap against the Richardson estimate of the averaged
/// field's own scheme error. threads > 1 runs the epsilon solves
/// concurrently; outputs are identical either way.
SweepReport run_epsilon_sweep(const ExperimentConfig& cfg, int threads = 1);

/// Non-degeneracy of the covariance band plus the sampled regularity checks.
ValidationOutcome run_validation(const ExperimentConfig& cfg);

/// Solves the same problem on the grid and on the lattice at two refinement
/// levels; passes when the gap shrinks and ends below the tolerance.
FkReport run_feynman_kac_check(const ExperimentConfig& cfg, int threads = 1);

PenalizationReport run_penalization_sweep(const ExperimentConfig& cfg);

// --- deterministic writers (fixed formats, no timestamps, no timings) ---
void write_sweep_csv(const SweepReport& report, const std::string& path);
void write_sweep_verdict_json(const SweepReport& report, const ExperimentConfig& cfg,
                              const std::string& path);
void write_validation_json(const ValidationOutcome& outcome, const ExperimentConfig& cfg,
                           const std::string& path);
void write_fk_verdict_json(const FkReport& report, const ExperimentConfig& cfg,
                           const std::string& path);
void write_penalization_csv(const PenalizationReport& report, const std::string& path);
void write_penalization_verdict_json(const PenalizationReport& report,
                                     const ExperimentConfig& cfg, const std::string& path);
void write_solution_csv(const SolutionField& field, const std::string& path);
void write_lattice_csv(const LatticeSolution& sol, const std::string& path);

}  // namespace gpde

#endif  // GPDE_RUNNER_HPP
