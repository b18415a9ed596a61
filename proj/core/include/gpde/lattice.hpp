#ifndef GPDE_LATTICE_HPP
#define GPDE_LATTICE_HPP

#include <optional>
#include <vector>

#include "gpde/g_function.hpp"
#include "gpde/problem_spec.hpp"

namespace gpde {

/// Recombining trinomial lattice for the canonical forward X = x0 + B.
/// dt = T/steps, dx = sigma_bar * sqrt(dt), branches {+dx, 0, -dx} with
/// probabilities (q/2, 1-q, q/2): mean zero, one-step variance
/// q * sigma_bar^2 * dt, so q ranging over [q_min, 1] with
/// q_min = sigma_lo^2 / sigma_bar^2 spans exactly the admissible variance
/// band. The one-step value is affine in q, so the sublinear one-step
/// expectation is the larger endpoint — no inner optimizer.
struct Lattice {
    double x0 = 0.0;
    int steps = 1;
};

enum class LatticeMode { Reflected, Penalized };

struct LatticeSolveOptions {
    bool keep_fields = false;  // keep full (Y, Z, A) node fields
    std::optional<double> epsilon;  // overrides spec.epsilon; default 1
};

/// Solution of the backward recursion. y0/z0 are the root values; when
/// keep_fields is set, level k holds 2k+1 entries (node j at index j+k) and
/// `a` stores the per-node reflection increment (projected minus free value,
/// zero in penalized mode).
struct LatticeSolution {
    LatticeMode mode = LatticeMode::Penalized;
    double penalty = 0.0;
    int steps = 0;
    double dt = 0.0, dx = 0.0, x0 = 0.0;
    double y0 = 0.0, z0 = 0.0;
    std::vector<std::vector<double>> y, z, a;

    double x_at(int level, int offset) const { return x0 + (offset - level) * dx; }
    double t_at(int level) const { return level * dt; }
};

/// Penalized recursion: one-step sublinear expectation of the next slice
/// (including the variation driver g with weight q * sigma_bar^2 * dt inside
/// the max over q), plus f * dt, plus the explicit penalty
/// n * (S - Y)^- ... evaluated at the next slice's center value.
/// n_penalty * dt <= 1 keeps the penalty from overshooting the obstacle,
/// which the discrete ordering chain relies on.
///
/// Requires the lattice-supported subclass: dim_x = dim_b = 1, b = h = 0 and
/// sigma identically 1 (UnsupportedForwardError otherwise).
LatticeSolution solve_penalized_bsde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                     const Lattice& lat, double n_penalty,
                                     const LatticeSolveOptions& options = {});

/// Reflected recursion: same one-step map with projection onto {Y >= S}
/// instead of a penalty; the per-node A increment is exactly the amount the
/// projection added, so it is nonnegative and vanishes wherever Y stays
/// strictly above the obstacle.
LatticeSolution solve_reflected_bsde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                     const Lattice& lat,
                                     const LatticeSolveOptions& options = {});

struct PenalizationSweepResult {
    std::vector<double> n_list;
    std::vector<double> y0;              // root value per penalty weight
    std::vector<double> gap_to_reflected;
    double reflected_y0 = 0.0;
    bool monotone = true;                // nondecreasing y0 within slack
    double max_monotonicity_violation = 0.0;
    bool gaps_shrink = true;             // successive y0 increments decrease
    double final_gap = 0.0;
};

/// Runs the penalized solve over a strictly increasing n_list and the
/// reflected solve once. Throws PropertyFailure when the root values
/// decrease by more than 1e-10 (a scheme bug, not an input problem) and
/// ConfigError when the terminal value fails to dominate the obstacle on the
/// visited nodes.
PenalizationSweepResult penalization_sweep(const ProblemSpec& spec,
                                           const CovarianceSet& sigma_set, const Lattice& lat,
                                           const std::vector<double>& n_list,
                                           const LatticeSolveOptions& options = {});

}  // namespace gpde

#endif  // GPDE_LATTICE_HPP
