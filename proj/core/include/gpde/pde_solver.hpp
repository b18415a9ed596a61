#ifndef GPDE_PDE_SOLVER_HPP
#define GPDE_PDE_SOLVER_HPP

#include <optional>
#include <variant>

#include "gpde/averaging.hpp"
#include "gpde/solution_field.hpp"

namespace gpde {

/// Driver selection for a solve: oscillating (coefficients sampled at t/eps)
/// or averaged (per-node calls into an AveragedDriver).
struct OscillatingDriver {
    double epsilon = 1.0;
};
struct AveragedDriverRef {
    const AveragedDriver* driver = nullptr;
};
using DriverChoice = std::variant<OscillatingDriver, AveragedDriverRef>;

struct SolveOptions {
    bool apply_obstacle = true;  // false: plain free scheme, no projection
    bool keep_history = true;    // false: only the t = 0 slice survives
    std::optional<int> nt_override;
};

/// Explicit monotone backward scheme with obstacle projection for
///
///   min( -du/dt - F(t/eps, x, u, Du, D2u), u - S(t, x) ) = 0,  u(T, .) = phi
///
/// and its averaged counterpart with F replaced by Fbar. Per step and
/// interior node: the gradient is the central difference plus the
/// Lax-Friedrichs dissipation (L*dt/dx) * (u_{j+1} - 2u_j + u_{j-1}) / dx,
/// the Hessian entry the standard second difference; the free Euler step is
/// then projected onto {u >= S}. Ghost nodes are linearly extrapolated each
/// step (and kept above S while the projection is on). Oscillating solves
/// force nt >= 20*T/eps so the fast scale stays resolved.
///
/// Throws UnsupportedDimensionError unless dim_x == dim_b == 1 and
/// BlowUpError (with the first offending step/node) when values leave
/// [-1e12, 1e12] or go non-finite.
SolutionField solve_obstacle_pde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                 const Grid1D& grid, const DriverChoice& driver,
                                 const SolveOptions& options = {});

/// The nt actually used by solve_obstacle_pde for this request.
int resolve_nt(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Grid1D& grid,
               const DriverChoice& driver, const SolveOptions& options = {});

}  // namespace gpde

#endif  // GPDE_PDE_SOLVER_HPP
