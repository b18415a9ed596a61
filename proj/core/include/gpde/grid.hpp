#ifndef GPDE_GRID_HPP
#define GPDE_GRID_HPP

#include <optional>

#include "gpde/g_function.hpp"
#include "gpde/problem_spec.hpp"

namespace gpde {

/// Space-time grid for the 1-D solver: nx interior nodes plus one ghost node
/// at each end, so node j = 0..nx+1 sits at x_min + j*dx with
/// dx = (x_max - x_min)/(nx + 1). nt empty means "derive from the stability
/// bound".
struct Grid1D {
    double x_min = -1.0;
    double x_max = 1.0;
    int nx = 3;
    double horizon = 1.0;
    std::optional<int> nt;

    double dx() const { return (x_max - x_min) / (nx + 1); }
    double x_at(int j) const { return x_min + j * dx(); }

    void validate() const;

    /// Spatially refined grid (dx -> dx/2, nodes preserved) with nt
    /// quadrupled; used for Richardson error estimates.
    Grid1D refined() const;
};

/// CFL-style time-step count for the explicit scheme:
///
///   dt <= 0.9 dx^2 / (max_i upper_i * Sigma_sup + dx * B_sup + dx^2 * L)
///
/// where Sigma_sup bounds |sigma|^2 over the grid, B_sup bounds |b| + 2|h|,
/// and L is the declared Lipschitz constant. Bounds are recomputed from the
/// spec's term catalog (all temporal factors are bounded by 1).
int stable_nt(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Grid1D& grid);

/// Rectangle of (time slice, node) indices used for norms; excludes the
/// boundary layer.
struct GridWindow {
    int j_lo = 1;
    int j_hi = 1;  // inclusive
    int k_lo = 0;
    int k_hi = 0;  // inclusive

    /// Inner `fraction` of the spatial domain, all time slices; fraction in
    /// (0, 1], clamped to the interior nodes.
    static GridWindow inner(int nx, int nt, double fraction);
};

}  // namespace gpde

#endif  // GPDE_GRID_HPP
