#include "gpde/pde_solver.hpp"

#include <algorithm>
#include <cmath>

#include "gpde/driver.hpp"
#include "gpde/errors.hpp"

namespace gpde {

namespace {

constexpr double kBlowUpThreshold = 1e12;

}  // namespace

int resolve_nt(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Grid1D& grid,
               const DriverChoice& driver, const SolveOptions& options) {
    if (options.nt_override) return std::max(1, *options.nt_override);
    int nt = grid.nt ? *grid.nt : stable_nt(spec, sigma_set, grid);
    if (const auto* osc = std::get_if<OscillatingDriver>(&driver)) {
        const int fast = static_cast<int>(std::ceil(20.0 * grid.horizon / osc->epsilon));
        nt = std::max(nt, fast);
    }
    return nt;
}

SolutionField solve_obstacle_pde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                 const Grid1D& grid, const DriverChoice& driver,
                                 const SolveOptions& options) {
    if (spec.dim_x != 1 || spec.dim_b != 1)
        throw UnsupportedDimensionError("solve_obstacle_pde: only dim_x = dim_b = 1 supported");
    if (sigma_set.dim != 1)
        throw DimensionError("solve_obstacle_pde: covariance set must be scalar");
    grid.validate();

    const bool oscillating = std::holds_alternative<OscillatingDriver>(driver);
    const double eps = oscillating ? std::get<OscillatingDriver>(driver).epsilon : 0.0;
    const AveragedDriver* avg =
        oscillating ? nullptr : std::get<AveragedDriverRef>(driver).driver;
    if (!oscillating && avg == nullptr)
        throw ConfigError("solve_obstacle_pde: averaged driver missing");
    if (oscillating && !(eps > 0.0 && eps <= 1.0))
        throw ConfigError("solve_obstacle_pde: epsilon must lie in (0, 1]");

    const int nt = resolve_nt(spec, sigma_set, grid, driver, options);
    const int nx = grid.nx;
    const double dx = grid.dx();
    const double dt = grid.horizon / nt;
    const double lambda = spec.lipschitz_L * dt / dx;
    const int stride = nx + 2;

    SolutionField field;
    field.kind = oscillating ? SolutionField::Kind::Oscillating : SolutionField::Kind::Averaged;
    field.epsilon = eps;
    field.x_min = grid.x_min;
    field.x_max = grid.x_max;
    field.nx = nx;
    field.horizon = grid.horizon;
    field.nt = nt;
    field.dx = dx;
    field.dt = dt;
    field.full_history = options.keep_history;
    const size_t rows = options.keep_history ? static_cast<size_t>(nt) + 1 : 1;
    field.values.assign(rows * stride, 0.0);
    field.obstacle_active.assign(rows * stride, 0);

    std::vector<double> prev(static_cast<size_t>(stride));
    std::vector<double> cur(static_cast<size_t>(stride));
    std::vector<uint8_t> flags(static_cast<size_t>(stride), 0);

    // terminal slice: exact phi samples, ghosts included
    for (int j = 0; j < stride; ++j) prev[static_cast<size_t>(j)] = spec.phi1(grid.x_at(j));
    if (options.keep_history)
        std::copy(prev.begin(), prev.end(),
                  field.values.begin() + static_cast<size_t>(nt) * stride);

    for (int k = nt - 1; k >= 0; --k) {
        const double t_k = k * dt;
        const double t_arg = oscillating ? t_k / eps : 0.0;

        for (int j = 1; j <= nx; ++j) {
            const double up = prev[static_cast<size_t>(j) + 1];
            const double mid = prev[static_cast<size_t>(j)];
            const double dn = prev[static_cast<size_t>(j) - 1];
            const double curvature = up - 2.0 * mid + dn;
            const double grad = (up - dn) / (2.0 * dx) + lambda * curvature / dx;
            const double hess = curvature / (dx * dx);
            const double x_j = grid.x_at(j);

            const double f = oscillating
                                 ? driver_value_1d(spec, sigma_set, t_arg, x_j, mid, grad, hess)
                                 : avg->value(sigma_set, x_j, mid, grad, hess);
            double value = mid + dt * f;
            uint8_t hit = 0;
            if (options.apply_obstacle) {
                const double s = spec.obstacle1(t_k, x_j);
                if (s > value) {
                    value = s;
                    hit = 1;
                }
            }
            if (!std::isfinite(value) || std::fabs(value) > kBlowUpThreshold)
                throw BlowUpError("solve_obstacle_pde: scheme blew up at step " +
                                      std::to_string(k) + ", node " + std::to_string(j),
                                  k, j);
            cur[static_cast<size_t>(j)] = value;
            flags[static_cast<size_t>(j)] = hit;
        }

        // ghosts: linear extrapolation, then projection so dominance holds
        // on every stored node
        for (int side = 0; side < 2; ++side) {
            const int j = side == 0 ? 0 : nx + 1;
            const int a = side == 0 ? 1 : nx;
            const int b = side == 0 ? 2 : nx - 1;
            double value = 2.0 * cur[static_cast<size_t>(a)] - cur[static_cast<size_t>(b)];
            uint8_t hit = 0;
            if (options.apply_obstacle) {
                const double s = spec.obstacle1(t_k, grid.x_at(j));
                if (s > value) {
                    value = s;
                    hit = 1;
                }
            }
            if (!std::isfinite(value) || std::fabs(value) > kBlowUpThreshold)
                throw BlowUpError("solve_obstacle_pde: ghost blew up at step " +
                                      std::to_string(k) + ", node " + std::to_string(j),
                                  k, j);
            cur[static_cast<size_t>(j)] = value;
            flags[static_cast<size_t>(j)] = hit;
        }

        if (options.keep_history || k == 0) {
            const size_t row = options.keep_history ? static_cast<size_t>(k) : 0;
            std::copy(cur.begin(), cur.end(), field.values.begin() + row * stride);
            std::copy(flags.begin(), flags.end(),
                      field.obstacle_active.begin() + row * stride);
        }
        std::swap(prev, cur);
    }

    return field;
}

}  // namespace gpde
