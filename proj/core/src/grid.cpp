#include "gpde/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gpde/errors.hpp"

namespace gpde {

void Grid1D::validate() const {
    if (!(x_min < x_max)) throw ConfigError("grid: x_min must be below x_max");
    if (nx < 3) throw ConfigError("grid: need at least 3 interior nodes");
    if (!(horizon > 0.0)) throw ConfigError("grid: horizon must be positive");
    if (nt && *nt < 1) throw ConfigError("grid: nt must be >= 1");
}

Grid1D Grid1D::refined() const {
    Grid1D fine = *this;
    fine.nx = 2 * nx + 1;  // halves dx, keeps every coarse node
    if (nt) fine.nt = *nt * 4;
    return fine;
}

int stable_nt(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Grid1D& grid) {
    grid.validate();
    const double dx = grid.dx();

    double sigma_sup = 0.0;
    double b_sup = 0.0;
    for (int j = 0; j <= grid.nx + 1; ++j) {
        const double x = grid.x_at(j);
        double sig = 0.0;
        for (const auto& e : spec.sigma) sig += e.magnitude_bound(x);
        sigma_sup = std::max(sigma_sup, sig * sig);
        double drift = 0.0;
        for (const auto& e : spec.b) drift += e.magnitude_bound(x);
        for (const auto& e : spec.h) drift += 2.0 * e.magnitude_bound(x);
        b_sup = std::max(b_sup, drift);
    }

    const double denom = sigma_set.max_upper() * sigma_sup + dx * b_sup +
                         dx * dx * spec.lipschitz_L;
    const double dt_max = 0.9 * dx * dx / denom;
    return std::max(1, static_cast<int>(std::ceil(grid.horizon / dt_max)));
}

GridWindow GridWindow::inner(int nx, int nt, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ConfigError("window: fraction must lie in (0, 1]");
    GridWindow w;
    const double margin = 0.5 * (1.0 - fraction) * (nx + 1);
    w.j_lo = std::max(1, static_cast<int>(std::ceil(margin)));
    w.j_hi = std::min(nx, nx + 1 - w.j_lo);
    if (w.j_hi < w.j_lo) {
        w.j_lo = (nx + 1) / 2;
        w.j_hi = w.j_lo;
    }
    w.k_lo = 0;
    w.k_hi = nt;
    return w;
}

}  // namespace gpde
