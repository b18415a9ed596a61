#ifndef GPDE_SOLUTION_FIELD_HPP
#define GPDE_SOLUTION_FIELD_HPP

#include <cstdint>
#include <vector>

#include "gpde/grid.hpp"

namespace gpde {

/// Space-time solution values on a Grid1D, nt+1 slices by nx+2 nodes
/// (ghost nodes included). The obstacle mask records where the projection
/// raised a value above the free scheme step.
struct SolutionField {
    enum class Kind { Oscillating, Averaged };

    Kind kind = Kind::Averaged;
    double epsilon = 0.0;  // set for oscillating fields
    double x_min = 0.0, x_max = 0.0;
    int nx = 0;
    double horizon = 0.0;
    int nt = 0;
    double dx = 0.0, dt = 0.0;
    bool full_history = true;  // false: only the t = 0 slice is stored

    std::vector<double> values;           // slice-major
    std::vector<uint8_t> obstacle_active;

    int stride() const { return nx + 2; }
    double at(int k, int j) const { return values[row(k) * static_cast<size_t>(stride()) + j]; }
    bool active(int k, int j) const {
        return obstacle_active[row(k) * static_cast<size_t>(stride()) + j] != 0;
    }
    double t_at(int k) const { return k * dt; }
    double x_at(int j) const { return x_min + j * dx; }

    /// Value at (t = 0, x) by linear interpolation between grid nodes.
    double probe0(double x) const;

    bool same_spatial_grid(const SolutionField& other) const {
        return nx == other.nx && x_min == other.x_min && x_max == other.x_max;
    }

private:
    size_t row(int k) const;
};

struct SupNormResult {
    double value = 0.0;
    int k = 0;  // slice index in the coarser time grid
    int j = 0;
    double t = 0.0;
    double x = 0.0;
};

/// Windowed sup-norm of a - b over the shared nodes. Requires the same
/// spatial grid and commensurate time grids (one nt an integer multiple of
/// the other); the comparison runs on the coarser slice set. Returns the
/// max |a-b| and its argmax node.
SupNormResult sup_norm_diff(const SolutionField& a, const SolutionField& b,
                            const GridWindow& window);

/// max over window of |u| / (1 + |x|^(m+1)) — the empirical growth ratio.
double growth_ratio(const SolutionField& field, int growth_m, const GridWindow& window);

/// max over window of |u_{j+1} - u_j| / dx — the empirical spatial
/// Lipschitz modulus over interior nodes.
double lipschitz_modulus(const SolutionField& field, const GridWindow& window);

}  // namespace gpde

#endif  // GPDE_SOLUTION_FIELD_HPP
