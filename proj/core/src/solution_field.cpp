#include "gpde/solution_field.hpp"

#include <algorithm>
#include <cmath>

#include "gpde/errors.hpp"

namespace gpde {

size_t SolutionField::row(int k) const {
    if (k < 0 || k > nt) throw DimensionError("SolutionField: slice index out of range");
    if (!full_history) {
        if (k != 0) throw DimensionError("SolutionField: only the t=0 slice was kept");
        return 0;
    }
    return static_cast<size_t>(k);
}

double SolutionField::probe0(double x) const {
    if (x <= x_min) return at(0, 0);
    if (x >= x_max) return at(0, nx + 1);
    const double pos = (x - x_min) / dx;
    const int j = std::min(nx, static_cast<int>(pos));
    const double frac = pos - j;
    return (1.0 - frac) * at(0, j) + frac * at(0, j + 1);
}

SupNormResult sup_norm_diff(const SolutionField& a, const SolutionField& b,
                            const GridWindow& window) {
    if (!a.same_spatial_grid(b))
        throw DimensionError("sup_norm_diff: spatial grids differ");
    const SolutionField* coarse = &a;
    const SolutionField* fine = &b;
    if (coarse->nt > fine->nt) std::swap(coarse, fine);
    if (fine->nt % coarse->nt != 0)
        throw DimensionError("sup_norm_diff: time grids are not commensurate");
    if (!a.full_history || !b.full_history)
        throw DimensionError("sup_norm_diff: needs full solution history");
    const int ratio = fine->nt / coarse->nt;

    SupNormResult res;
    for (int k = window.k_lo; k <= std::min(window.k_hi, coarse->nt); ++k) {
        for (int j = window.j_lo; j <= window.j_hi; ++j) {
            const double d = std::fabs(coarse->at(k, j) - fine->at(k * ratio, j));
            if (d > res.value) {
                res.value = d;
                res.k = k;
                res.j = j;
                res.t = coarse->t_at(k);
                res.x = coarse->x_at(j);
            }
        }
    }
    return res;
}

double growth_ratio(const SolutionField& field, int growth_m, const GridWindow& window) {
    double best = 0.0;
    for (int k = window.k_lo; k <= std::min(window.k_hi, field.nt); ++k) {
        for (int j = window.j_lo; j <= window.j_hi; ++j) {
            const double denom = 1.0 + std::pow(std::fabs(field.x_at(j)), growth_m + 1);
            best = std::max(best, std::fabs(field.at(k, j)) / denom);
        }
    }
    return best;
}

double lipschitz_modulus(const SolutionField& field, const GridWindow& window) {
    double best = 0.0;
    for (int k = window.k_lo; k <= std::min(window.k_hi, field.nt); ++k) {
        for (int j = window.j_lo; j < window.j_hi; ++j) {
            best = std::max(best, std::fabs(field.at(k, j + 1) - field.at(k, j)) / field.dx);
        }
    }
    return best;
}

}  // namespace gpde
