#ifndef GPDE_DRIVER_HPP
#define GPDE_DRIVER_HPP

#include <vector>

#include "gpde/g_function.hpp"
#include "gpde/problem_spec.hpp"
#include "gpde/sym_matrix.hpp"

namespace gpde {

/// One evaluation of the driver pair: the d x d variation-argument matrix H
/// and the scalar driver value F.
struct DriverEval {
    SymMatrix H;
    double F = 0.0;
};

/// Assembles the fully nonlinear driver at the (already rescaled) time t:
///
///   H_ij = (sigma^T A sigma)_ij + 2 p h_ij + 2 g_ij(t, x, v, p sigma)
///   F    = g_value(H) + p b(t, x) + f(t, x, v, p sigma)
///
/// The caller owns the time rescaling: for an oscillating problem pass r/eps.
/// Supports spatial dimension 1 with any Brownian dimension d; p has one
/// entry, A is 1x1, sigma_set.dim must equal d. Deterministic: identical
/// inputs give bit-identical outputs. Throws DimensionError on shape
/// mismatch and NumericRangeError (naming the term) on non-finite
/// intermediates.
DriverEval assemble_driver(const ProblemSpec& spec, const CovarianceSet& sigma_set, double t,
                           double x, double v, const std::vector<double>& p,
                           const SymMatrix& a);

/// Scalar fast path for n = d = 1, used in the solver inner loops. Same
/// formula, no shape plumbing, no per-term diagnostics (the solvers guard
/// against blow-ups themselves).
inline double driver_value_1d(const ProblemSpec& spec, const CovarianceSet& sigma_set, double t,
                              double x, double v, double p, double a) {
    const double sig = spec.sigma1(t, x);
    const double z = p * sig;
    double hval = sig * sig * a;
    if (!spec.h.empty()) hval += 2.0 * p * spec.h1(t, x);
    if (!spec.g.empty()) hval += 2.0 * spec.g1(t, x, v, z);
    double f = g_value_scalar(hval, sigma_set.lower[0], sigma_set.upper[0]);
    if (!spec.b.empty()) f += p * spec.b1(t, x);
    f += spec.f1(t, x, v, z);
    return f;
}

}  // namespace gpde

#endif  // GPDE_DRIVER_HPP
