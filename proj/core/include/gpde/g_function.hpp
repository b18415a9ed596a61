#ifndef GPDE_G_FUNCTION_HPP
#define GPDE_G_FUNCTION_HPP

#include <string>
#include <vector>

#include "gpde/sym_matrix.hpp"

namespace gpde {

/// Per-axis variance band [lower_i, upper_i] describing the diagonal box of
/// admissible covariance matrices {diag(s_1..s_n) : s_i in [lower_i, upper_i]}.
///
/// A non-degenerate band has 0 < lower_i <= upper_i on every axis; violations
/// are allowed at construction so that check_nondegenerate can report them.
struct CovarianceSet {
    int dim = 0;
    std::vector<double> lower;  // variance units
    std::vector<double> upper;

    CovarianceSet() = default;
    CovarianceSet(std::vector<double> lo, std::vector<double> hi);

    /// Scalar band [lo, hi].
    static CovarianceSet interval(double lo, double hi) { return CovarianceSet({lo}, {hi}); }

    double min_lower() const;
    double max_upper() const;
};

/// Sublinear generator of the variance band: the worst-case half trace
///
///   g_value(A) = 1/2 * max over diag(s) in the box of  tr(A * diag(s))
///              = 1/2 * sum_i ( upper_i * max(a_ii, 0) + lower_i * min(a_ii, 0) )
///
/// evaluated in closed form (the maximum is separable over axes, so the
/// box endpoints are exact and no inner optimization is ever run).
/// Off-diagonal entries of A do not contribute.
double g_value(const SymMatrix& a, const CovarianceSet& sigma);

/// Scalar shortcut for 1-D problems: g_value of the 1x1 matrix [a].
double g_value_scalar(double a, double lower, double upper);

struct AxisReport {
    int axis = 0;
    double lower = 0.0;
    double upper = 0.0;
    bool pass = false;
    std::string note;
};

/// Result of check_nondegenerate: per-axis verdicts plus the global
/// ellipticity constants (min lower variance, max upper variance).
struct NondegeneracyReport {
    bool pass = false;
    double min_lower = 0.0;
    double max_upper = 0.0;
    std::vector<AxisReport> axes;
};

/// Reports (never throws) whether the band is non-degenerate:
/// lower_i > 0 and lower_i <= upper_i < inf on every axis.
NondegeneracyReport check_nondegenerate(const CovarianceSet& sigma);

}  // namespace gpde

#endif  // GPDE_G_FUNCTION_HPP
