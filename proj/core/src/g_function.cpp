#include "gpde/g_function.hpp"

#include <cmath>
#include <limits>

#include "gpde/errors.hpp"

namespace gpde {

CovarianceSet::CovarianceSet(std::vector<double> lo, std::vector<double> hi)
    : dim(static_cast<int>(lo.size())), lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw DimensionError("CovarianceSet: lower/upper length mismatch");
    if (lower.empty()) throw DimensionError("CovarianceSet: empty band");
    for (size_t i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw DimensionError("CovarianceSet: non-finite bound");
        if (lower[i] < 0.0 || upper[i] < lower[i])
            throw DimensionError("CovarianceSet: need 0 <= lower_i <= upper_i");
    }
}

double CovarianceSet::min_lower() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : lower) m = std::min(m, v);
    return m;
}

double CovarianceSet::max_upper() const {
    double m = 0.0;
    for (double v : upper) m = std::max(m, v);
    return m;
}

double g_value(const SymMatrix& a, const CovarianceSet& sigma) {
    if (a.dim() != sigma.dim)
        throw DimensionError("g_value: matrix dim " + std::to_string(a.dim()) +
                             " != covariance dim " + std::to_string(sigma.dim));
    double acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double aii = a(i, i);
        acc += aii >= 0.0 ? sigma.upper[i] * aii : sigma.lower[i] * aii;
    }
    return 0.5 * acc;
}

double g_value_scalar(double a, double lower, double upper) {
    return 0.5 * (a >= 0.0 ? upper * a : lower * a);
}

NondegeneracyReport check_nondegenerate(const CovarianceSet& sigma) {
    NondegeneracyReport rep;
    rep.pass = true;
    rep.min_lower = sigma.min_lower();
    rep.max_upper = sigma.max_upper();
    for (int i = 0; i < sigma.dim; ++i) {
        AxisReport ax;
        ax.axis = i;
        ax.lower = sigma.lower[i];
        ax.upper = sigma.upper[i];
        ax.pass = sigma.lower[i] > 0.0 && sigma.upper[i] >= sigma.lower[i] &&
                  std::isfinite(sigma.upper[i]);
        if (!ax.pass) {
            ax.note = sigma.lower[i] <= 0.0 ? "degenerate lower bound" : "invalid band";
            rep.pass = false;
        }
        rep.axes.push_back(ax);
    }
    return rep;
}

}  // namespace gpde
