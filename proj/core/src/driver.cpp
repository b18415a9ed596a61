#include "gpde/driver.hpp"

#include <cmath>
#include <string>

#include "gpde/errors.hpp"

namespace gpde {

namespace {

// term-by-term evaluation so a non-finite result can name its term
double checked_eval(const CoefficientExpr& expr, CoefficientId id, double t, double x, double y,
                    const double* z, int dz) {
    double acc = 0.0;
    for (size_t k = 0; k < expr.terms.size(); ++k) {
        const double v = expr.terms[k].eval(t, x, y, z, dz);
        if (!std::isfinite(v))
            throw NumericRangeError(to_string(id), static_cast<int>(k),
                                    std::string("driver assembly: coefficient ") + to_string(id) +
                                        " term " + std::to_string(k) + " is non-finite");
        acc += v;
    }
    return acc;
}

}  // namespace

DriverEval assemble_driver(const ProblemSpec& spec, const CovarianceSet& sigma_set, double t,
                           double x, double v, const std::vector<double>& p,
                           const SymMatrix& a) {
    if (spec.dim_x != 1)
        throw UnsupportedDimensionError("assemble_driver: spatial dimension must be 1");
    const int d = spec.dim_b;
    if (sigma_set.dim != d)
        throw DimensionError("assemble_driver: covariance dim != Brownian dim");
    if (static_cast<int>(p.size()) != spec.dim_x)
        throw DimensionError("assemble_driver: gradient must have dim_x entries");
    if (a.dim() != spec.dim_x)
        throw DimensionError("assemble_driver: Hessian must be dim_x x dim_x");

    const double grad = p[0];
    const double a11 = a(0, 0);

    std::vector<double> sig(static_cast<size_t>(d), 0.0);
    std::vector<double> z(static_cast<size_t>(d), 0.0);
    for (int col = 0; col < d; ++col) {
        sig[col] = checked_eval(spec.sigma_entry(0, col), CoefficientId::Sigma, t, x, 0.0,
                                nullptr, 0);
        z[col] = grad * sig[col];
    }

    DriverEval out;
    out.H = SymMatrix(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double hij = sig[i] * a11 * sig[j];
            hij += 2.0 * grad * checked_eval(spec.h_entry(i, j), CoefficientId::H, t, x, 0.0,
                                             nullptr, 0);
            hij += 2.0 * checked_eval(spec.g_entry(i, j), CoefficientId::G, t, x, v, z.data(), d);
            out.H.set(i, j, hij);
        }
    }

    out.F = g_value(out.H, sigma_set);
    for (int i = 0; i < spec.dim_x; ++i)
        out.F += p[static_cast<size_t>(i)] *
                 (spec.b.empty() ? 0.0
                                 : checked_eval(spec.b[static_cast<size_t>(i)], CoefficientId::B,
                                                t, x, 0.0, nullptr, 0));
    out.F += checked_eval(spec.f, CoefficientId::F, t, x, v, z.data(), d);
    if (!std::isfinite(out.F))
        throw NumericRangeError("F", -1, "driver assembly: F is non-finite");
    return out;
}

}  // namespace gpde
