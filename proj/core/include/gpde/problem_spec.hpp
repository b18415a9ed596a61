#ifndef GPDE_PROBLEM_SPEC_HPP
#define GPDE_PROBLEM_SPEC_HPP

#include <optional>
#include <string>
#include <vector>

#include "gpde/terms.hpp"

namespace gpde {

enum class CoefficientId { B, H, Sigma, F, G, Phi, Obstacle };

const char* to_string(CoefficientId id);

/// The full problem data tuple: horizon, oscillation scale, the coefficient
/// catalog (drift b, mutual-variation drift h_ij, volatility sigma, driver f,
/// variation driver g_ij, terminal phi, obstacle S) plus the declared
/// regularity constants (Lipschitz L, growth order m, obstacle cap c).
///
/// Symmetric (i,j) tables store the upper triangle only, so h_ij == h_ji and
/// g_ij == g_ji hold structurally. The types admit dim_x/dim_b >= 1; the grid
/// and lattice solvers accept only dim_x == dim_b == 1 and reject the rest.
struct ProblemSpec {
    int dim_x = 1;  // spatial dimension n
    int dim_b = 1;  // Brownian dimension d
    double horizon = 1.0;
    // oscillation scale in (0, 1]; disengaged means "solve the averaged
    // problem" unless the caller overrides per solve
    std::optional<double> epsilon;

    std::vector<CoefficientExpr> b;      // size dim_x
    std::vector<CoefficientExpr> h;      // upper triangle over (i,j), size d(d+1)/2
    std::vector<CoefficientExpr> sigma;  // row-major dim_x x dim_b
    CoefficientExpr f;
    std::vector<CoefficientExpr> g;  // upper triangle over (i,j)
    CoefficientExpr phi;
    CoefficientExpr obstacle;

    double lipschitz_L = 1.0;
    int growth_m = 1;
    double obstacle_cap = 0.0;

    /// Checks the structural term-catalog invariants (state factors only in
    /// f/g, monomial degree caps, trig frequencies positive, phi spatial-only)
    /// and shape consistency. Throws ConfigError on violation.
    void validate_structure() const;

    bool is_time_independent() const;

    /// Upper-triangle index into h/g for Brownian axes (i, j).
    const CoefficientExpr& h_entry(int i, int j) const;
    const CoefficientExpr& g_entry(int i, int j) const;
    const CoefficientExpr& sigma_entry(int row, int col) const;

    // scalar accessors for the 1-D solvers (dim_x == dim_b == 1)
    double b1(double t, double x) const { return b.empty() ? 0.0 : b[0].eval(t, x); }
    double h1(double t, double x) const { return h.empty() ? 0.0 : h[0].eval(t, x); }
    double sigma1(double t, double x) const { return sigma.empty() ? 0.0 : sigma[0].eval(t, x); }
    double f1(double t, double x, double y, double z) const {
        return f.eval(t, x, y, &z, 1);
    }
    double g1(double t, double x, double y, double z) const {
        return g.empty() ? 0.0 : g[0].eval(t, x, y, &z, 1);
    }
    double phi1(double x) const { return phi.eval(0.0, x); }
    double obstacle1(double t, double x) const { return obstacle.eval(t, x); }

    /// True when the forward dynamics are exactly x0 + B: b == 0, h == 0 and
    /// sigma structurally the constant 1.
    bool is_canonical_forward() const;
};

/// Evaluates one named coefficient at (t, x, y, z); t is the caller-rescaled
/// temporal argument (the solver passes r/epsilon for oscillating problems;
/// coefficient evaluation itself never sees epsilon). Scalar-valued
/// coefficients return a single entry; b/sigma/h/g return one entry per
/// component in storage order. Throws NumericRangeError when a term goes
/// non-finite, DimensionError on z-shape mismatch.
std::vector<double> eval_coefficient(const ProblemSpec& spec, CoefficientId which, double t,
                                     double x, double y = 0.0,
                                     const std::vector<double>& z = {});

}  // namespace gpde

#endif  // GPDE_PROBLEM_SPEC_HPP
