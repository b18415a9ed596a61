#ifndef GPDE_TERMS_HPP
#define GPDE_TERMS_HPP

#include <string>
#include <vector>

namespace gpde {

/// Temporal factor of a coefficient term. All factors are bounded by 1 in
/// magnitude, which the stability estimates rely on.
struct Temporal {
    enum class Kind { Const, Sin, Cos, CosSq, Decay };
    Kind kind = Kind::Const;
    double omega = 1.0;  // angular frequency, > 0 for trig kinds
    double theta = 0.0;  // phase

    double operator()(double t) const;
    bool is_const() const { return kind == Kind::Const; }
    /// Smallest period of the factor, or 0 for const, or -1 if aperiodic (decay).
    double period() const;
};

struct Spatial {
    enum class Kind { Const, Coordinate, Sin, Cos, Tanh, Monomial };
    Kind kind = Kind::Const;
    double wave = 1.0;  // wavenumber k for sin/cos/tanh
    int degree = 1;     // monomial exponent

    double operator()(double x) const;
    /// Upper bound of |value| at the given point (factors are deterministic,
    /// so this is just |value|; kept separate for symmetry with bound_slope).
    double bound_at(double x) const;
};

struct StateFactor {
    enum class Kind { None, Y, Z, TanhY, TanhZ };
    Kind kind = Kind::None;
    int z_index = 0;  // which component of the z row (d > 1)

    double operator()(double y, const double* z, int dim_z) const;
    bool is_none() const { return kind == Kind::None; }
    bool uses_z() const { return kind == Kind::Z || kind == Kind::TanhZ; }
};

/// One multiplicative term: weight * temporal(t) * spatial(x) * state(y, z).
struct TermSpec {
    double weight = 0.0;
    Temporal temporal;
    Spatial spatial;
    StateFactor state;

    double eval(double t, double x, double y, const double* z, int dim_z) const;
};

/// A coefficient as a finite sum of terms. Empty expression means the
/// identically-zero coefficient.
struct CoefficientExpr {
    std::vector<TermSpec> terms;

    bool is_zero() const { return terms.empty(); }
    double eval(double t, double x, double y = 0.0, const double* z = nullptr,
                int dim_z = 0) const;
    /// sum_k |weight_k| * |spatial_k(x)| — a time- and state-free magnitude
    /// bound used by the CFL computation (temporal and state factors are
    /// bounded by 1 except the bare y/z factors, which the callers exclude).
    double magnitude_bound(double x) const;
    bool has_state_factor() const;
    bool is_time_independent() const;
};

const char* to_string(Temporal::Kind k);
const char* to_string(Spatial::Kind k);
const char* to_string(StateFactor::Kind k);

}  // namespace gpde

#endif  // GPDE_TERMS_HPP
