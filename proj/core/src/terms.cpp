#include "gpde/terms.hpp"

#include <cmath>

#include "gpde/errors.hpp"

namespace gpde {

double Temporal::operator()(double t) const {
    switch (kind) {
        case Kind::Const: return 1.0;
        case Kind::Sin: return std::sin(omega * t + theta);
        case Kind::Cos: return std::cos(omega * t + theta);
        case Kind::CosSq: {
            const double c = std::cos(omega * t + theta);
            return c * c;
        }
        case Kind::Decay: return 1.0 / (1.0 + t);
    }
    return 1.0;
}

double Temporal::period() const {
    switch (kind) {
        case Kind::Const: return 0.0;
        case Kind::Sin:
        case Kind::Cos: return 2.0 * M_PI / omega;
        case Kind::CosSq: return M_PI / omega;
        case Kind::Decay: return -1.0;
    }
    return 0.0;
}

double Spatial::operator()(double x) const {
    switch (kind) {
        case Kind::Const: return 1.0;
        case Kind::Coordinate: return x;
        case Kind::Sin: return std::sin(wave * x);
        case Kind::Cos: return std::cos(wave * x);
        case Kind::Tanh: return std::tanh(wave * x);
        case Kind::Monomial: return std::pow(x, degree);
    }
    return 1.0;
}

double Spatial::bound_at(double x) const { return std::fabs((*this)(x)); }

double StateFactor::operator()(double y, const double* z, int dim_z) const {
    switch (kind) {
        case Kind::None: return 1.0;
        case Kind::Y: return y;
        case Kind::TanhY: return std::tanh(y);
        case Kind::Z:
        case Kind::TanhZ: {
            if (z == nullptr || z_index < 0 || z_index >= dim_z)
                throw DimensionError("StateFactor: z component out of range");
            return kind == Kind::Z ? z[z_index] : std::tanh(z[z_index]);
        }
    }
    return 1.0;
}

double TermSpec::eval(double t, double x, double y, const double* z, int dim_z) const {
    return weight * temporal(t) * spatial(x) * state(y, z, dim_z);
}

double CoefficientExpr::eval(double t, double x, double y, const double* z, int dim_z) const {
    double acc = 0.0;
    for (const TermSpec& term : terms) acc += term.eval(t, x, y, z, dim_z);
    return acc;
}

double CoefficientExpr::magnitude_bound(double x) const {
    double acc = 0.0;
    for (const TermSpec& term : terms) acc += std::fabs(term.weight) * term.spatial.bound_at(x);
    return acc;
}

bool CoefficientExpr::has_state_factor() const {
    for (const TermSpec& term : terms)
        if (!term.state.is_none()) return true;
    return false;
}

bool CoefficientExpr::is_time_independent() const {
    for (const TermSpec& term : terms)
        if (!term.temporal.is_const()) return false;
    return true;
}

const char* to_string(Temporal::Kind k) {
    switch (k) {
        case Temporal::Kind::Const: return "const";
        case Temporal::Kind::Sin: return "sin";
        case Temporal::Kind::Cos: return "cos";
        case Temporal::Kind::CosSq: return "cos2";
        case Temporal::Kind::Decay: return "decay";
    }
    return "?";
}

const char* to_string(Spatial::Kind k) {
    switch (k) {
        case Spatial::Kind::Const: return "const";
        case Spatial::Kind::Coordinate: return "x";
        case Spatial::Kind::Sin: return "sin";
        case Spatial::Kind::Cos: return "cos";
        case Spatial::Kind::Tanh: return "tanh";
        case Spatial::Kind::Monomial: return "monomial";
    }
    return "?";
}

const char* to_string(StateFactor::Kind k) {
    switch (k) {
        case StateFactor::Kind::None: return "none";
        case StateFactor::Kind::Y: return "y";
        case StateFactor::Kind::Z: return "z";
        case StateFactor::Kind::TanhY: return "tanh_y";
        case StateFactor::Kind::TanhZ: return "tanh_z";
    }
    return "?";
}

}  // namespace gpde
