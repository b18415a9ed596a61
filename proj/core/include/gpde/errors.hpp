#ifndef GPDE_ERRORS_HPP
#define GPDE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace gpde {

/// Malformed or inconsistent problem/experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Shape or dimension mismatch between value-level arguments.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A coefficient term produced a non-finite value; carries the term's identity.
class NumericRangeError : public std::runtime_error {
public:
    NumericRangeError(const std::string& coefficient, int term_index, const std::string& what)
        : std::runtime_error(what), coefficient_(coefficient), term_index_(term_index) {}
    const std::string& coefficient() const { return coefficient_; }
    int term_index() const { return term_index_; }

private:
    std::string coefficient_;
    int term_index_;
};

/// Cesaro averaging failed to settle within the allowed horizon.
/// residual_trace holds |S(s_{k+1}) - S(s_k)| for each doubling step taken.
class AveragingFailure : public std::runtime_error {
public:
    AveragingFailure(const std::string& what, std::vector<double> residual_trace)
        : std::runtime_error(what), residual_trace_(std::move(residual_trace)) {}
    const std::vector<double>& residual_trace() const { return residual_trace_; }

private:
    std::vector<double> residual_trace_;
};

/// Explicit scheme produced a non-finite or runaway value at (step, node).
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, int step, int node)
        : std::runtime_error(what), step_(step), node_(node) {}
    int step() const { return step_; }
    int node() const { return node_; }

private:
    int step_;
    int node_;
};

class UnsupportedDimensionError : public std::runtime_error {
public:
    explicit UnsupportedDimensionError(const std::string& what) : std::runtime_error(what) {}
};

/// Lattice solver asked to handle forward dynamics outside x = x0 + B.
class UnsupportedForwardError : public std::runtime_error {
public:
    explicit UnsupportedForwardError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural scheme property (e.g. penalization monotonicity) failed,
/// which indicates a solver bug rather than a hard input error.
class PropertyFailure : public std::runtime_error {
public:
    explicit PropertyFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gpde

#endif  // GPDE_ERRORS_HPP
