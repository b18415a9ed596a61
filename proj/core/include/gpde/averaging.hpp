#ifndef GPDE_AVERAGING_HPP
#define GPDE_AVERAGING_HPP

#include <atomic>
#include <memory>
#include <optional>
#include <string>

#include "gpde/driver.hpp"
#include "gpde/g_function.hpp"
#include "gpde/problem_spec.hpp"
#include "gpde/sym_matrix.hpp"

namespace gpde {

enum class AveragingMode {
    Constant,  // time-independent data: the average is the driver itself
    Periodic,  // quadrature of the composed driver over one common period
    Cesaro,    // long-horizon running mean with geometric horizon doubling
};

const char* to_string(AveragingMode m);

struct AveragingOptions {
    enum class Request { Auto, Periodic, Cesaro };
    Request request = Request::Auto;
    double tol = 1e-8;          // Cesaro stopping tolerance
    double max_horizon = 1e5;   // Cesaro horizon cap
    bool memo = false;          // opt-in result cache keyed on rounded inputs
    double memo_quantum = 1e-12;
};

/// Smallest common period of all temporal factors entering the driver
/// (b, h, sigma, f, g): 0 when everything is time-independent, nullopt when
/// some factor is aperiodic or the frequencies are incommensurate.
std::optional<double> common_driver_period(const ProblemSpec& spec);

/// The time-averaged driver
///
///   Fbar(x, v, p, A) = lim_{s->inf} (1/s) Int_0^s F(r, x, v, p, A) dr
///
/// where F is the composed driver of assemble_driver. The whole bracket is
/// averaged; the sup inside g_value is nonlinear, so term-wise averaging of
/// the coefficients would be wrong and is never done.
///
/// Periodic mode integrates one period with composite Gauss-Legendre panels,
/// doubling the panel count until successive averages differ by < 1e-10.
/// Cesaro mode evaluates the running mean S(s) at s = 2^k, reusing the
/// already-accumulated integral, until |S(s_{k+1}) - S(s_k)| < tol; if the
/// horizon cap is reached first it throws AveragingFailure carrying the
/// residual trace.
class AveragedDriver {
public:
    /// The spec's epsilon is ignored: averaging always sees the unit-scale
    /// temporal argument. Throws ConfigError when periodic mode is requested
    /// for an incommensurate spec.
    AveragedDriver(ProblemSpec spec, AveragingOptions opts = {});

    AveragingMode mode() const { return mode_; }
    double period() const { return period_; }
    const ProblemSpec& base() const { return spec_; }
    const AveragingOptions& options() const { return opts_; }

    /// 1-D evaluation (n = d = 1), the solver hot path.
    double value(const CovarianceSet& sigma_set, double x, double v, double p, double a) const;

    double last_residual() const { return last_residual_.load(std::memory_order_relaxed); }
    bool panel_cap_hit() const { return panel_cap_hit_.load(std::memory_order_relaxed); }

private:
    template <class F>
    double average_periodic(F&& integrand) const;
    template <class F>
    double average_cesaro(F&& integrand) const;
    double compute(const CovarianceSet& sigma_set, double x, double v, double p, double a) const;

    ProblemSpec spec_;
    AveragingOptions opts_;
    AveragingMode mode_ = AveragingMode::Constant;
    double period_ = 0.0;
    double max_omega_ = 1.0;
    bool has_periodic_factor_ = false;
    mutable std::atomic<double> last_residual_{0.0};
    mutable std::atomic<bool> panel_cap_hit_{false};

    struct Memo;
    std::shared_ptr<Memo> memo_;
};

/// Free-function form of the operation; A must be 1x1 (spatial dimension 1)
/// and p a single-entry gradient.
double average_driver(const AveragedDriver& avg, const CovarianceSet& sigma_set, double x,
                      double v, const std::vector<double>& p, const SymMatrix& a);

}  // namespace gpde

#endif  // GPDE_AVERAGING_HPP
