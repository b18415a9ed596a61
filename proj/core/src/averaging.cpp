#include "gpde/averaging.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "gpde/errors.hpp"

namespace gpde {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
struct GaussRule {
    std::vector<double> node;
    std::vector<double> weight;

    explicit GaussRule(int n) : node(n), weight(n) {
        const int mid = (n + 1) / 2;
        for (int i = 0; i < mid; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                dp = n * (x * p0 - p1) / (x * x - 1.0);
                const double dx = p0 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
            weight[n - 1 - i] = weight[i];
        }
    }
};

const GaussRule& gl16() {
    static const GaussRule rule(16);
    return rule;
}

template <class F>
double integrate_panels(F&& f, double a, double b, int panels) {
    const GaussRule& rule = gl16();
    const double h = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double c = lo + 0.5 * h;
        const double half = 0.5 * h;
        double panel = 0.0;
        for (size_t k = 0; k < rule.node.size(); ++k)
            panel += rule.weight[k] * f(c + half * rule.node[k]);
        acc += panel * half;
    }
    return acc;
}

// best rational approximation p/q of ratio with q <= max_den (continued fractions)
std::optional<std::pair<long, long>> rationalize(double ratio, long max_den, double rel_tol) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return std::nullopt;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = ratio;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (std::fabs(static_cast<double>(p1) / q1 - ratio) <= rel_tol * ratio)
            return std::make_pair(p1, q1);
        const double frac = x - fl;
        if (frac < 1e-14) break;
        x = 1.0 / frac;
    }
    if (q1 >= 1 && std::fabs(static_cast<double>(p1) / q1 - ratio) <= rel_tol * ratio)
        return std::make_pair(p1, q1);
    return std::nullopt;
}

void collect_periods(const CoefficientExpr& expr, std::vector<double>& periods, bool& aperiodic,
                     double& max_omega) {
    for (const TermSpec& term : expr.terms) {
        const double p = term.temporal.period();
        if (p < 0.0) aperiodic = true;
        if (p > 0.0) {
            periods.push_back(p);
            max_omega = std::max(max_omega, term.temporal.omega);
        }
    }
}

constexpr int kMaxPanels = 16384;

}  // namespace

const char* to_string(AveragingMode m) {
    switch (m) {
        case AveragingMode::Constant: return "constant";
        case AveragingMode::Periodic: return "periodic";
        case AveragingMode::Cesaro: return "cesaro";
    }
    return "?";
}

std::optional<double> common_driver_period(const ProblemSpec& spec) {
    std::vector<double> periods;
    bool aperiodic = false;
    double max_omega = 1.0;
    for (const auto& e : spec.b) collect_periods(e, periods, aperiodic, max_omega);
    for (const auto& e : spec.h) collect_periods(e, periods, aperiodic, max_omega);
    for (const auto& e : spec.sigma) collect_periods(e, periods, aperiodic, max_omega);
    collect_periods(spec.f, periods, aperiodic, max_omega);
    for (const auto& e : spec.g) collect_periods(e, periods, aperiodic, max_omega);

    if (aperiodic) return std::nullopt;
    if (periods.empty()) return 0.0;

    double common = periods[0];
    for (size_t i = 1; i < periods.size(); ++i) {
        const double ratio = periods[i] / common;
        // small denominators and a tight tolerance, otherwise every float
        // ratio looks rational and irrational frequency pairs slip through
        const auto pq = rationalize(ratio, 1024, 1e-12);
        if (!pq) return std::nullopt;
        // T = q * periods[i] = p * common is the joint period
        common *= static_cast<double>(pq->first);
    }
    return common;
}

struct AveragedDriver::Memo {
    std::mutex mutex;
    std::unordered_map<uint64_t, double> map;
};

AveragedDriver::AveragedDriver(ProblemSpec spec, AveragingOptions opts)
    : spec_(std::move(spec)), opts_(opts) {
    spec_.epsilon.reset();
    spec_.validate_structure();

    const auto period = common_driver_period(spec_);
    for (const auto& table : {spec_.b, spec_.h, spec_.sigma, spec_.g})
        for (const auto& e : table)
            for (const auto& term : e.terms)
                if (term.temporal.period() > 0.0) {
                    max_omega_ = std::max(max_omega_, term.temporal.omega);
                    has_periodic_factor_ = true;
                }
    for (const auto& term : spec_.f.terms)
        if (term.temporal.period() > 0.0) {
            max_omega_ = std::max(max_omega_, term.temporal.omega);
            has_periodic_factor_ = true;
        }

    switch (opts_.request) {
        case AveragingOptions::Request::Auto:
            if (period && *period == 0.0) {
                mode_ = AveragingMode::Constant;
            } else if (period) {
                mode_ = AveragingMode::Periodic;
                period_ = *period;
            } else {
                mode_ = AveragingMode::Cesaro;
            }
            break;
        case AveragingOptions::Request::Periodic:
            if (!period)
                throw ConfigError(
                    "averaging: periodic mode requested but temporal frequencies have no "
                    "common period");
            if (*period == 0.0) {
                mode_ = AveragingMode::Constant;
            } else {
                mode_ = AveragingMode::Periodic;
                period_ = *period;
            }
            break;
        case AveragingOptions::Request::Cesaro:
            mode_ = AveragingMode::Cesaro;
            break;
    }
    if (!(opts_.tol > 0.0)) throw ConfigError("averaging: tol must be positive");
    if (!(opts_.max_horizon > 0.0)) throw ConfigError("averaging: max_horizon must be positive");
    if (opts_.memo) memo_ = std::make_shared<Memo>();
}

template <class F>
double AveragedDriver::average_periodic(F&& integrand) const {
    double prev = integrate_panels(integrand, 0.0, period_, 1) / period_;
    int panels = 2;
    while (panels <= kMaxPanels) {
        const double cur = integrate_panels(integrand, 0.0, period_, panels) / period_;
        const double diff = std::fabs(cur - prev);
        if (diff < 1e-10) {
            last_residual_.store(diff, std::memory_order_relaxed);
            return cur;
        }
        prev = cur;
        panels *= 2;
    }
    panel_cap_hit_.store(true, std::memory_order_relaxed);
    return prev;
}

template <class F>
double AveragedDriver::average_cesaro(F&& integrand) const {
    // with oscillating factors, panels sized to one base oscillation keep the
    // per-unit-length quadrature error far below tol regardless of horizon;
    // smooth aperiodic data gets dyadic panels instead
    const bool oscillating = has_periodic_factor_;
    const double panel_len = 2.0 * M_PI / std::max(1.0, max_omega_);
    std::vector<double> trace;
    double s_prev = 0.0;
    double integral = 0.0;
    double mean_prev = 0.0;
    int below_tol = 0;
    bool have_prev = false;
    for (double s = 1.0; s <= opts_.max_horizon; s *= 2.0) {
        const int panels =
            oscillating ? std::max(1, static_cast<int>(std::ceil((s - s_prev) / panel_len)))
                        : 32;
        integral += integrate_panels(integrand, s_prev, s, panels);
        s_prev = s;
        const double mean = integral / s;
        if (have_prev) {
            const double residual = std::fabs(mean - mean_prev);
            trace.push_back(residual);
            // two consecutive sub-tol residuals: a single small difference can
            // be a phase accident of the dyadic sampling while the running
            // mean is still drifting
            below_tol = residual < opts_.tol ? below_tol + 1 : 0;
            if (below_tol >= 2) {
                last_residual_.store(residual, std::memory_order_relaxed);
                return mean;
            }
        }
        mean_prev = mean;
        have_prev = true;
    }
    throw AveragingFailure(
        "averaging: Cesaro mean did not settle within max_horizon " +
            std::to_string(opts_.max_horizon) + " (tol " + std::to_string(opts_.tol) + ")",
        trace);
}

double AveragedDriver::compute(const CovarianceSet& sigma_set, double x, double v, double p,
                               double a) const {
    auto integrand = [&](double r) { return driver_value_1d(spec_, sigma_set, r, x, v, p, a); };
    switch (mode_) {
        case AveragingMode::Constant: return integrand(0.0);
        case AveragingMode::Periodic: return average_periodic(integrand);
        case AveragingMode::Cesaro: return average_cesaro(integrand);
    }
    return 0.0;
}

double AveragedDriver::value(const CovarianceSet& sigma_set, double x, double v, double p,
                             double a) const {
    if (!memo_) return compute(sigma_set, x, v, p, a);

    const double q = opts_.memo_quantum;
    auto bucket = [q](double u) {
        return static_cast<int64_t>(std::llround(u / q));
    };
    uint64_t key = 1469598103934665603ull;
    for (int64_t part : {bucket(x), bucket(v), bucket(p), bucket(a)}) {
        key ^= static_cast<uint64_t>(part);
        key *= 1099511628211ull;
    }
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->map.find(key);
        if (it != memo_->map.end()) return it->second;
    }
    const double out = compute(sigma_set, x, v, p, a);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        memo_->map.emplace(key, out);
    }
    return out;
}

double average_driver(const AveragedDriver& avg, const CovarianceSet& sigma_set, double x,
                      double v, const std::vector<double>& p, const SymMatrix& a) {
    if (a.dim() != 1 || p.size() != 1)
        throw UnsupportedDimensionError("average_driver: spatial dimension must be 1");
    return avg.value(sigma_set, x, v, p[0], a(0, 0));
}

}  // namespace gpde
