#include "gpde/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gpde/errors.hpp"

namespace gpde {

namespace {

constexpr double kPairGap = 1e-9;  // skip near-coincident sample pairs

double lipschitz_ratio_tx(const CoefficientExpr& expr, double t, double x0, double x1) {
    const double d = std::fabs(x1 - x0);
    if (d < kPairGap) return 0.0;
    return std::fabs(expr.eval(t, x1) - expr.eval(t, x0)) / d;
}

}  // namespace

const AssumptionCheck* AssumptionReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

AssumptionReport validate_assumptions(const ProblemSpec& spec, double box_lo, double box_hi,
                                      int samples, uint64_t seed) {
    if (samples < 2) throw ConfigError("validate_assumptions: need at least 2 samples");
    if (!(box_lo < box_hi)) throw ConfigError("validate_assumptions: empty sample box");

    AssumptionReport rep;
    rep.seed = seed;
    rep.samples = samples;
    rep.box_lo = box_lo;
    rep.box_hi = box_hi;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box_lo, box_hi);
    // temporal argument reaches the rescaled scale r/eps, so scan well past T
    std::uniform_real_distribution<double> ut(0.0, 64.0 * spec.horizon);
    std::uniform_real_distribution<double> uy(-4.0, 4.0);

    const double L = spec.lipschitz_L;
    const int m = spec.growth_m;

    auto forward_check = [&](const std::vector<CoefficientExpr>& table, const char* name) {
        double max_ratio = 0.0;
        double max_at_zero = 0.0;
        for (const auto& expr : table) {
            for (int s = 0; s < samples; ++s) {
                const double t = ut(rng);
                const double x0 = ux(rng);
                const double x1 = ux(rng);
                max_ratio = std::max(max_ratio, lipschitz_ratio_tx(expr, t, x0, x1));
                max_at_zero = std::max(max_at_zero, std::fabs(expr.eval(t, 0.0)));
            }
        }
        rep.checks.push_back({std::string("H1_lipschitz_") + name, max_ratio, L, false,
                              max_ratio <= L});
        rep.checks.push_back({std::string("H1_at_zero_") + name, max_at_zero, L, false,
                              max_at_zero <= L});
    };
    forward_check(spec.b, "b");
    forward_check(spec.h, "h");
    forward_check(spec.sigma, "sigma");

    auto growth_check = [&](const CoefficientExpr& expr, const char* name, bool with_state) {
        double max_ratio = 0.0;
        double max_at_zero = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double t = ut(rng);
            const double x0 = ux(rng);
            const double x1 = ux(rng);
            const double y0 = with_state ? uy(rng) : 0.0;
            const double y1 = with_state ? uy(rng) : 0.0;
            const double z0 = with_state ? uy(rng) : 0.0;
            const double z1 = with_state ? uy(rng) : 0.0;
            const double weight =
                (1.0 + std::pow(std::fabs(x0), m) + std::pow(std::fabs(x1), m)) *
                    std::fabs(x1 - x0) +
                std::fabs(y1 - y0) + std::fabs(z1 - z0);
            if (weight > kPairGap) {
                const double dv =
                    std::fabs(expr.eval(t, x1, y1, &z1, 1) - expr.eval(t, x0, y0, &z0, 1));
                max_ratio = std::max(max_ratio, dv / weight);
            }
            const double zero = 0.0;
            max_at_zero = std::max(max_at_zero, std::fabs(expr.eval(t, 0.0, 0.0, &zero, 1)));
        }
        rep.checks.push_back({std::string("H2_growth_") + name, max_ratio, L, false,
                              max_ratio <= L});
        rep.checks.push_back({std::string("H2_at_zero_") + name, max_at_zero, L, false,
                              max_at_zero <= L});
    };
    growth_check(spec.f, "f", true);
    for (const auto& expr : spec.g) growth_check(expr, "g", true);
    growth_check(spec.phi, "phi", false);

    // H3: obstacle bounded above by the declared cap, dominated by phi at T
    double max_obstacle = -std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        const double t = ut(rng);
        const double x = ux(rng);
        max_obstacle = std::max(max_obstacle, spec.obstacle1(t, x));
        min_gap = std::min(min_gap, spec.phi1(x) - spec.obstacle1(spec.horizon, x));
    }
    rep.checks.push_back({"H3_obstacle_cap", max_obstacle, spec.obstacle_cap, false,
                          max_obstacle <= spec.obstacle_cap});
    rep.checks.push_back({"H3_terminal_dominates", min_gap, 0.0, true, min_gap >= 0.0});

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace gpde
