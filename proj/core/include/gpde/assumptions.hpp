#ifndef GPDE_ASSUMPTIONS_HPP
#define GPDE_ASSUMPTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gpde/problem_spec.hpp"

namespace gpde {

/// One sampled regularity check: the observed extremum against its declared
/// bound. `observed <= bound` (or >= for lower-bound checks) decides pass.
struct AssumptionCheck {
    std::string name;
    double observed = 0.0;
    double bound = 0.0;
    bool lower_bound = false;  // true: pass iff observed >= bound
    bool pass = false;
};

struct AssumptionReport {
    uint64_t seed = 0;
    int samples = 0;
    double box_lo = 0.0;
    double box_hi = 0.0;
    std::vector<AssumptionCheck> checks;
    bool pass = false;

    const AssumptionCheck* find(const std::string& name) const;
};

/// Numerically probes the declared regularity of the problem data on
/// [box_lo, box_hi] with `samples` deterministic draws from the given seed:
///
///  - forward data b, h, sigma: sampled Lipschitz ratios and values at 0
///    against the declared L;
///  - backward data f, g, phi: sampled growth-weighted Lipschitz ratios
///    (weight 1 + |x|^m + |x'|^m on the spatial increment) against L;
///  - obstacle: max S against the declared cap c, and min of
///    phi(x) - S(T, x) against 0.
///
/// Failures are reported, never thrown.
AssumptionReport validate_assumptions(const ProblemSpec& spec, double box_lo, double box_hi,
                                      int samples, uint64_t seed);

}  // namespace gpde

#endif  // GPDE_ASSUMPTIONS_HPP
