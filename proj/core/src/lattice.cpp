#include "gpde/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpde/errors.hpp"

namespace gpde {

namespace {

constexpr double kBlowUpThreshold = 1e12;
constexpr double kMonotoneSlack = 1e-10;

struct Setup {
    double dt, dx, sig2_hi, q_min, eps;
};

Setup prepare(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Lattice& lat,
              const LatticeSolveOptions& options) {
    if (spec.dim_x != 1 || spec.dim_b != 1)
        throw UnsupportedDimensionError("lattice: only dim_x = dim_b = 1 supported");
    if (sigma_set.dim != 1) throw DimensionError("lattice: covariance set must be scalar");
    if (lat.steps < 1) throw ConfigError("lattice: steps must be >= 1");
    if (!spec.is_canonical_forward())
        throw UnsupportedForwardError(
            "lattice: forward dynamics must be x0 + B (b = h = 0, sigma = 1)");
    if (!(sigma_set.lower[0] > 0.0))
        throw ConfigError("lattice: degenerate lower variance bound");

    Setup s;
    s.dt = spec.horizon / lat.steps;
    s.sig2_hi = sigma_set.upper[0];
    s.dx = std::sqrt(s.sig2_hi * s.dt);
    s.q_min = sigma_set.lower[0] / sigma_set.upper[0];
    s.eps = options.epsilon.value_or(spec.epsilon.value_or(1.0));
    if (!(s.eps > 0.0 && s.eps <= 1.0)) throw ConfigError("lattice: epsilon must lie in (0, 1]");
    return s;
}

LatticeSolution run(const ProblemSpec& spec, const CovarianceSet& sigma_set, const Lattice& lat,
                    LatticeMode mode, double n_penalty, const LatticeSolveOptions& options) {
    const Setup s = prepare(spec, sigma_set, lat, options);
    const int n = lat.steps;
    const bool has_g = !spec.g.empty();

    LatticeSolution sol;
    sol.mode = mode;
    sol.penalty = n_penalty;
    sol.steps = n;
    sol.dt = s.dt;
    sol.dx = s.dx;
    sol.x0 = lat.x0;
    if (options.keep_fields) {
        sol.y.resize(static_cast<size_t>(n) + 1);
        sol.z.resize(static_cast<size_t>(n) + 1);
        sol.a.resize(static_cast<size_t>(n) + 1);
    }

    std::vector<double> next(2 * static_cast<size_t>(n) + 1);
    for (int j = -n; j <= n; ++j) {
        const double v = spec.phi1(lat.x0 + j * s.dx);
        if (!std::isfinite(v))
            throw BlowUpError("lattice: terminal value non-finite", n, j);
        next[static_cast<size_t>(j + n)] = v;
    }
    if (options.keep_fields) {
        sol.y[static_cast<size_t>(n)] = next;
        sol.z[static_cast<size_t>(n)].assign(next.size(), 0.0);
        sol.a[static_cast<size_t>(n)].assign(next.size(), 0.0);
    }

    std::vector<double> cur, zrow, arow;
    double z_root = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        const double t_k = k * s.dt;
        const double t_arg = t_k / s.eps;
        cur.assign(2 * static_cast<size_t>(k) + 1, 0.0);
        if (options.keep_fields) {
            zrow.assign(cur.size(), 0.0);
            arow.assign(cur.size(), 0.0);
        }
        for (int j = -k; j <= k; ++j) {
            // next level is indexed by offset j + (k+1)
            const size_t c = static_cast<size_t>(j + k + 1);
            const double y_up = next[c + 1];
            const double y_mid = next[c];
            const double y_dn = next[c - 1];
            const double x_j = lat.x0 + j * s.dx;
            const double zval = (y_up - y_dn) / (2.0 * s.dx);

            double slope = 0.5 * (y_up + y_dn) - y_mid;
            if (has_g) slope += spec.g1(t_arg, x_j, y_mid, zval) * s.sig2_hi * s.dt;
            const double worst_q = slope >= 0.0 ? 1.0 : s.q_min;
            const double expectation = y_mid + worst_q * slope;

            const double free_value = expectation + spec.f1(t_arg, x_j, y_mid, zval) * s.dt;
            double value = free_value;
            double increment = 0.0;
            if (mode == LatticeMode::Penalized) {
                const double shortfall = spec.obstacle1(t_k, x_j) - y_mid;
                if (shortfall > 0.0) value += n_penalty * shortfall * s.dt;
            } else {
                const double obstacle = spec.obstacle1(t_k, x_j);
                if (obstacle > free_value) {
                    value = obstacle;
                    increment = obstacle - free_value;
                }
            }
            if (!std::isfinite(value) || std::fabs(value) > kBlowUpThreshold)
                throw BlowUpError("lattice: recursion blew up at level " + std::to_string(k) +
                                      ", node " + std::to_string(j),
                                  k, j);
            cur[static_cast<size_t>(j + k)] = value;
            if (options.keep_fields) {
                zrow[static_cast<size_t>(j + k)] = zval;
                arow[static_cast<size_t>(j + k)] = increment;
            }
            if (k == 0) z_root = zval;
        }
        if (options.keep_fields) {
            sol.y[static_cast<size_t>(k)] = cur;
            sol.z[static_cast<size_t>(k)] = zrow;
            sol.a[static_cast<size_t>(k)] = arow;
        }
        next.swap(cur);
    }

    sol.y0 = next[0];
    sol.z0 = z_root;
    return sol;
}

}  // namespace

LatticeSolution solve_penalized_bsde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                     const Lattice& lat, double n_penalty,
                                     const LatticeSolveOptions& options) {
    if (n_penalty < 0.0) throw ConfigError("lattice: penalty weight must be >= 0");
    return run(spec, sigma_set, lat, LatticeMode::Penalized, n_penalty, options);
}

LatticeSolution solve_reflected_bsde(const ProblemSpec& spec, const CovarianceSet& sigma_set,
                                     const Lattice& lat, const LatticeSolveOptions& options) {
    return run(spec, sigma_set, lat, LatticeMode::Reflected, 0.0, options);
}

PenalizationSweepResult penalization_sweep(const ProblemSpec& spec,
                                           const CovarianceSet& sigma_set, const Lattice& lat,
                                           const std::vector<double>& n_list,
                                           const LatticeSolveOptions& options) {
    if (n_list.empty()) throw ConfigError("penalization_sweep: empty n_list");
    for (size_t i = 1; i < n_list.size(); ++i)
        if (!(n_list[i] > n_list[i - 1]))
            throw ConfigError("penalization_sweep: n_list must be strictly increasing");

    {
        // terminal value must dominate the obstacle on the visited nodes
        const double dt = spec.horizon / lat.steps;
        const double dx = std::sqrt(sigma_set.upper[0] * dt);
        for (int j = -lat.steps; j <= lat.steps; ++j) {
            const double x = lat.x0 + j * dx;
            if (spec.phi1(x) < spec.obstacle1(spec.horizon, x))
                throw ConfigError(
                    "penalization_sweep: terminal value below obstacle at x = " +
                    std::to_string(x));
        }
    }

    PenalizationSweepResult out;
    out.n_list = n_list;
    const LatticeSolution reflected = solve_reflected_bsde(spec, sigma_set, lat, options);
    out.reflected_y0 = reflected.y0;

    for (double n : n_list)
        out.y0.push_back(solve_penalized_bsde(spec, sigma_set, lat, n, options).y0);

    for (size_t i = 1; i < out.y0.size(); ++i) {
        const double drop = out.y0[i - 1] - out.y0[i];
        out.max_monotonicity_violation = std::max(out.max_monotonicity_violation, drop);
    }
    out.monotone = out.max_monotonicity_violation <= kMonotoneSlack;
    if (!out.monotone)
        throw PropertyFailure("penalization_sweep: root values decreased by " +
                              std::to_string(out.max_monotonicity_violation) +
                              " along increasing penalties");

    for (double v : out.y0) out.gap_to_reflected.push_back(out.reflected_y0 - v);
    for (size_t i = 2; i < out.y0.size(); ++i) {
        const double prev_gain = out.y0[i - 1] - out.y0[i - 2];
        const double gain = out.y0[i] - out.y0[i - 1];
        if (gain > prev_gain + kMonotoneSlack) out.gaps_shrink = false;
    }
    out.final_gap = std::fabs(out.gap_to_reflected.back());
    return out;
}

}  // namespace gpde
