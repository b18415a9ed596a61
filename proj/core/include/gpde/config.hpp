#ifndef GPDE_CONFIG_HPP
#define GPDE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpde/averaging.hpp"
#include "gpde/g_function.hpp"
#include "gpde/grid.hpp"
#include "gpde/lattice.hpp"
#include "gpde/problem_spec.hpp"

namespace gpde {

struct ValidationConfig {
    double box_lo = -3.0;
    double box_hi = 3.0;
    int samples = 256;
};

struct PenaltyConfig {
    std::vector<double> n_list;
    double gap_tolerance = 1e-2;
};

/// Everything one batch run needs: the problem, the covariance band, the
/// discretizations, the epsilon ladder and output plumbing.
struct ExperimentConfig {
    std::string name;
    ProblemSpec problem;
    CovarianceSet sigma;
    Grid1D grid;
    std::optional<Lattice> lattice;
    PenaltyConfig penalty;
    AveragingOptions averaging;
    std::vector<double> epsilons;   // strictly decreasing, values in (0, 1]
    double window = 0.6;            // interior fraction for norms
    std::string output_dir = "out";
    uint64_t seed = 0;
    double fk_tolerance = 2e-2;
    ValidationConfig validation;

    void validate() const;
};

/// Parses a config from JSON text. Throws ConfigError with a readable
/// message on schema violations.
ExperimentConfig parse_config(const std::string& json_text, const std::string& name = "");

/// Loads `source` as a file path when it exists, otherwise as a bundled
/// preset name.
ExperimentConfig load_config(const std::string& source);

/// Bundled preset catalog.
std::vector<std::string> preset_names();
std::optional<std::string> preset_json(const std::string& name);

}  // namespace gpde

#endif  // GPDE_CONFIG_HPP
