#include "gpde/config.hpp"

namespace gpde {

namespace {

// Bundled experiment catalog. Kept as plain JSON so a preset can be dumped,
// edited and re-run as a file without any format change.

const char* kGHeat = R"json({
  "problem": {
    "dim_x": 1, "dim_b": 1, "horizon": 1.0,
    "lipschitz_L": 3.0, "growth_m": 1, "obstacle_cap": -1e10,
    "sigma": [ {"weight": 1.0} ],
    "phi":   [ {"weight": 1.0, "spatial": {"kind": "monomial", "degree": 2}} ],
    "S":     [ {"weight": -1e10} ]
  },
  "sigma_lower": [1.0], "sigma_upper": [4.0],
  "grid": {"x_min": -20.0, "x_max": 20.0, "nx": 400, "nt": "auto"},
  "lattice": {"steps": 2000, "x0": 0.0},
  "averaging": {"mode": "auto"},
  "epsilons": [0.5, 0.1],
  "window": 0.6,
  "output_dir": "out",
  "seed": 7,
  "fk_tolerance": 0.02,
  "validation": {"box": [-3.0, 3.0], "samples": 256}
})json";

const char* kObstacleBasic = R"json({
  "problem": {
    "dim_x": 1, "dim_b": 1, "horizon": 1.0,
    "lipschitz_L": 6.0, "growth_m": 1, "obstacle_cap": -0.5,
    "sigma": [ {"weight": 1.0} ],
    "f":     [ {"weight": -6.0} ],
    "phi":   [ {"weight": 1.0, "spatial": {"kind": "monomial", "degree": 2}} ],
    "S":     [ {"weight": -1.0}, {"weight": 0.5, "spatial": {"kind": "tanh", "wave": 1.0}} ]
  },
  "sigma_lower": [1.0], "sigma_upper": [4.0],
  "grid": {"x_min": -6.0, "x_max": 6.0, "nx": 240, "nt": "auto"},
  "lattice": {"steps": 1000, "x0": 0.0},
  "averaging": {"mode": "auto"},
  "epsilons": [0.4, 0.2],
  "window": 0.6,
  "output_dir": "out",
  "seed": 11,
  "fk_tolerance": 0.02,
  "validation": {"box": [-3.0, 3.0], "samples": 256}
})json";

// horizon 0.4*pi phase-locks the trig factors at every ladder epsilon, so the
// error column decays cleanly instead of wobbling with the endpoint phase
const char* kAveragingTrig = R"json({
  "problem": {
    "dim_x": 1, "dim_b": 1, "horizon": 1.2566370614359172,
    "lipschitz_L": 3.0, "growth_m": 1, "obstacle_cap": -0.5,
    "b":     [ {"weight": 1.0, "temporal": {"kind": "sin", "omega": 1.0},
                "spatial": {"kind": "tanh", "wave": 1.0}} ],
    "sigma": [ {"weight": 1.0},
               {"weight": 0.25, "spatial": {"kind": "tanh", "wave": 1.0}} ],
    "f":     [ {"weight": 1.0, "temporal": {"kind": "cos2", "omega": 1.0},
                "state": {"kind": "y"}},
               {"weight": 1.0, "temporal": {"kind": "cos", "omega": 1.0},
                "state": {"kind": "tanh_z"}} ],
    "phi":   [ {"weight": 1.0, "spatial": {"kind": "monomial", "degree": 2}} ],
    "S":     [ {"weight": -1.0}, {"weight": 0.5, "spatial": {"kind": "tanh", "wave": 1.0}} ]
  },
  "sigma_lower": [1.0], "sigma_upper": [4.0],
  "grid": {"x_min": -4.0, "x_max": 4.0, "nx": 32, "nt": "auto"},
  "averaging": {"mode": "auto", "tol": 1e-8, "max_horizon": 1e5},
  "epsilons": [0.4, 0.2, 0.1, 0.05],
  "window": 0.5,
  "output_dir": "out",
  "seed": 2025,
  "validation": {"box": [-3.0, 3.0], "samples": 256}
})json";

// the driver pull (-2) beats the band's upper diffusion growth (+1), so the
// zero obstacle binds near the root and the penalty ladder has real work
const char* kPenalizationDemo = R"json({
  "problem": {
    "dim_x": 1, "dim_b": 1, "horizon": 1.0,
    "lipschitz_L": 3.0, "growth_m": 1, "obstacle_cap": 0.0,
    "sigma": [ {"weight": 1.0} ],
    "f":     [ {"weight": -2.0} ],
    "phi":   [ {"weight": 1.0, "spatial": {"kind": "monomial", "degree": 2}} ]
  },
  "sigma_lower": [0.5], "sigma_upper": [1.0],
  "grid": {"x_min": -6.0, "x_max": 6.0, "nx": 240, "nt": "auto"},
  "lattice": {"steps": 1000, "x0": 0.0},
  "penalty": {"n_list": [1.0, 4.0, 16.0, 64.0, 256.0], "gap_tolerance": 1e-2},
  "averaging": {"mode": "auto"},
  "epsilons": [0.4, 0.2],
  "window": 0.6,
  "output_dir": "out",
  "seed": 5,
  "fk_tolerance": 0.02,
  "validation": {"box": [-3.0, 3.0], "samples": 256}
})json";

}  // namespace

std::vector<std::string> preset_names() {
    return {"g_heat", "obstacle_basic", "averaging_trig", "penalization_demo"};
}

std::optional<std::string> preset_json(const std::string& name) {
    if (name == "g_heat") return std::string(kGHeat);
    if (name == "obstacle_basic") return std::string(kObstacleBasic);
    if (name == "averaging_trig") return std::string(kAveragingTrig);
    if (name == "penalization_demo") return std::string(kPenalizationDemo);
    return std::nullopt;
}

}  // namespace gpde
