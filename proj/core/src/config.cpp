#include "gpde/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpde/errors.hpp"

namespace gpde {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config: " + where + ": " + what);
}

Temporal parse_temporal(const json& node, const std::string& where) {
    Temporal t;
    const std::string kind = node.value("kind", "const");
    if (kind == "const") t.kind = Temporal::Kind::Const;
    else if (kind == "sin") t.kind = Temporal::Kind::Sin;
    else if (kind == "cos") t.kind = Temporal::Kind::Cos;
    else if (kind == "cos2") t.kind = Temporal::Kind::CosSq;
    else if (kind == "decay") t.kind = Temporal::Kind::Decay;
    else fail(where, "unknown temporal kind '" + kind + "'");
    t.omega = node.value("omega", 1.0);
    t.theta = node.value("theta", 0.0);
    return t;
}

Spatial parse_spatial(const json& node, const std::string& where) {
    Spatial s;
    const std::string kind = node.value("kind", "const");
    if (kind == "const") s.kind = Spatial::Kind::Const;
    else if (kind == "x") s.kind = Spatial::Kind::Coordinate;
    else if (kind == "sin") s.kind = Spatial::Kind::Sin;
    else if (kind == "cos") s.kind = Spatial::Kind::Cos;
    else if (kind == "tanh") s.kind = Spatial::Kind::Tanh;
    else if (kind == "monomial") s.kind = Spatial::Kind::Monomial;
    else fail(where, "unknown spatial kind '" + kind + "'");
    s.wave = node.value("wave", 1.0);
    s.degree = node.value("degree", 1);
    return s;
}

StateFactor parse_state(const json& node, const std::string& where) {
    StateFactor f;
    const std::string kind = node.value("kind", "none");
    if (kind == "none") f.kind = StateFactor::Kind::None;
    else if (kind == "y") f.kind = StateFactor::Kind::Y;
    else if (kind == "z") f.kind = StateFactor::Kind::Z;
    else if (kind == "tanh_y") f.kind = StateFactor::Kind::TanhY;
    else if (kind == "tanh_z") f.kind = StateFactor::Kind::TanhZ;
    else fail(where, "unknown state kind '" + kind + "'");
    f.z_index = node.value("index", 0);
    return f;
}

CoefficientExpr parse_expr(const json& node, const std::string& where) {
    CoefficientExpr expr;
    if (node.is_null()) return expr;
    if (!node.is_array()) fail(where, "expected an array of terms");
    for (size_t i = 0; i < node.size(); ++i) {
        const json& tn = node[i];
        const std::string tw = where + "[" + std::to_string(i) + "]";
        if (!tn.is_object()) fail(tw, "term must be an object");
        TermSpec term;
        if (!tn.contains("weight")) fail(tw, "term needs a weight");
        term.weight = tn["weight"].get<double>();
        if (tn.contains("temporal")) term.temporal = parse_temporal(tn["temporal"], tw);
        if (tn.contains("spatial")) term.spatial = parse_spatial(tn["spatial"], tw);
        if (tn.contains("state")) term.state = parse_state(tn["state"], tw);
        expr.terms.push_back(term);
    }
    return expr;
}

std::vector<CoefficientExpr> parse_table(const json& parent, const char* key, int entries,
                                         const std::string& where) {
    std::vector<CoefficientExpr> table;
    if (!parent.contains(key) || parent[key].is_null()) return table;  // zero coefficient
    const json& node = parent[key];
    if (!node.is_array()) fail(where + "." + key, "expected an array");
    const bool nested = !node.empty() && node[0].is_array();
    if (nested) {
        for (size_t i = 0; i < node.size(); ++i)
            table.push_back(parse_expr(node[i], where + "." + key + "[" + std::to_string(i) + "]"));
    } else {
        if (entries != 1)
            fail(where + "." + key,
                 "flat term list only valid for single-entry coefficients; need " +
                     std::to_string(entries) + " entries");
        table.push_back(parse_expr(node, where + "." + key));
    }
    if (!table.empty() && static_cast<int>(table.size()) != entries)
        fail(where + "." + key, "expected " + std::to_string(entries) + " entries, got " +
                                    std::to_string(table.size()));
    return table;
}

ProblemSpec parse_problem(const json& node) {
    if (!node.is_object()) fail("problem", "expected an object");
    ProblemSpec spec;
    spec.dim_x = node.value("dim_x", 1);
    spec.dim_b = node.value("dim_b", 1);
    spec.horizon = node.value("horizon", 1.0);
    if (node.contains("epsilon") && !node["epsilon"].is_null()) {
        if (node["epsilon"].is_string()) {
            if (node["epsilon"].get<std::string>() != "averaged")
                fail("problem.epsilon", "must be a number in (0,1] or \"averaged\"");
        } else {
            spec.epsilon = node["epsilon"].get<double>();
        }
    }
    spec.lipschitz_L = node.value("lipschitz_L", 1.0);
    spec.growth_m = node.value("growth_m", 1);
    spec.obstacle_cap = node.value("obstacle_cap", 0.0);

    const int tri = spec.dim_b * (spec.dim_b + 1) / 2;
    spec.b = parse_table(node, "b", spec.dim_x, "problem");
    spec.h = parse_table(node, "h", tri, "problem");
    spec.sigma = parse_table(node, "sigma", spec.dim_x * spec.dim_b, "problem");
    spec.g = parse_table(node, "g", tri, "problem");
    if (node.contains("f")) spec.f = parse_expr(node["f"], "problem.f");
    if (node.contains("phi")) spec.phi = parse_expr(node["phi"], "problem.phi");
    if (node.contains("S")) spec.obstacle = parse_expr(node["S"], "problem.S");
    spec.validate_structure();
    return spec;
}

}  // namespace

void ExperimentConfig::validate() const {
    problem.validate_structure();
    grid.validate();
    if (!(window > 0.0 && window <= 1.0)) throw ConfigError("config: window must lie in (0, 1]");
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] <= 1.0))
            throw ConfigError("config: epsilons must lie in (0, 1]");
        if (i > 0 && !(epsilons[i] < epsilons[i - 1]))
            throw ConfigError("config: epsilons must be strictly decreasing");
    }
    if (sigma.dim != problem.dim_b)
        throw ConfigError("config: sigma band dimension must match dim_b");
    if (grid.horizon != problem.horizon)
        throw ConfigError("config: grid horizon must match the problem horizon");
    if (!(validation.box_lo < validation.box_hi))
        throw ConfigError("config: validation box is empty");
    if (validation.samples < 2) throw ConfigError("config: validation samples must be >= 2");
    if (!(penalty.gap_tolerance > 0.0))
        throw ConfigError("config: penalty gap tolerance must be positive");
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& name) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    ExperimentConfig cfg;
    cfg.name = name;
    if (!root.contains("problem")) throw ConfigError("config: missing 'problem'");
    cfg.problem = parse_problem(root["problem"]);

    if (!root.contains("sigma_lower") || !root.contains("sigma_upper"))
        throw ConfigError("config: missing sigma_lower/sigma_upper");
    cfg.sigma = CovarianceSet(root["sigma_lower"].get<std::vector<double>>(),
                              root["sigma_upper"].get<std::vector<double>>());

    if (root.contains("grid")) {
        const json& g = root["grid"];
        cfg.grid.x_min = g.value("x_min", -1.0);
        cfg.grid.x_max = g.value("x_max", 1.0);
        cfg.grid.nx = g.value("nx", 3);
        if (g.contains("nt") && !g["nt"].is_null() && !g["nt"].is_string())
            cfg.grid.nt = g["nt"].get<int>();
        // nt: "auto" (or absent) leaves the stability-bound default
    }
    cfg.grid.horizon = cfg.problem.horizon;

    if (root.contains("lattice") && !root["lattice"].is_null()) {
        Lattice lat;
        lat.steps = root["lattice"].value("steps", 100);
        lat.x0 = root["lattice"].value("x0", 0.0);
        cfg.lattice = lat;
    }
    if (root.contains("penalty")) {
        cfg.penalty.n_list = root["penalty"].value("n_list", std::vector<double>{});
        cfg.penalty.gap_tolerance = root["penalty"].value("gap_tolerance", 1e-2);
    }
    if (root.contains("averaging")) {
        const json& a = root["averaging"];
        const std::string mode = a.value("mode", "auto");
        if (mode == "auto") cfg.averaging.request = AveragingOptions::Request::Auto;
        else if (mode == "periodic") cfg.averaging.request = AveragingOptions::Request::Periodic;
        else if (mode == "cesaro") cfg.averaging.request = AveragingOptions::Request::Cesaro;
        else throw ConfigError("config: averaging.mode must be auto|periodic|cesaro");
        cfg.averaging.tol = a.value("tol", 1e-8);
        cfg.averaging.max_horizon = a.value("max_horizon", 1e5);
        cfg.averaging.memo = a.value("memo", false);
        cfg.averaging.memo_quantum = a.value("memo_quantum", 1e-12);
    }
    cfg.epsilons = root.value("epsilons", std::vector<double>{});
    cfg.window = root.value("window", 0.6);
    cfg.output_dir = root.value("output_dir", "out");
    cfg.seed = root.value("seed", static_cast<uint64_t>(0));
    cfg.fk_tolerance = root.value("fk_tolerance", 2e-2);
    if (root.contains("validation")) {
        const json& v = root["validation"];
        if (v.contains("box")) {
            const auto box = v["box"].get<std::vector<double>>();
            if (box.size() != 2) throw ConfigError("config: validation.box needs two entries");
            cfg.validation.box_lo = box[0];
            cfg.validation.box_hi = box[1];
        }
        cfg.validation.samples = v.value("samples", 256);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& source) {
    namespace fs = std::filesystem;
    if (fs::exists(source)) {
        std::ifstream in(source);
        if (!in) throw ConfigError("config: cannot read file " + source);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str(), fs::path(source).stem().string());
    }
    if (auto text = preset_json(source)) return parse_config(*text, source);
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("config: '" + source + "' is neither a file nor a preset (presets: " +
                      names + ")");
}

}  // namespace gpde
