#include "pdm/config.hpp"

#include "pdm/errors.hpp"
#include "pdm/trajectories.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace pdm {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + std::string(key) + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError("key '" + std::string(key) + "' in " + where +
                          " must be a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const char* key, double fallback,
                     const std::string& where) {
    return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

int get_int(const json& obj, const char* key, int fallback,
            const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError("key '" + std::string(key) + "' in " + where +
                          " must be an integer");
    return v.get<int>();
}

void parse_mass(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node, {"family", "m0", "lambda", "beta", "kappa"}, "mass");
    if (!node.contains("family") || !node.at("family").is_string())
        throw ConfigError("mass.family must be a string");
    const std::string fam = node.at("family").get<std::string>();
    cfg.m0 = get_number_or(node, "m0", 1.0, "mass");

    auto need = [&](const char* key) {
        return get_number(node, key, "mass (family '" + fam + "')");
    };
    auto forbid = [&](const char* key) {
        if (node.contains(key))
            throw ConfigError("mass key '" + std::string(key) +
                              "' is not used by family '" + fam + "'");
    };

    if (fam == "doubly_singular") {
        cfg.family = MassFamily::DoublySingular;
        cfg.lambda = need("lambda");
        cfg.beta = need("beta");
        forbid("kappa");
    } else if (fam == "singular") {
        cfg.family = MassFamily::Singular;
        cfg.lambda = need("lambda");
        forbid("beta");
        forbid("kappa");
    } else if (fam == "regular") {
        cfg.family = MassFamily::Regular;
        cfg.lambda = need("lambda");
        forbid("beta");
        forbid("kappa");
    } else if (fam == "exponential") {
        cfg.family = MassFamily::Exponential;
        cfg.kappa = need("kappa");
        forbid("lambda");
        forbid("beta");
    } else if (fam == "constant") {
        cfg.constant_mass = true;
        cfg.family = MassFamily::Custom;
        forbid("lambda");
        forbid("beta");
        forbid("kappa");
    } else {
        throw ConfigError("unknown mass family '" + fam +
                          "' (expected doubly_singular, singular, regular, "
                          "exponential or constant)");
    }
}

void parse_system(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node, {"gamma", "alpha", "epsilon", "c"}, "system");
    cfg.gamma = get_int(node, "gamma", +1, "system");
    cfg.alpha = get_number(node, "alpha", "system");
    cfg.epsilon = get_number_or(node, "epsilon", 0.0, "system");
    cfg.c = get_number_or(node, "c", 0.0, "system");
}

void parse_trajectory(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node, {"E", "phi0", "t0", "t1", "periods", "samples"},
                        "trajectory");
    if (node.contains("E")) cfg.E = get_number(node, "E", "trajectory");
    cfg.phi0 = get_number_or(node, "phi0", 0.0, "trajectory");
    cfg.t0 = get_number_or(node, "t0", 0.0, "trajectory");
    if (node.contains("t1")) cfg.t1 = get_number(node, "t1", "trajectory");
    if (node.contains("periods"))
        cfg.periods = get_number(node, "periods", "trajectory");
    cfg.samples = get_int(node, "samples", 500, "trajectory");
    if (cfg.samples < 2)
        throw ConfigError("trajectory.samples must be at least 2");
}

void parse_integrator(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node,
                        {"method", "abs_tol", "rel_tol", "max_step",
                         "initial_step", "max_steps"},
                        "integrator");
    if (node.contains("method")) {
        if (!node.at("method").is_string())
            throw ConfigError("integrator.method must be a string");
        const std::string m = node.at("method").get<std::string>();
        if (m == "rk4")
            cfg.integrator.method = OdeMethod::RK4Fixed;
        else if (m == "rk45")
            cfg.integrator.method = OdeMethod::RK45Adaptive;
        else
            throw ConfigError("unknown integrator.method '" + m +
                              "' (expected rk4 or rk45)");
    }
    cfg.integrator.abs_tol =
        get_number_or(node, "abs_tol", cfg.integrator.abs_tol, "integrator");
    cfg.integrator.rel_tol =
        get_number_or(node, "rel_tol", cfg.integrator.rel_tol, "integrator");
    cfg.integrator.max_step =
        get_number_or(node, "max_step", cfg.integrator.max_step, "integrator");
    cfg.integrator.initial_step = get_number_or(node, "initial_step",
                                                cfg.integrator.initial_step,
                                                "integrator");
    if (node.contains("max_steps")) {
        if (!node.at("max_steps").is_number_integer())
            throw ConfigError("integrator.max_steps must be an integer");
        cfg.integrator.max_steps = node.at("max_steps").get<long long>();
    }
}

void parse_initial(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node, {"x", "v"}, "initial");
    cfg.x0 = get_number(node, "x", "initial");
    cfg.v0 = get_number(node, "v", "initial");
}

void parse_grid(const json& node, RunConfig& cfg) {
    reject_unknown_keys(node, {"region_energy", "n_x", "n_momentum", "step"},
                        "grid");
    if (node.contains("region_energy"))
        cfg.region_energy = get_number(node, "region_energy", "grid");
    cfg.grid_n_x = get_int(node, "n_x", cfg.grid_n_x, "grid");
    cfg.grid_n_momentum = get_int(node, "n_momentum", cfg.grid_n_momentum, "grid");
    cfg.grid_step = get_number_or(node, "step", cfg.grid_step, "grid");
}

RunConfig parse_document(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(doc,
                        {"mass", "system", "trajectory", "integrator",
                         "picture", "initial", "grid"},
                        "the config root");
    if (!doc.contains("mass") || !doc.contains("system"))
        throw ConfigError("config requires 'mass' and 'system' sections");

    RunConfig cfg;
    parse_mass(doc.at("mass"), cfg);
    parse_system(doc.at("system"), cfg);
    if (doc.contains("trajectory")) parse_trajectory(doc.at("trajectory"), cfg);
    if (doc.contains("integrator")) parse_integrator(doc.at("integrator"), cfg);
    if (doc.contains("initial")) parse_initial(doc.at("initial"), cfg);
    if (doc.contains("grid")) parse_grid(doc.at("grid"), cfg);
    if (doc.contains("picture")) {
        if (!doc.at("picture").is_string())
            throw ConfigError("picture must be a string");
        cfg.picture = picture_from_name(doc.at("picture").get<std::string>());
    }
    return cfg;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_document(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

System build_system(const RunConfig& cfg) {
    MassModel model = MassModel::regular(1.0, 1.0);
    if (cfg.constant_mass) {
        model = MassModel::constant(cfg.m0);
    } else {
        switch (cfg.family) {
        case MassFamily::DoublySingular:
            model = MassModel::doubly_singular(cfg.m0, *cfg.lambda, *cfg.beta);
            break;
        case MassFamily::Singular:
            model = MassModel::singular(cfg.m0, *cfg.lambda);
            break;
        case MassFamily::Regular:
            model = MassModel::regular(cfg.m0, *cfg.lambda);
            break;
        case MassFamily::Exponential:
            model = MassModel::exponential(cfg.m0, *cfg.kappa);
            break;
        case MassFamily::Custom:
            model = MassModel::constant(cfg.m0);
            break;
        }
    }
    return System(std::move(model), PotentialSpec::poschl_teller(), cfg.gamma,
                  cfg.alpha, cfg.epsilon, cfg.c);
}

std::pair<double, double> resolve_window(const RunConfig& cfg, const System& sys) {
    if (cfg.t1) {
        if (!(*cfg.t1 > cfg.t0))
            throw ConfigError("trajectory.t1 must exceed trajectory.t0");
        return {cfg.t0, *cfg.t1};
    }
    if (cfg.periods) {
        if (!(*cfg.periods > 0.0))
            throw ConfigError("trajectory.periods must be positive");
        if (!cfg.E)
            throw ConfigError("trajectory.periods requires trajectory.E");
        const double T = oscillation_period(sys, *cfg.E);
        return {cfg.t0, cfg.t0 + *cfg.periods * T};
    }
    throw ConfigError("trajectory window needs either t1 or periods");
}

} // namespace pdm
