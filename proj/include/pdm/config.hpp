#pragma once

#include "pdm/factorization.hpp"
#include "pdm/integrator.hpp"
#include "pdm/system.hpp"
#include "pdm/trajectory.hpp"

#include <optional>
#include <string>

namespace pdm {

/// Parsed run configuration (JSON document with sections mass / system /
/// trajectory / integrator / initial / grid and a top-level picture key).
/// Unknown keys anywhere are rejected to catch typos.
struct RunConfig {
    // mass
    MassFamily family = MassFamily::Regular;
    double m0 = 1.0;
    std::optional<double> lambda;
    std::optional<double> beta;
    std::optional<double> kappa;
    bool constant_mass = false;

    // system
    int gamma = +1;
    double alpha = 1.0;
    double epsilon = 0.0;
    double c = 0.0;

    // trajectory window
    std::optional<double> E;
    double phi0 = 0.0;
    double t0 = 0.0;
    std::optional<double> t1;
    std::optional<double> periods;
    int samples = 500;

    // integrator
    IntegratorConfig integrator;

    Picture picture = Picture::Invariant;

    // optional explicit initial condition
    std::optional<double> x0;
    std::optional<double> v0;

    // verify-algebra grid
    std::optional<double> region_energy;
    int grid_n_x = 32;
    int grid_n_momentum = 32;
    double grid_step = 1e-3;
};

/// Parse and validate a JSON config file. Schema violations, unknown keys
/// and malformed JSON all raise ConfigError.
RunConfig load_config(const std::string& path);

/// Parse from an in-memory JSON string (used by tests).
RunConfig parse_config(const std::string& text);

/// Construct the System a config describes (Poschl-Teller potential).
System build_system(const RunConfig& cfg);

/// Resolve the sampling window [t0, t1]. When t1 is absent, "periods" counts
/// oscillation periods of the configured E (requires E and the bound regime).
std::pair<double, double> resolve_window(const RunConfig& cfg, const System& sys);

} // namespace pdm
