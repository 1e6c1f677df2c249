#pragma once

#include "pdm/system.hpp"
#include "pdm/trajectory.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace pdm {

enum class OdeMethod { RK4Fixed, RK45Adaptive };

struct IntegratorConfig {
    OdeMethod method = OdeMethod::RK45Adaptive;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double max_step = 0.0;     ///< 0 = uncapped
    double initial_step = 0.0; ///< 0 = auto; the fixed step for RK4Fixed
    long long max_steps = 10'000'000;
    /// Halt with a domain-exit event when the position comes within this
    /// distance of a validity-interval bound.
    double boundary_margin = 1e-9;
};

/// Conservation scorecard for an integrated (or sampled) trajectory.
struct DriftReport {
    /// max |H_inv(t) - H_inv(t0)| / |H_inv(t0)| over the samples.
    double max_relative_H_drift = 0.0;
    /// max | |Q|^2(t) - |Q|^2(t0) | / | |Q|^2(t0) |, skipping samples where
    /// |Q|^2 is unavailable; 0 when it is unavailable everywhere.
    double max_relative_Q_drift = 0.0;
    /// | trapezoid of dH_script/dt  -  (H_script(t1) - H_script(t0)) |
    /// relative to |Delta H_script| (absolute when Delta is negligible).
    double dissipated_energy_check_residual = 0.0;
};

/// One point of a raw two-component ODE solution.
struct OdePoint {
    double t = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;
};

struct OdeSolution {
    std::vector<OdePoint> points;
    bool domain_exit = false;
    double exit_time = 0.0;
    long long steps = 0;
};

using Rhs2 = std::function<std::pair<double, double>(double t, double y0, double y1)>;

/// Integrate dy/dt = rhs(t, y) from (y0, y1) at t0, recording n uniform
/// sample times across [t0, t1] (endpoints included).
///
/// A DomainError thrown by rhs during a trial stage rejects the step (the
/// adaptive method halves and retries; the fixed method halts). When
/// boundary_distance is supplied and falls below cfg.boundary_margin, or a
/// step can no longer avoid the boundary, integration halts early with
/// domain_exit set and the partial solution returned. Exhausting
/// cfg.max_steps raises NumericalError.
OdeSolution integrate(const Rhs2& rhs, double y0, double y1, double t0,
                      double t1, int n, const IntegratorConfig& cfg,
                      const std::function<double(double)>& boundary_distance = {});

/// Integrate the equations of motion of one picture from the initial
/// condition (x0, v0), with per-sample diagnostics attached:
///   newton    -- state (x, v),  dv/dt = (F - m' v^2)/m
///   canonical -- state (x, p),  dp/dt = -V' (thrust included)
///   invariant -- state (x, pi), conserved H
Trajectory integrate_picture(const System& sys, Picture pic, double x0,
                             double v0, double t0, double t1, int n,
                             const IntegratorConfig& cfg = {});

/// Conservation diagnostics over an existing trajectory's samples.
DriftReport drift_report(const System& sys, const Trajectory& traj);

} // namespace pdm
